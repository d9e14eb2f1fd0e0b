//! Finite Boolean algebras as power-set algebras over `k` atoms.
//!
//! Elements are `k`-bit masks: meet is AND, join is OR, complement is XOR
//! with the all-ones mask. Arbitrary Boolean lattices are brought into this
//! form by [`as_boolean`].

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{check_bounded_distributive, FiniteLattice};
use crate::par::Exec;
use crate::report::{sweep, LawReport, LawResult};

/// Largest atom count accepted for a power-set algebra.
pub const MAX_ATOMS: usize = 20;
/// Largest atom count for which the table-backed lattice view is built.
pub const MAX_LATTICE_VIEW_ATOMS: usize = 8;
/// Variable cap for free algebras (16 minterms).
pub const MAX_FREE_VARS: usize = 4;

#[derive(Clone, Debug)]
pub struct BoolAlg {
    name: String,
    atom_names: Vec<String>,
    view: OnceLock<Arc<FiniteLattice>>,
}

impl PartialEq for BoolAlg {
    fn eq(&self, other: &Self) -> bool {
        self.atom_names == other.atom_names
    }
}

impl Eq for BoolAlg {}

/// `{"atoms": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoolAlgJson {
    pub atoms: Vec<String>,
}

impl BoolAlg {
    pub fn new(name: impl Into<String>, atom_names: Vec<String>) -> Result<Self> {
        let k = atom_names.len();
        if k > MAX_ATOMS {
            return Err(Error::TooLarge {
                size: 1u128 << k,
                cap: 1u128 << MAX_ATOMS,
            });
        }
        Ok(BoolAlg {
            name: name.into(),
            atom_names,
            view: OnceLock::new(),
        })
    }

    pub fn from_json(name: impl Into<String>, json: &BoolAlgJson) -> Result<Self> {
        BoolAlg::new(name, json.atoms.clone())
    }

    pub fn to_json(&self) -> BoolAlgJson {
        BoolAlgJson {
            atoms: self.atom_names.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn atoms(&self) -> usize {
        self.atom_names.len()
    }

    pub fn atom_names(&self) -> &[String] {
        &self.atom_names
    }

    /// Carrier size `2^k`.
    pub fn size(&self) -> usize {
        1 << self.atoms()
    }

    pub fn bot(&self) -> u32 {
        0
    }

    pub fn top(&self) -> u32 {
        ((1u64 << self.atoms()) - 1) as u32
    }

    pub fn meet(&self, x: u32, y: u32) -> u32 {
        x & y
    }

    pub fn join(&self, x: u32, y: u32) -> u32 {
        x | y
    }

    pub fn neg(&self, x: u32) -> u32 {
        x ^ self.top()
    }

    /// `x -> y = !x | y`.
    pub fn implies(&self, x: u32, y: u32) -> u32 {
        self.neg(x) | y
    }

    pub fn leq(&self, x: u32, y: u32) -> bool {
        x & !y == 0
    }

    pub fn contains(&self, x: u32) -> bool {
        x & !self.top() == 0
    }

    /// Mask as a bit string, most significant atom first.
    pub fn element_name(&self, x: u32) -> String {
        let width = self.atoms().max(1);
        format!("{x:0width$b}")
    }

    /// Table-backed lattice view; only built for small algebras.
    pub fn lattice(&self) -> Result<Arc<FiniteLattice>> {
        if self.atoms() > MAX_LATTICE_VIEW_ATOMS {
            return Err(Error::TooLarge {
                size: self.size() as u128,
                cap: 1 << MAX_LATTICE_VIEW_ATOMS,
            });
        }
        Ok(self
            .view
            .get_or_init(|| {
                let n = self.size();
                let names = (0..n as u32).map(|x| self.element_name(x)).collect();
                let table = |op: &dyn Fn(u32, u32) -> u32| -> Vec<u32> {
                    (0..n * n).map(|xy| op((xy / n) as u32, (xy % n) as u32)).collect()
                };
                let meet = table(&|x, y| self.meet(x, y));
                let join = table(&|x, y| self.join(x, y));
                let implies = table(&|x, y| self.implies(x, y));
                Arc::new(
                    FiniteLattice::from_tables(self.name.clone(), names, meet, join, Some(implies))
                        .expect("power-set algebra has bounds"),
                )
            })
            .clone())
    }
}

/// The canonical `2^k`-element algebra with atoms `a0 .. a{k-1}`.
pub fn powerset_algebra(k: usize) -> Result<BoolAlg> {
    let names = (0..k).map(|i| format!("a{i}")).collect();
    BoolAlg::new(format!("B{}", 1u128 << k.min(127)), names)
}

/// Minterm `t` over `vars`: variable `i` is true in `t` iff bit `i` is set.
pub fn minterm_name(vars: &[String], t: usize) -> String {
    if vars.is_empty() {
        return "1".to_string();
    }
    vars.iter()
        .enumerate()
        .map(|(i, v)| if t >> i & 1 == 1 { v.clone() } else { format!("!{v}") })
        .collect::<Vec<_>>()
        .join(" & ")
}

/// Power-set algebra on the `2^m` minterms of `vars`.
pub fn free_boolean_algebra(vars: &[String]) -> Result<BoolAlg> {
    if vars.len() > MAX_FREE_VARS {
        return Err(Error::TooLarge {
            size: 1u128 << (1u128 << vars.len()),
            cap: 1 << (1 << MAX_FREE_VARS),
        });
    }
    let atoms = (0..1usize << vars.len()).map(|t| minterm_name(vars, t)).collect();
    BoolAlg::new(format!("Free({})", vars.join(",")), atoms)
}

/// Mask of the minterms in which variable `i` (of `m`) is true.
pub fn variable_mask(m: usize, i: usize) -> u32 {
    (0..1usize << m)
        .filter(|t| t >> i & 1 == 1)
        .fold(0, |acc, t| acc | 1 << t)
}

/// A Boolean lattice matched against a power-set algebra.
#[derive(Clone, Debug)]
pub struct BooleanView {
    pub alg: Arc<BoolAlg>,
    /// Lattice index to mask.
    pub to_mask: Vec<u32>,
    /// Mask to lattice index.
    pub from_mask: Vec<usize>,
}

/// Recognise `l` as a Boolean algebra via its atoms.
pub fn as_boolean(l: &FiniteLattice) -> Result<BooleanView> {
    let dist = check_bounded_distributive(l);
    if !dist.passed() {
        return Err(Error::NotCertified(Box::new(dist)));
    }
    for x in 0..l.len() {
        let nx = l.neg_idx(x)?;
        if l.join_idx(x, nx) != l.top_idx() {
            return Err(Error::NotComplemented {
                element: l.element_name(x).to_string(),
            });
        }
    }
    let atoms = l.atoms();
    if atoms.len() > MAX_ATOMS {
        return Err(Error::TooLarge {
            size: 1u128 << atoms.len(),
            cap: 1 << MAX_ATOMS,
        });
    }
    let to_mask: Vec<u32> = (0..l.len())
        .map(|x| {
            atoms
                .iter()
                .enumerate()
                .filter(|&(_, &a)| l.leq_idx(a, x))
                .fold(0, |m, (i, _)| m | 1 << i)
        })
        .collect();
    if l.len() != 1 << atoms.len() {
        return Err(Error::NotAtomistic(format!(
            "{} elements but {} atoms",
            l.len(),
            atoms.len()
        )));
    }
    let mut from_mask = vec![usize::MAX; l.len()];
    for (x, &m) in to_mask.iter().enumerate() {
        if from_mask[m as usize] != usize::MAX {
            return Err(Error::NotAtomistic(format!(
                "{} and {} lie above the same atoms",
                l.element_name(from_mask[m as usize]),
                l.element_name(x)
            )));
        }
        from_mask[m as usize] = x;
    }
    let names = atoms.iter().map(|&a| l.element_name(a).to_string()).collect();
    Ok(BooleanView {
        alg: Arc::new(BoolAlg::new(l.name().to_string(), names)?),
        to_mask,
        from_mask,
    })
}

/// A map between Boolean algebras, as the image mask of every source mask.
#[derive(Clone, Debug)]
pub struct BoolHom {
    pub source: Arc<BoolAlg>,
    pub target: Arc<BoolAlg>,
    pub map: Vec<u32>,
}

impl PartialEq for BoolHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.source == other.source && self.target == other.target
    }
}

impl Eq for BoolHom {}

/// `{"map": [...], "source": ..., "target": ...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub map: Vec<u64>,
    pub source: String,
    pub target: String,
}

impl BoolHom {
    pub fn identity(b: &Arc<BoolAlg>) -> Self {
        BoolHom {
            source: b.clone(),
            target: b.clone(),
            map: (0..b.size() as u32).collect(),
        }
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }

    /// `other . self`: apply `self`, then `other`.
    pub fn then(&self, other: &BoolHom) -> Result<BoolHom> {
        if *self.target != *other.source {
            return Err(Error::TargetMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source.name(),
                self.target.name(),
                other.source.name(),
                other.target.name()
            )));
        }
        Ok(BoolHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&x| other.apply(x)).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|x| seen.insert(*x))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &x in &self.map {
            if let Some(slot) = hit.get_mut(x as usize) {
                *slot = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    pub fn to_json(&self) -> HomJson {
        HomJson {
            map: self.map.iter().map(|&x| u64::from(x)).collect(),
            source: self.source.name().to_string(),
            target: self.target.name().to_string(),
        }
    }
}

/// Exhaustive preservation check for `&`, `|`, `!`, 0 and 1.
pub fn check_bool_hom(h: &BoolHom) -> LawReport {
    let (src, dst) = (&*h.source, &*h.target);
    let subject = format!("{} -> {}", src.name(), dst.name());
    let n = src.size();
    let shape_ok = h.map.len() == n && h.map.iter().all(|&x| dst.contains(x));
    let shape = LawResult::single("total map into target", shape_ok, || {
        format!("map has {} entries for a carrier of {n}", h.map.len())
    });
    if !shape_ok {
        return LawReport::new(subject, "bool-hom", vec![shape]);
    }
    let f = |x: usize| h.map[x];
    let name = |x: u32| src.element_name(x);
    let exec = Exec::default();
    let laws = vec![
        shape,
        LawResult::single("preserves 0", f(0) == dst.bot(), || {
            format!("0 maps to {}", dst.element_name(f(0)))
        }),
        LawResult::single("preserves 1", f(src.top() as usize) == dst.top(), || {
            format!("1 maps to {}", dst.element_name(f(src.top() as usize)))
        }),
        sweep(exec, "preserves meet", n, 2, |t| {
            let (x, y) = (t[0] as u32, t[1] as u32);
            (f((x & y) as usize) != dst.meet(f(t[0]), f(t[1]))).then(|| format!("{} & {}", name(x), name(y)))
        }),
        sweep(exec, "preserves join", n, 2, |t| {
            let (x, y) = (t[0] as u32, t[1] as u32);
            (f((x | y) as usize) != dst.join(f(t[0]), f(t[1]))).then(|| format!("{} | {}", name(x), name(y)))
        }),
        sweep(exec, "preserves complement", n, 1, |t| {
            let x = t[0] as u32;
            (f(src.neg(x) as usize) != dst.neg(f(t[0]))).then(|| format!("!{}", name(x)))
        }),
    ];
    LawReport::new(subject, "bool-hom", laws)
}

/// Number of homomorphisms `2^X -> 2^Y`, namely `|X|^|Y|`.
pub fn bool_hom_count(source: &BoolAlg, target: &BoolAlg) -> u128 {
    (source.atoms() as u128).pow(target.atoms() as u32)
}

/// Every Boolean homomorphism `source -> target`.
///
/// A homomorphism is fixed by the images of the source atoms, which must be
/// pairwise disjoint and join to 1. Equivalently, each target atom lies under
/// the image of exactly one source atom, so the homomorphisms are enumerated
/// as functions from target atoms to source atoms, in lexicographic order.
/// Images of source atoms may be 0.
pub fn enumerate_bool_homs(source: &Arc<BoolAlg>, target: &Arc<BoolAlg>) -> BoolHomIter {
    let done = source.atoms() == 0 && target.atoms() > 0;
    BoolHomIter {
        source: source.clone(),
        target: target.clone(),
        choice: vec![0; target.atoms()],
        done,
    }
}

pub struct BoolHomIter {
    source: Arc<BoolAlg>,
    target: Arc<BoolAlg>,
    /// Source atom owning each target atom.
    choice: Vec<usize>,
    done: bool,
}

impl Iterator for BoolHomIter {
    type Item = BoolHom;

    fn next(&mut self) -> Option<BoolHom> {
        if self.done {
            return None;
        }
        let k = self.source.atoms();
        let mut blocks = vec![0u32; k];
        for (j, &i) in self.choice.iter().enumerate() {
            blocks[i] |= 1 << j;
        }
        let mut map = vec![0u32; self.source.size()];
        for m in 1..map.len() {
            map[m] = map[m & (m - 1)] | blocks[m.trailing_zeros() as usize];
        }
        // advance the odometer, last digit fastest
        self.done = true;
        for digit in self.choice.iter_mut().rev() {
            *digit += 1;
            if *digit < k {
                self.done = false;
                break;
            }
            *digit = 0;
        }
        Some(BoolHom {
            source: self.source.clone(),
            target: self.target.clone(),
            map,
        })
    }
}
