//! Augmented Stone algebras: certification, the closure element, the
//! skeleton of closed elements, and the closure functor on morphisms.

use std::sync::Arc;

use crate::boolalg::{as_boolean, BoolAlg, BoolHom};
use crate::error::{Error, Result};
use crate::lattice::{check_bounded_distributive_with, check_heyting_with, check_stone_with, Element, FiniteLattice};
use crate::par::Exec;
use crate::report::{sweep, LawReport, LawResult};

/// Closed elements of a Stone algebra as a power-set algebra.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub alg: Arc<BoolAlg>,
    /// Skeleton mask to element of the Stone algebra.
    pub embed: Vec<usize>,
    /// Element of the Stone algebra to skeleton mask, for closed elements.
    pub mask_of: Vec<Option<u32>>,
}

/// A certified Stone algebra with its closure element `e`.
#[derive(Clone, Debug)]
pub struct AugStone {
    lattice: FiniteLattice,
    e: usize,
    skeleton: Skeleton,
}

impl AugStone {
    /// Certify `lattice` and discover its closure element.
    pub fn certify(lattice: FiniteLattice) -> Result<Self> {
        certify_stone(&lattice)?;
        let e = find_closure_element(&lattice)?.index();
        AugStone::assemble(lattice, e)
    }

    /// Certify `lattice` with a given closure element.
    pub fn with_closure_element(lattice: FiniteLattice, e: usize) -> Result<Self> {
        if e >= lattice.len() {
            return Err(Error::IndexOutOfRange {
                index: e,
                len: lattice.len(),
            });
        }
        certify_stone(&lattice)?;
        let aug = check_augmentation(&lattice, e);
        if !aug.passed() {
            return Err(Error::NotCertified(Box::new(aug)));
        }
        AugStone::assemble(lattice, e)
    }

    fn assemble(lattice: FiniteLattice, e: usize) -> Result<Self> {
        let skeleton = build_skeleton(&lattice)?;
        Ok(AugStone { lattice, e, skeleton })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn name(&self) -> &str {
        self.lattice.name()
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn closure_element(&self) -> Element {
        self.lattice.element(self.e).expect("e is in range")
    }

    pub fn bot(&self) -> usize {
        self.lattice.bot_idx()
    }

    pub fn top(&self) -> usize {
        self.lattice.top_idx()
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.lattice.meet_idx(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.lattice.join_idx(x, y)
    }

    pub fn implies(&self, x: usize, y: usize) -> usize {
        self.lattice.implies_idx(x, y).expect("certified Heyting")
    }

    pub fn neg(&self, x: usize) -> usize {
        self.implies(x, self.bot())
    }

    pub fn cl(&self, x: usize) -> usize {
        self.neg(self.neg(x))
    }

    pub fn is_closed(&self, x: usize) -> bool {
        self.cl(x) == x
    }

    pub fn is_dense(&self, x: usize) -> bool {
        self.cl(x) == self.top()
    }

    pub fn element_name(&self, x: usize) -> &str {
        self.lattice.element_name(x)
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    /// Same carrier and operations (compared through the lattice identity).
    pub fn same_as(&self, other: &AugStone) -> bool {
        self.lattice.id() == other.lattice.id()
            || (self.lattice.names() == other.lattice.names()
                && self.e == other.e
                && (0..self.len())
                    .all(|x| (0..self.len()).all(|y| self.lattice.leq_idx(x, y) == other.lattice.leq_idx(x, y))))
    }
}

fn certify_stone(l: &FiniteLattice) -> Result<()> {
    let exec = Exec::default();
    let parts = vec![
        check_bounded_distributive_with(l, exec),
        check_heyting_with(l, exec),
        check_stone_with(l, exec),
    ];
    if parts.iter().all(LawReport::passed) {
        Ok(())
    } else {
        Err(Error::NotCertified(Box::new(LawReport::combine(
            l.name(),
            "stone certification",
            parts,
        ))))
    }
}

/// `e -> x = cl(x)` for every `x`.
pub fn check_augmentation(l: &FiniteLattice, e: usize) -> LawReport {
    let law = match l.impl_table() {
        Err(err) => LawResult::single("augmentation identity", false, || err.to_string()),
        Ok(_) => sweep(Exec::default(), "augmentation identity", l.len(), 1, |t| {
            let x = t[0];
            let lhs = l.implies_idx(e, x).ok()?;
            let rhs = l.cl_idx(x).ok()?;
            (lhs != rhs).then(|| {
                format!(
                    "e={} x={}: e -> x = {} but cl(x) = {}",
                    l.element_name(e),
                    l.element_name(x),
                    l.element_name(lhs),
                    l.element_name(rhs)
                )
            })
        }),
    };
    LawReport::new(l.name(), "augmented", vec![law])
}

fn satisfies_augmentation(l: &FiniteLattice, e: usize) -> Result<bool> {
    for x in 0..l.len() {
        if l.implies_idx(e, x)? != l.cl_idx(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Meet of all dense elements.
pub fn meet_of_dense(l: &FiniteLattice) -> Result<usize> {
    let mut acc = l.top_idx();
    for x in 0..l.len() {
        if l.cl_idx(x)? == l.top_idx() {
            acc = l.meet_idx(acc, x);
        }
    }
    Ok(acc)
}

/// Every element satisfying `e -> x = cl(x)` for all `x`, by exhaustive scan.
pub fn closure_element_candidates(l: &FiniteLattice) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for e in 0..l.len() {
        if satisfies_augmentation(l, e)? {
            out.push(e);
        }
    }
    Ok(out)
}

/// The closure element of a Stone algebra.
///
/// Tries the meet of the dense elements first and verifies it against every
/// element; only if that fails are all elements scanned.
pub fn find_closure_element(l: &FiniteLattice) -> Result<Element> {
    let candidate = meet_of_dense(l)?;
    if satisfies_augmentation(l, candidate)? {
        return l.element(candidate);
    }
    match closure_element_candidates(l)?.as_slice() {
        [] => Err(Error::NotAugmented),
        [e] => l.element(*e),
        many => Err(Error::MultipleClosureElements(
            many.iter().map(|&x| l.element_name(x).to_string()).collect(),
        )),
    }
}

/// Properties (i)-(iv) of an augmented Stone algebra:
/// cl(e) = 1; e is the only closure element; y -> e is dense;
/// and x -> y = !x | y whenever x is closed.
pub fn check_aug_props(s: &AugStone) -> LawReport {
    check_aug_props_with(s, Exec::default())
}

pub fn check_aug_props_with(s: &AugStone, exec: Exec) -> LawReport {
    let n = s.len();
    let e = s.e();
    let name = |x: usize| s.element_name(x);
    let cl_e = s.cl(e);
    let i = LawResult::single("(i) cl(e) = 1", cl_e == s.top(), || {
        format!("cl({}) = {}", name(e), name(cl_e))
    });
    let ii = sweep(exec, "(ii) closure element is unique", n, 1, |t| {
        let c = t[0];
        let ok = (0..n).all(|x| s.implies(c, x) == s.cl(x));
        (ok != (c == e)).then(|| {
            if ok {
                format!("{} also satisfies e -> x = cl(x)", name(c))
            } else {
                format!("{} fails e -> x = cl(x)", name(c))
            }
        })
    });
    let iii = sweep(exec, "(iii) y -> e is dense", n, 1, |t| {
        let y = t[0];
        let r = s.implies(y, e);
        (!s.is_dense(r)).then(|| format!("y={}: y -> e = {} has cl = {}", name(y), name(r), name(s.cl(r))))
    });
    let iv = sweep(exec, "(iv) closed x: x -> y = !x | y", n, 2, |t| {
        let (x, y) = (t[0], t[1]);
        if !s.is_closed(x) {
            return None;
        }
        let lhs = s.implies(x, y);
        let rhs = s.join(s.neg(x), y);
        (lhs != rhs).then(|| {
            format!(
                "x={} y={}: x -> y = {} but !x | y = {}",
                name(x),
                name(y),
                name(lhs),
                name(rhs)
            )
        })
    });
    LawReport::new(s.name(), "props-i-iv", vec![i, ii, iii, iv])
}

fn build_skeleton(l: &FiniteLattice) -> Result<Skeleton> {
    let n = l.len();
    let closed: Vec<usize> = (0..n)
        .filter(|&x| l.cl_idx(x).map(|c| c == x).unwrap_or(false))
        .collect();
    let mut pos = vec![None; n];
    for (i, &x) in closed.iter().enumerate() {
        pos[x] = Some(i as u32);
    }
    let m = closed.len();
    let mut meet = Vec::with_capacity(m * m);
    let mut join = Vec::with_capacity(m * m);
    for &x in &closed {
        for &y in &closed {
            let mx = pos[l.meet_idx(x, y)].ok_or_else(|| Error::SkeletonNotSublattice("meet".into()))?;
            let jx = pos[l.join_idx(x, y)].ok_or_else(|| Error::SkeletonNotSublattice("join".into()))?;
            meet.push(mx);
            join.push(jx);
        }
        if pos[l.neg_idx(x)?].is_none() {
            return Err(Error::SkeletonNotSublattice("negation".into()));
        }
    }
    let names = closed.iter().map(|&x| l.element_name(x).to_string()).collect();
    let sub = FiniteLattice::from_tables(format!("Cl({})", l.name()), names, meet, join, None)?;
    let view = as_boolean(&sub).map_err(|e| Error::SkeletonNotBoolean(e.to_string()))?;
    let embed: Vec<usize> = view.from_mask.iter().map(|&i| closed[i]).collect();
    let mut mask_of = vec![None; n];
    for (mask, &x) in embed.iter().enumerate() {
        mask_of[x] = Some(mask as u32);
    }
    Ok(Skeleton {
        alg: view.alg,
        embed,
        mask_of,
    })
}

/// A map between augmented Stone algebras.
#[derive(Clone, Debug)]
pub struct StoneHom {
    pub source: Arc<AugStone>,
    pub target: Arc<AugStone>,
    pub map: Vec<u32>,
}

impl PartialEq for StoneHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.source.same_as(&other.source) && self.target.same_as(&other.target)
    }
}

impl Eq for StoneHom {}

impl StoneHom {
    pub fn identity(s: &Arc<AugStone>) -> Self {
        StoneHom {
            source: s.clone(),
            target: s.clone(),
            map: (0..s.len() as u32).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    /// `other . self`.
    pub fn then(&self, other: &StoneHom) -> Result<StoneHom> {
        if !self.target.same_as(&other.source) {
            return Err(Error::TargetMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source.name(),
                self.target.name(),
                other.source.name(),
                other.target.name()
            )));
        }
        Ok(StoneHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&x| other.map[x as usize]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map
            .iter()
            .all(|&x| !std::mem::replace(&mut seen[x as usize], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &x in &self.map {
            hit[x as usize] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// Exhaustive preservation check for `&`, `|`, `->`, 0, 1 and `e`.
pub fn check_stone_hom(h: &StoneHom) -> LawReport {
    let (src, dst) = (&*h.source, &*h.target);
    let subject = format!("{} -> {}", src.name(), dst.name());
    let n = src.len();
    let shape_ok = h.map.len() == n && h.map.iter().all(|&x| (x as usize) < dst.len());
    let shape = LawResult::single("total map into target", shape_ok, || {
        format!("map has {} entries for a carrier of {n}", h.map.len())
    });
    if !shape_ok {
        return LawReport::new(subject, "stone-hom", vec![shape]);
    }
    let f = |x: usize| h.map[x] as usize;
    let name = |x: usize| src.element_name(x);
    let constant = |label: &str, x: usize, y: usize| {
        LawResult::single(format!("preserves {label}"), f(x) == y, || {
            format!(
                "{} maps to {}, expected {}",
                name(x),
                dst.element_name(f(x)),
                dst.element_name(y)
            )
        })
    };
    let exec = Exec::default();
    let binary = |law: &str,
                  op_src: &(dyn Fn(usize, usize) -> usize + Sync),
                  op_dst: &(dyn Fn(usize, usize) -> usize + Sync),
                  sym: &str| {
        sweep(exec, law, n, 2, |t| {
            let (x, y) = (t[0], t[1]);
            let lhs = f(op_src(x, y));
            let rhs = op_dst(f(x), f(y));
            (lhs != rhs).then(|| {
                format!(
                    "{} {sym} {}: image {} but {}",
                    name(x),
                    name(y),
                    dst.element_name(lhs),
                    dst.element_name(rhs)
                )
            })
        })
    };
    let laws = vec![
        shape,
        constant("0", src.bot(), dst.bot()),
        constant("1", src.top(), dst.top()),
        constant("e", src.e(), dst.e()),
        binary("preserves meet", &|x, y| src.meet(x, y), &|x, y| dst.meet(x, y), "&"),
        binary("preserves join", &|x, y| src.join(x, y), &|x, y| dst.join(x, y), "|"),
        binary(
            "preserves implication",
            &|x, y| src.implies(x, y),
            &|x, y| dst.implies(x, y),
            "->",
        ),
    ];
    LawReport::new(subject, "stone-hom", laws)
}

/// Restriction of `sigma` to closed elements, as a Boolean homomorphism
/// between the skeletons.
pub fn cl_on_hom(sigma: &StoneHom) -> Result<BoolHom> {
    let (src, dst) = (sigma.source.skeleton(), sigma.target.skeleton());
    let map = src
        .embed
        .iter()
        .map(|&x| {
            let y = sigma.apply(x);
            dst.mask_of[y].ok_or_else(|| Error::NotClosedImage(sigma.target.element_name(y).to_string()))
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(BoolHom {
        source: src.alg.clone(),
        target: dst.alg.clone(),
        map,
    })
}
