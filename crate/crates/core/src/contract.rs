//! The contract algebra `C(B)`: pairs `(a, g)` of a Boolean algebra with
//! `a | g = 1`, ordered by weaker assumption and stronger guarantee, with
//! closure element `(1, 1)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::boolalg::{BoolAlg, BoolHom};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::par::Exec;
use crate::stone::{AugStone, StoneHom};

/// Largest contract algebra built as a table (`3^6`).
pub const MAX_CONTRACT_CARRIER: usize = 729;

/// Assumption and guarantee masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Contract {
    pub a: u32,
    pub g: u32,
}

impl Contract {
    /// Checked constructor: `a | g` must be the top of `b`.
    pub fn new(b: &BoolAlg, a: u32, g: u32) -> Result<Self> {
        if !b.contains(a) || !b.contains(g) {
            return Err(Error::Input(format!(
                "masks {a:#b}, {g:#b} are not elements of {}",
                b.name()
            )));
        }
        let missing = b.neg(a | g);
        if missing != 0 {
            let uncovered = (0..b.atoms())
                .filter(|i| missing >> i & 1 == 1)
                .map(|i| b.atom_names()[i].clone())
                .collect();
            return Err(Error::NotAContract { uncovered });
        }
        Ok(Contract { a, g })
    }

    pub fn top(b: &BoolAlg) -> Self {
        Contract { a: 0, g: b.top() }
    }

    pub fn bottom(b: &BoolAlg) -> Self {
        Contract { a: b.top(), g: 0 }
    }

    pub fn closure_element(b: &BoolAlg) -> Self {
        Contract { a: b.top(), g: b.top() }
    }

    /// `(a | a', g & g')`.
    pub fn meet(self, other: Contract) -> Self {
        Contract {
            a: self.a | other.a,
            g: self.g & other.g,
        }
    }

    /// `(a & a', g | g')`.
    pub fn join(self, other: Contract) -> Self {
        Contract {
            a: self.a & other.a,
            g: self.g | other.g,
        }
    }

    /// `self -> other`: with `self = (a', g')` and `other = (a, g)`,
    /// `((a & !a') | (g' & !g), !g' | g)`.
    pub fn implies(self, other: Contract, b: &BoolAlg) -> Self {
        let (ap, gp) = (self.a, self.g);
        let (a, g) = (other.a, other.g);
        Contract {
            a: (a & b.neg(ap)) | (gp & b.neg(g)),
            g: b.neg(gp) | g,
        }
    }

    pub fn neg(self, b: &BoolAlg) -> Self {
        self.implies(Contract::bottom(b), b)
    }

    pub fn cl(self, b: &BoolAlg) -> Self {
        self.neg(b).neg(b)
    }

    /// `(f a, f g)`.
    pub fn map(self, f: &BoolHom) -> Self {
        Contract {
            a: f.apply(self.a),
            g: f.apply(self.g),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ContractAlgebra {
    base: Arc<BoolAlg>,
    pairs: Vec<Contract>,
    index_of: HashMap<Contract, u32>,
    stone: Arc<AugStone>,
}

impl ContractAlgebra {
    /// Enumerate the carrier, fill the operation tables from the pair
    /// formulas, cross-check the implication table against the generic
    /// residual, and certify the result.
    pub fn new(base: Arc<BoolAlg>) -> Result<Self> {
        let size = 3u128.pow(base.atoms() as u32);
        if size > MAX_CONTRACT_CARRIER as u128 {
            return Err(Error::TooLarge {
                size,
                cap: MAX_CONTRACT_CARRIER as u128,
            });
        }
        let top = base.top();
        let pairs: Vec<Contract> = (0..=top)
            .flat_map(|a| (0..=top).map(move |g| Contract { a, g }))
            .filter(|c| c.a | c.g == top)
            .collect();
        let index_of: HashMap<Contract, u32> = pairs.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let n = pairs.len();
        let table = |op: &(dyn Fn(Contract, Contract) -> Contract + Sync)| -> Vec<u32> {
            Exec::default()
                .map_range(n, |x| {
                    (0..n).map(|y| index_of[&op(pairs[x], pairs[y])]).collect::<Vec<_>>()
                })
                .concat()
        };
        let meet = table(&|x, y| x.meet(y));
        let join = table(&|x, y| x.join(y));
        let implies = table(&|x, y| x.implies(y, &base));
        let names = pairs
            .iter()
            .map(|c| format!("({},{})", base.element_name(c.a), base.element_name(c.g)))
            .collect();
        let lattice =
            FiniteLattice::from_tables(format!("C({})", base.name()), names, meet, join, Some(implies.clone()))?;

        let mismatch = Exec::default()
            .map_range(n, |x| {
                (0..n)
                    .find(|&y| lattice.residual_by_scan(x, y) != Some(implies[x * n + y] as usize))
                    .map(|y| (x, y))
            })
            .into_iter()
            .flatten()
            .next();
        if let Some((x, y)) = mismatch {
            return Err(Error::ImplicationMismatch {
                x: lattice.element_name(x).to_string(),
                y: lattice.element_name(y).to_string(),
            });
        }

        let e = index_of[&Contract::closure_element(&base)] as usize;
        let stone = Arc::new(AugStone::with_closure_element(lattice, e)?);
        Ok(ContractAlgebra {
            base,
            pairs,
            index_of,
            stone,
        })
    }

    pub fn base(&self) -> &Arc<BoolAlg> {
        &self.base
    }

    pub fn stone(&self) -> &Arc<AugStone> {
        &self.stone
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, idx: usize) -> Contract {
        self.pairs[idx]
    }

    pub fn pairs(&self) -> &[Contract] {
        &self.pairs
    }

    pub fn index_of(&self, c: Contract) -> Option<usize> {
        self.index_of.get(&c).map(|&i| i as usize)
    }

    pub fn pi1(&self, idx: usize) -> u32 {
        self.pairs[idx].a
    }

    pub fn pi2(&self, idx: usize) -> u32 {
        self.pairs[idx].g
    }

    /// Index of `(!x, x)`.
    pub fn delta(&self, x: u32) -> usize {
        self.index_of[&Contract {
            a: self.base.neg(x),
            g: x,
        }] as usize
    }

    pub fn top(&self) -> usize {
        self.stone.top()
    }

    pub fn bottom(&self) -> usize {
        self.stone.bot()
    }

    pub fn e(&self) -> usize {
        self.stone.e()
    }
}

/// `C(f)`: `(a, g) |-> (f a, f g)`.
pub fn contract_on_hom(f: &BoolHom, source: &ContractAlgebra, target: &ContractAlgebra) -> Result<StoneHom> {
    if *f.source != **source.base() || *f.target != **target.base() {
        return Err(Error::TargetMismatch(format!(
            "{} -> {} does not match C({}) -> C({})",
            f.source.name(),
            f.target.name(),
            source.base().name(),
            target.base().name()
        )));
    }
    let map = source
        .pairs()
        .iter()
        .map(|c| target.index_of(c.map(f)).map(|i| i as u32))
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(|| Error::NotAHomomorphism(Box::new(crate::boolalg::check_bool_hom(f))))?;
    Ok(StoneHom {
        source: source.stone().clone(),
        target: target.stone().clone(),
        map,
    })
}
