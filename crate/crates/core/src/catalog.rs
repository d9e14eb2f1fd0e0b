//! Named fixture algebras.

use std::sync::Arc;

use crate::adjunction::StoneObject;
use crate::boolalg::{powerset_algebra, BoolAlg};
use crate::contract::ContractAlgebra;
use crate::error::Result;
use crate::lattice::FiniteLattice;
use crate::stone::AugStone;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `0 < c1 < ... < c{n-2} < 1`; the one-element chain is `{0}`.
pub fn chain(n: usize) -> Result<FiniteLattice> {
    let names = (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n - 1 => "1".to_string(),
            i => format!("c{i}"),
        })
        .collect();
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    FiniteLattice::from_order(format!("chain{n}"), names, &pairs)
}

/// The pentagon: `0 < a < c < 1`, `0 < b < 1`.
pub fn n5() -> FiniteLattice {
    FiniteLattice::from_order(
        "n5",
        labels(&["0", "a", "c", "b", "1"]),
        &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
    )
    .expect("valid lattice")
}

/// The diamond: three atoms under a common top.
pub fn m3() -> FiniteLattice {
    FiniteLattice::from_order(
        "m3",
        labels(&["0", "a", "b", "c", "1"]),
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
    )
    .expect("valid lattice")
}

/// `0 < a, b < d < 1`: distributive and Heyting but not Stone.
pub fn dense_top_diamond() -> FiniteLattice {
    FiniteLattice::from_order(
        "dense5",
        labels(&["0", "a", "b", "d", "1"]),
        &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
    )
    .expect("valid lattice")
}

/// Componentwise product.
pub fn product(l: &FiniteLattice, r: &FiniteLattice) -> Result<FiniteLattice> {
    let (n, m) = (l.len(), r.len());
    let names = (0..n * m)
        .map(|i| format!("({},{})", l.element_name(i / m), r.element_name(i % m)))
        .collect();
    let mut pairs = Vec::new();
    for i in 0..n * m {
        for j in 0..n * m {
            if l.leq_idx(i / m, j / m) && r.leq_idx(i % m, j % m) {
                pairs.push((i, j));
            }
        }
    }
    FiniteLattice::from_order(format!("{}*{}", l.name(), r.name()), names, &pairs)
}

pub fn boolean(k: usize) -> Arc<BoolAlg> {
    Arc::new(powerset_algebra(k).expect("small k"))
}

/// A Boolean algebra as an augmented Stone algebra with `e = 1`.
pub fn boolean_stone(b: &BoolAlg) -> Result<Arc<AugStone>> {
    let l = b.lattice()?;
    let top = l.top_idx();
    Ok(Arc::new(AugStone::with_closure_element((*l).clone(), top)?))
}

pub fn contract(k: usize) -> Result<Arc<ContractAlgebra>> {
    Ok(Arc::new(ContractAlgebra::new(boolean(k))?))
}

/// `B1 .. B{2^max_k}`.
pub fn bool_catalog(max_k: usize) -> Vec<Arc<BoolAlg>> {
    (0..=max_k).map(boolean).collect()
}

/// Power-set algebras for `k <= 3`, chains of length 2 to 6, `C(2^k)` for
/// `k <= 3` and two products, restricted to carriers of at most `max_size`.
pub fn stone_catalog(max_size: usize) -> Result<Vec<StoneObject>> {
    let mut out = Vec::new();
    for k in 0..=3 {
        out.push(StoneObject::plain(boolean_stone(&boolean(k))?));
    }
    for n in 2..=6 {
        out.push(StoneObject::plain(Arc::new(AugStone::certify(chain(n)?)?)));
    }
    for k in 0..=3 {
        out.push(StoneObject::contract(contract(k)?));
    }
    out.push(StoneObject::plain(Arc::new(AugStone::certify(product(
        &chain(2)?,
        &chain(3)?,
    )?)?)));
    out.push(StoneObject::plain(Arc::new(AugStone::certify(product(
        &chain(3)?,
        &chain(3)?,
    )?)?)));
    out.retain(|s| s.stone.len() <= max_size);
    Ok(out)
}
