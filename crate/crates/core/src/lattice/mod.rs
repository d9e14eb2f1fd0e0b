//! Finite bounded lattices over dense element indices.
//!
//! A [`FiniteLattice`] stores its order relation and its meet/join tables;
//! the Heyting implication table is computed on first use and cached. All
//! operations after construction are table lookups.

mod export;
mod laws;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

pub use export::{to_dot, LatticeJson};
pub use laws::{
    check_bounded_distributive, check_bounded_distributive_with, check_heyting, check_heyting_with, check_lattice_laws,
    check_lattice_laws_with, check_stone, check_stone_with,
};

use crate::error::{Error, Result};
use crate::par::Exec;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// An element of one particular lattice.
///
/// The owner tag is compared in debug builds so that an index taken from one
/// lattice cannot silently be used in another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    idx: u32,
    owner: u64,
}

impl Element {
    pub fn index(self) -> usize {
        self.idx as usize
    }
}

#[derive(Clone, Debug)]
pub struct FiniteLattice {
    id: u64,
    name: String,
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<u32>,
    join: Vec<u32>,
    implies: OnceLock<std::result::Result<Vec<u32>, (u32, u32)>>,
    bot: u32,
    top: u32,
}

/// Build a lattice on `0..n` from generating order pairs, with default labels.
pub fn build_lattice(n: usize, leq_pairs: &[(usize, usize)]) -> Result<FiniteLattice> {
    let names = (0..n).map(|i| i.to_string()).collect();
    FiniteLattice::from_order("L", names, leq_pairs)
}

impl FiniteLattice {
    /// Close `pairs` reflexively and transitively, then derive meet and join.
    pub fn from_order(name: impl Into<String>, names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NoBounds("bottom"));
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            for idx in [a, b] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, len: n });
                }
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::NotAPartialOrder {
                        a: names[i].clone(),
                        b: names[j].clone(),
                    });
                }
            }
        }
        let bot = (0..n)
            .find(|&b| (0..n).all(|x| leq[b * n + x]))
            .ok_or(Error::NoBounds("bottom"))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq[x * n + t]))
            .ok_or(Error::NoBounds("top"))?;

        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let glb = (0..n).find(|&z| {
                    leq[z * n + x]
                        && leq[z * n + y]
                        && (0..n).all(|w| !(leq[w * n + x] && leq[w * n + y]) || leq[w * n + z])
                });
                let lub = (0..n).find(|&z| {
                    leq[x * n + z]
                        && leq[y * n + z]
                        && (0..n).all(|w| !(leq[x * n + w] && leq[y * n + w]) || leq[z * n + w])
                });
                let not_lattice = |op| Error::NotALattice {
                    op,
                    x: names[x].clone(),
                    y: names[y].clone(),
                };
                meet[x * n + y] = glb.ok_or_else(|| not_lattice("meet"))? as u32;
                join[x * n + y] = lub.ok_or_else(|| not_lattice("join"))? as u32;
            }
        }
        Ok(FiniteLattice {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.into(),
            names,
            leq,
            meet,
            join,
            implies: OnceLock::new(),
            bot: bot as u32,
            top: top as u32,
        })
    }

    /// Assemble a lattice from precomputed operation tables.
    ///
    /// The order is read off the meet table (`x <= y` iff `x & y = x`). The
    /// tables are trusted here; [`check_lattice_laws`] validates them.
    pub(crate) fn from_tables(
        name: impl Into<String>,
        names: Vec<String>,
        meet: Vec<u32>,
        join: Vec<u32>,
        implies: Option<Vec<u32>>,
    ) -> Result<Self> {
        let n = names.len();
        assert_eq!(meet.len(), n * n);
        assert_eq!(join.len(), n * n);
        let leq: Vec<bool> = (0..n * n).map(|xy| meet[xy] as usize == xy / n).collect();
        let bot = (0..n)
            .find(|&b| (0..n).all(|x| leq[b * n + x]))
            .ok_or(Error::NoBounds("bottom"))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq[x * n + t]))
            .ok_or(Error::NoBounds("top"))?;
        let cell = OnceLock::new();
        if let Some(table) = implies {
            assert_eq!(table.len(), n * n);
            let _ = cell.set(Ok(table));
        }
        Ok(FiniteLattice {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.into(),
            names,
            leq,
            meet,
            join,
            implies: cell,
            bot: bot as u32,
            top: top as u32,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn id(&self) -> u64 {
        self.id
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    /// Look up an element by its label.
    pub fn find(&self, label: &str) -> Option<Element> {
        self.names.iter().position(|n| n == label).map(|i| self.elem(i))
    }

    pub fn element(&self, idx: usize) -> Result<Element> {
        if idx < self.len() {
            Ok(self.elem(idx))
        } else {
            Err(Error::IndexOutOfRange {
                index: idx,
                len: self.len(),
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.len()).map(|i| self.elem(i))
    }

    fn elem(&self, idx: usize) -> Element {
        Element {
            idx: idx as u32,
            owner: self.id,
        }
    }

    #[inline]
    fn own(&self, x: Element) -> usize {
        debug_assert_eq!(x.owner, self.id, "element from a different lattice");
        x.index()
    }

    pub fn bot(&self) -> Element {
        self.elem(self.bot as usize)
    }

    pub fn top(&self) -> Element {
        self.elem(self.top as usize)
    }

    pub fn bot_idx(&self) -> usize {
        self.bot as usize
    }

    pub fn top_idx(&self) -> usize {
        self.top as usize
    }

    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.leq_idx(self.own(x), self.own(y))
    }

    pub fn meet(&self, x: Element, y: Element) -> Element {
        self.elem(self.meet_idx(self.own(x), self.own(y)))
    }

    pub fn join(&self, x: Element, y: Element) -> Element {
        self.elem(self.join_idx(self.own(x), self.own(y)))
    }

    #[inline]
    pub fn leq_idx(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    #[inline]
    pub fn meet_idx(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y] as usize
    }

    #[inline]
    pub fn join_idx(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y] as usize
    }

    /// `max {c : c & x <= y}` found by scanning the whole carrier, or `None`
    /// when that set has no maximum.
    ///
    /// The maximum exists exactly when the join of all candidates is itself a
    /// candidate.
    pub fn residual_by_scan(&self, x: usize, y: usize) -> Option<usize> {
        let candidates = (0..self.len()).filter(|&c| self.leq_idx(self.meet_idx(c, x), y));
        let j = candidates.fold(self.bot_idx(), |acc, c| self.join_idx(acc, c));
        self.leq_idx(self.meet_idx(j, x), y).then_some(j)
    }

    /// The implication table, computed once.
    pub fn impl_table(&self) -> Result<&[u32]> {
        let table = self.implies.get_or_init(|| {
            let n = self.len();
            let rows = Exec::default().map_range(n, |x| {
                (0..n)
                    .map(|y| {
                        self.residual_by_scan(x, y)
                            .map(|r| r as u32)
                            .ok_or((x as u32, y as u32))
                    })
                    .collect::<std::result::Result<Vec<u32>, _>>()
            });
            let mut table = Vec::with_capacity(n * n);
            for row in rows {
                table.extend(row?);
            }
            Ok(table)
        });
        table.as_deref().map_err(|&(x, y)| Error::NotHeyting {
            x: self.names[x as usize].clone(),
            y: self.names[y as usize].clone(),
        })
    }

    pub fn is_heyting(&self) -> bool {
        self.impl_table().is_ok()
    }

    pub fn implies_idx(&self, x: usize, y: usize) -> Result<usize> {
        Ok(self.impl_table()?[x * self.len() + y] as usize)
    }

    pub fn neg_idx(&self, x: usize) -> Result<usize> {
        self.implies_idx(x, self.bot_idx())
    }

    pub fn cl_idx(&self, x: usize) -> Result<usize> {
        self.neg_idx(self.neg_idx(x)?)
    }

    /// Relative pseudo-complement `x -> y`.
    pub fn heyting_implies(&self, x: Element, y: Element) -> Result<Element> {
        Ok(self.elem(self.implies_idx(self.own(x), self.own(y))?))
    }

    /// `!x = x -> 0`.
    pub fn pseudo_complement(&self, x: Element) -> Result<Element> {
        self.heyting_implies(x, self.bot())
    }

    /// `cl(x) = !!x`.
    pub fn closure(&self, x: Element) -> Result<Element> {
        self.pseudo_complement(self.pseudo_complement(x)?)
    }

    pub fn is_closed(&self, x: Element) -> Result<bool> {
        Ok(self.closure(x)? == x)
    }

    pub fn is_dense(&self, x: Element) -> Result<bool> {
        Ok(self.closure(x)? == self.top())
    }

    /// Pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x == y || !self.leq_idx(x, y) {
                    continue;
                }
                let between = (0..n).any(|z| z != x && z != y && self.leq_idx(x, z) && self.leq_idx(z, y));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        let bot = self.bot_idx();
        self.covers()
            .into_iter()
            .filter(|&(x, _)| x == bot)
            .map(|(_, y)| y)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FiniteLattice {
        FiniteLattice::from_order(
            "diamond",
            ["0", "a", "b", "1"].map(String::from).to_vec(),
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn trivial_lattice() {
        let l = build_lattice(1, &[]).unwrap();
        assert_eq!(l.bot_idx(), 0);
        assert_eq!(l.top_idx(), 0);
        assert_eq!(l.implies_idx(0, 0).unwrap(), 0);
    }

    #[test]
    fn three_chain_bounds_and_implication() {
        let l = build_lattice(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!((l.bot_idx(), l.top_idx()), (0, 2));
        assert!(l.leq_idx(0, 2));
        assert_eq!(l.implies_idx(2, 0).unwrap(), 0);
        for x in 0..3 {
            assert_eq!(l.implies_idx(x, x).unwrap(), 2);
        }
        // !e = 0, cl(e) = 1
        assert_eq!(l.neg_idx(1).unwrap(), 0);
        assert_eq!(l.cl_idx(1).unwrap(), 2);
        let e = l.element(1).unwrap();
        assert!(l.is_dense(e).unwrap());
        assert!(!l.is_closed(e).unwrap());
    }

    #[test]
    fn diamond_meet_join_implication() {
        let l = diamond();
        assert_eq!(l.meet_idx(1, 2), 0);
        assert_eq!(l.join_idx(1, 2), 3);
        // a -> b = b | !a = b
        assert_eq!(l.implies_idx(1, 2).unwrap(), 2);
        assert_eq!(l.neg_idx(0).unwrap(), 3);
        assert_eq!(l.neg_idx(3).unwrap(), 0);
        let (bot, top) = (l.bot(), l.top());
        assert!(l.is_closed(bot).unwrap());
        assert!(l.is_dense(top).unwrap());
    }

    #[test]
    fn four_chain_closure() {
        let l = build_lattice(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(l.cl_idx(1).unwrap(), 3);
        assert_eq!(l.cl_idx(2).unwrap(), 3);
        let closed: Vec<usize> = (0..4).filter(|&x| l.cl_idx(x).unwrap() == x).collect();
        assert_eq!(closed, vec![0, 3]);
    }

    #[test]
    fn order_errors() {
        assert!(matches!(
            build_lattice(2, &[(0, 1), (1, 0)]),
            Err(Error::NotAPartialOrder { .. })
        ));
        // two incomparable maximal elements
        assert!(matches!(
            build_lattice(3, &[(0, 1), (0, 2)]),
            Err(Error::NoBounds("top"))
        ));
        assert!(matches!(build_lattice(2, &[]), Err(Error::NoBounds(_))));
        // 0 < a,b < c,d < 1 with a,b both below c and d: no unique join of a and b
        let bowtie = build_lattice(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]);
        assert!(matches!(bowtie, Err(Error::NotALattice { .. })));
        assert!(matches!(
            build_lattice(2, &[(0, 7)]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn n5_is_not_heyting() {
        // 0 < a < c < 1, 0 < b < 1
        let l = build_lattice(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert!(matches!(l.implies_idx(2, 1), Err(Error::NotHeyting { .. })));
        assert_eq!(l.residual_by_scan(2, 1), None);
    }

    #[test]
    fn covers_of_diamond() {
        assert_eq!(diamond().covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(diamond().atoms(), vec![1, 2]);
    }

    #[test]
    #[cfg(debug_assertions)]
    #[should_panic(expected = "different lattice")]
    fn foreign_elements_are_rejected() {
        let a = diamond();
        let b = diamond();
        let _ = a.meet(a.top(), b.top());
    }
}
