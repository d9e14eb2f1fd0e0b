use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::FiniteLattice;
use crate::error::Result;

/// On-disk lattice format. `leq` lists order pairs by index; any generating
/// set is accepted on load, and the cover relation is written on save.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub name: String,
    pub elements: Vec<String>,
    pub leq: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<usize>,
}

impl LatticeJson {
    pub fn from_lattice(l: &FiniteLattice, e: Option<usize>) -> Self {
        LatticeJson {
            name: l.name().to_string(),
            elements: l.names().to_vec(),
            leq: l.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            e,
        }
    }

    pub fn to_lattice(&self) -> Result<FiniteLattice> {
        let pairs: Vec<(usize, usize)> = self.leq.iter().map(|&[a, b]| (a, b)).collect();
        FiniteLattice::from_order(self.name.clone(), self.elements.clone(), &pairs)
    }
}

/// Graphviz rendering of the Hasse diagram, bottom at the bottom.
pub fn to_dot(l: &FiniteLattice) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", escape(l.name()));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=plaintext];");
    for (i, name) in l.names().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(name));
    }
    for (a, b) in l.covers() {
        let _ = writeln!(out, "  n{a} -> n{b} [arrowhead=none];");
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;

    #[test]
    fn dot_of_three_chain() {
        let l = build_lattice(3, &[(0, 1), (1, 2)]).unwrap();
        let dot = to_dot(&l);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("n0 -> n1"));
        assert!(dot.contains("n1 -> n2"));
    }

    #[test]
    fn json_round_trip_preserves_order() {
        let l = build_lattice(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let json = serde_json::to_string(&LatticeJson::from_lattice(&l, None)).unwrap();
        assert_eq!(
            json,
            r#"{"name":"L","elements":["0","1","2","3"],"leq":[[0,1],[0,2],[1,3],[2,3]]}"#
        );
        let back: LatticeJson = serde_json::from_str(&json).unwrap();
        let l2 = back.to_lattice().unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(l.leq_idx(x, y), l2.leq_idx(x, y));
            }
        }
    }
}
