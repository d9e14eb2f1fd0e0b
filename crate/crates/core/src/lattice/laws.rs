use super::FiniteLattice;
use crate::par::Exec;
use crate::report::{sweep, LawReport, LawResult};

pub fn check_lattice_laws(l: &FiniteLattice) -> LawReport {
    check_lattice_laws_with(l, Exec::default())
}

/// Partial-order axioms, meet/join as glb/lub of the order, bounds, and the
/// semilattice and absorption identities.
pub fn check_lattice_laws_with(l: &FiniteLattice, exec: Exec) -> LawReport {
    let n = l.len();
    let name = |i: usize| l.element_name(i);
    let laws = vec![
        sweep(exec, "reflexive", n, 1, |t| {
            (!l.leq_idx(t[0], t[0])).then(|| format!("{} <= {} fails", name(t[0]), name(t[0])))
        }),
        sweep(exec, "antisymmetric", n, 2, |t| {
            let (x, y) = (t[0], t[1]);
            (x != y && l.leq_idx(x, y) && l.leq_idx(y, x)).then(|| format!("{} <= {} <= {}", name(x), name(y), name(x)))
        }),
        sweep(exec, "transitive", n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            (l.leq_idx(x, y) && l.leq_idx(y, z) && !l.leq_idx(x, z)).then(|| {
                format!(
                    "{} <= {} <= {} but not {} <= {}",
                    name(x),
                    name(y),
                    name(z),
                    name(x),
                    name(z)
                )
            })
        }),
        sweep(exec, "bounds", n, 1, |t| {
            let x = t[0];
            (!(l.leq_idx(l.bot_idx(), x) && l.leq_idx(x, l.top_idx())))
                .then(|| format!("{} is not between bottom and top", name(x)))
        }),
        sweep(exec, "meet is greatest lower bound", n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            let m = l.meet_idx(x, y);
            let lower = l.leq_idx(m, x) && l.leq_idx(m, y);
            let greatest = !(l.leq_idx(z, x) && l.leq_idx(z, y)) || l.leq_idx(z, m);
            (!(lower && greatest)).then(|| format!("{} & {} = {} (against {})", name(x), name(y), name(m), name(z)))
        }),
        sweep(exec, "join is least upper bound", n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            let j = l.join_idx(x, y);
            let upper = l.leq_idx(x, j) && l.leq_idx(y, j);
            let least = !(l.leq_idx(x, z) && l.leq_idx(y, z)) || l.leq_idx(j, z);
            (!(upper && least)).then(|| format!("{} | {} = {} (against {})", name(x), name(y), name(j), name(z)))
        }),
        sweep(exec, "commutative", n, 2, |t| {
            let (x, y) = (t[0], t[1]);
            (l.meet_idx(x, y) != l.meet_idx(y, x) || l.join_idx(x, y) != l.join_idx(y, x))
                .then(|| format!("{} and {} do not commute", name(x), name(y)))
        }),
        sweep(exec, "associative", n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            let m = l.meet_idx(l.meet_idx(x, y), z) != l.meet_idx(x, l.meet_idx(y, z));
            let j = l.join_idx(l.join_idx(x, y), z) != l.join_idx(x, l.join_idx(y, z));
            (m || j).then(|| format!("({}, {}, {}) do not associate", name(x), name(y), name(z)))
        }),
        sweep(exec, "idempotent", n, 1, |t| {
            let x = t[0];
            (l.meet_idx(x, x) != x || l.join_idx(x, x) != x).then(|| format!("{} is not idempotent", name(x)))
        }),
        sweep(exec, "absorptive", n, 2, |t| {
            let (x, y) = (t[0], t[1]);
            (l.meet_idx(x, l.join_idx(x, y)) != x || l.join_idx(x, l.meet_idx(x, y)) != x)
                .then(|| format!("absorption fails for {} and {}", name(x), name(y)))
        }),
    ];
    LawReport::new(l.name(), "lattice", laws)
}

pub fn check_bounded_distributive(l: &FiniteLattice) -> LawReport {
    check_bounded_distributive_with(l, Exec::default())
}

pub fn check_bounded_distributive_with(l: &FiniteLattice, exec: Exec) -> LawReport {
    let n = l.len();
    let name = |i: usize| l.element_name(i);
    let laws = vec![
        sweep(exec, "bounded", n, 1, |t| {
            let x = t[0];
            (!(l.leq_idx(l.bot_idx(), x) && l.leq_idx(x, l.top_idx())))
                .then(|| format!("{} is not between bottom and top", name(x)))
        }),
        sweep(exec, "meet distributes over join", n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            let lhs = l.meet_idx(x, l.join_idx(y, z));
            let rhs = l.join_idx(l.meet_idx(x, y), l.meet_idx(x, z));
            (lhs != rhs).then(|| {
                format!(
                    "x={} y={} z={}: x & (y | z) = {} but (x & y) | (x & z) = {}",
                    name(x),
                    name(y),
                    name(z),
                    name(lhs),
                    name(rhs)
                )
            })
        }),
        sweep(exec, "join distributes over meet", n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            let lhs = l.join_idx(x, l.meet_idx(y, z));
            let rhs = l.meet_idx(l.join_idx(x, y), l.join_idx(x, z));
            (lhs != rhs).then(|| {
                format!(
                    "x={} y={} z={}: x | (y & z) = {} but (x | y) & (x | z) = {}",
                    name(x),
                    name(y),
                    name(z),
                    name(lhs),
                    name(rhs)
                )
            })
        }),
    ];
    LawReport::new(l.name(), "distributive", laws)
}

pub fn check_heyting(l: &FiniteLattice) -> LawReport {
    check_heyting_with(l, Exec::default())
}

/// Existence of every residual, then the residuation law
/// `a & x <= y  <=>  a <= (x -> y)` against the cached table.
pub fn check_heyting_with(l: &FiniteLattice, exec: Exec) -> LawReport {
    let n = l.len();
    let name = |i: usize| l.element_name(i);
    let exists = sweep(exec, "residual exists", n, 2, |t| {
        let (x, y) = (t[0], t[1]);
        l.residual_by_scan(x, y)
            .is_none()
            .then(|| format!("{{c : c & {} <= {}}} has no maximum", name(x), name(y)))
    });
    let mut laws = vec![exists];
    match l.impl_table() {
        Ok(table) => laws.push(sweep(exec, "residuation", n, 3, |t| {
            let (a, x, y) = (t[0], t[1], t[2]);
            let r = table[x * n + y] as usize;
            (l.leq_idx(l.meet_idx(a, x), y) != l.leq_idx(a, r)).then(|| {
                format!(
                    "a={} x={} y={}: a & x <= y differs from a <= (x -> y) = {}",
                    name(a),
                    name(x),
                    name(y),
                    name(r)
                )
            })
        })),
        Err(e) => laws.push(LawResult::single("residuation", false, || e.to_string())),
    }
    LawReport::new(l.name(), "heyting", laws)
}

pub fn check_stone(l: &FiniteLattice) -> LawReport {
    check_stone_with(l, Exec::default())
}

/// `!x | cl(x) = 1` for every x. Requires a Heyting implication.
pub fn check_stone_with(l: &FiniteLattice, exec: Exec) -> LawReport {
    let n = l.len();
    let name = |i: usize| l.element_name(i);
    let laws = match l.impl_table() {
        Err(e) => vec![LawResult::single("heyting prerequisite", false, || e.to_string())],
        Ok(table) => {
            let neg = |x: usize| table[x * n + l.bot_idx()] as usize;
            vec![sweep(exec, "stone identity", n, 1, |t| {
                let x = t[0];
                let (nx, cx) = (neg(x), neg(neg(x)));
                let j = l.join_idx(nx, cx);
                (j != l.top_idx()).then(|| {
                    format!(
                        "x={}: !x | cl(x) = {} | {} = {} != {}",
                        name(x),
                        name(nx),
                        name(cx),
                        name(j),
                        name(l.top_idx())
                    )
                })
            })]
        }
    };
    LawReport::new(l.name(), "stone", laws)
}
