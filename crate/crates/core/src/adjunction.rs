//! The hom-set bijection between `Hom(B, Cl(S))` and `Hom(C(B), S)`.
//!
//! `alpha` sends a Boolean homomorphism `f` to `(a, g) |-> f(g) & (f(a) -> e)`
//! and `beta` sends a Stone homomorphism `f*` to `b |-> f*(!b, b)`. Unit and
//! counit are derived from them. Every claim is checked against an
//! independent brute-force search over all total functions.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::boolalg::{check_bool_hom, enumerate_bool_homs, BoolAlg, BoolHom};
use crate::contract::{contract_on_hom, ContractAlgebra};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::par::Exec;
use crate::stone::{check_stone_hom, cl_on_hom, AugStone, StoneHom};

/// Default cap on `|target|^|source|` for brute-force searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// `f* = alpha(f)`, computed in `s`.
pub fn alpha(f: &BoolHom, cb: &ContractAlgebra, s: &Arc<AugStone>) -> Result<StoneHom> {
    let skel = s.skeleton();
    if *f.source != **cb.base() {
        return Err(Error::TargetMismatch(format!(
            "{} is not the base of {}",
            f.source.name(),
            cb.stone().name()
        )));
    }
    if *f.target != *skel.alg {
        return Err(Error::TargetMismatch(format!(
            "{} is not the skeleton of {}",
            f.target.name(),
            s.name()
        )));
    }
    let e = s.e();
    let map = cb
        .pairs()
        .iter()
        .map(|c| {
            let fa = skel.embed[f.apply(c.a) as usize];
            let fg = skel.embed[f.apply(c.g) as usize];
            s.meet(fg, s.implies(fa, e)) as u32
        })
        .collect();
    Ok(StoneHom {
        source: cb.stone().clone(),
        target: s.clone(),
        map,
    })
}

/// `f = beta(f*) = f* . Delta`, landing in the skeleton of the target.
pub fn beta(fstar: &StoneHom, cb: &ContractAlgebra) -> Result<BoolHom> {
    if !fstar.source.same_as(cb.stone()) {
        return Err(Error::TargetMismatch(format!(
            "{} is not {}",
            fstar.source.name(),
            cb.stone().name()
        )));
    }
    let skel = fstar.target.skeleton();
    let map = (0..cb.base().size() as u32)
        .map(|b| {
            let y = fstar.apply(cb.delta(b));
            skel.mask_of[y].ok_or_else(|| Error::NotClosedImage(fstar.target.element_name(y).to_string()))
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(BoolHom {
        source: cb.base().clone(),
        target: skel.alg.clone(),
        map,
    })
}

/// `beta(id)`, i.e. `Delta : B -> Cl(C(B))`.
pub fn unit(cb: &ContractAlgebra) -> Result<BoolHom> {
    beta(&StoneHom::identity(cb.stone()), cb)
}

/// `alpha(id)`: `C(Cl(S)) -> S`, `(a, g) |-> g & (a -> e)`. Returns the
/// constructed `C(Cl(S))` alongside.
pub fn counit(s: &Arc<AugStone>) -> Result<(ContractAlgebra, StoneHom)> {
    let cs = ContractAlgebra::new(s.skeleton().alg.clone())?;
    let hom = alpha(&BoolHom::identity(&s.skeleton().alg), &cs, s)?;
    Ok((cs, hom))
}

/// `counit_{C(B)} . C(unit_B) = id`.
pub fn check_triangle_contract(cb: &ContractAlgebra) -> Result<bool> {
    let u = unit(cb)?;
    let c_cl = ContractAlgebra::new(u.target.clone())?;
    let cu = contract_on_hom(&u, cb, &c_cl)?;
    let eps = alpha(&BoolHom::identity(&u.target), &c_cl, cb.stone())?;
    Ok(cu.then(&eps)? == StoneHom::identity(cb.stone()))
}

/// `Cl(counit_S) . unit_{Cl(S)} = id`.
pub fn check_triangle_closure(s: &Arc<AugStone>) -> Result<bool> {
    let (cs, eps) = counit(s)?;
    let u = unit(&cs)?;
    let composite = u.then(&cl_on_hom(&eps)?)?;
    Ok(composite == BoolHom::identity(&s.skeleton().alg))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Signature {
    /// `&`, `|`, `!`, 0, 1.
    Boolean,
    /// `&`, `|`, `->`, 0, 1, e.
    AugmentedStone,
}

/// A carrier for the brute-force search. For Boolean algebras `e` is the top.
#[derive(Clone, Copy, Debug)]
pub struct Structure<'a> {
    pub lattice: &'a FiniteLattice,
    pub e: usize,
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Meet,
    Join,
    Implies,
}

#[derive(Clone, Copy, Debug)]
enum Constraint {
    /// `f(x) = c`.
    Const(usize, usize),
    /// `f(r) = op(f(x), f(y))`.
    Binary(Op, usize, usize, usize),
    /// `f(r) = !f(x)`.
    Neg(usize, usize),
}

fn eval(s: &FiniteLattice, op: Op, x: usize, y: usize) -> usize {
    match op {
        Op::Meet => s.meet_idx(x, y),
        Op::Join => s.join_idx(x, y),
        Op::Implies => s.implies_idx(x, y).expect("Heyting checked before search"),
    }
}

/// `|target|^|source|`, saturating.
pub fn function_count(source: usize, target: usize) -> u128 {
    (target as u128).checked_pow(source as u32).unwrap_or(u128::MAX)
}

fn bound_text(bound: u128) -> String {
    if bound == u128::MAX {
        "over 2^127".to_string()
    } else {
        bound.to_string()
    }
}

/// All total functions `source -> target` preserving `sig`, as image arrays
/// in lexicographic order.
///
/// Every function is considered; the search assigns images element by
/// element and abandons a branch as soon as some fully-assigned instance of
/// an operation is violated.
pub fn brute_force_homs(
    source: Structure<'_>,
    target: Structure<'_>,
    sig: Signature,
    budget: u64,
    exec: Exec,
) -> Result<Vec<Vec<u32>>> {
    let (src, dst) = (source.lattice, target.lattice);
    let (n, m) = (src.len(), dst.len());
    let bound = function_count(n, m);
    if bound > u128::from(budget) {
        return Err(Error::SearchTooLarge { bound, budget });
    }
    src.impl_table()?;
    dst.impl_table()?;

    let mut constraints: Vec<Vec<Constraint>> = vec![Vec::new(); n];
    let mut consts = vec![(src.bot_idx(), dst.bot_idx()), (src.top_idx(), dst.top_idx())];
    let mut ops = vec![Op::Meet, Op::Join];
    match sig {
        Signature::Boolean => {}
        Signature::AugmentedStone => {
            consts.push((source.e, target.e));
            ops.push(Op::Implies);
        }
    }
    for (x, c) in consts {
        constraints[x].push(Constraint::Const(x, c));
    }
    for x in 0..n {
        for y in 0..n {
            for &op in &ops {
                let r = eval(src, op, x, y);
                constraints[x.max(y).max(r)].push(Constraint::Binary(op, x, y, r));
            }
        }
        if sig == Signature::Boolean {
            let r = src.neg_idx(x)?;
            constraints[x.max(r)].push(Constraint::Neg(x, r));
        }
    }

    let holds = |assign: &[u32], c: &Constraint| -> bool {
        let f = |i: usize| assign[i] as usize;
        match *c {
            Constraint::Const(x, v) => f(x) == v,
            Constraint::Binary(op, x, y, r) => f(r) == eval(dst, op, f(x), f(y)),
            Constraint::Neg(x, r) => Some(f(r)) == dst.neg_idx(f(x)).ok(),
        }
    };

    fn search(
        i: usize,
        assign: &mut Vec<u32>,
        m: usize,
        constraints: &[Vec<Constraint>],
        holds: &dyn Fn(&[u32], &Constraint) -> bool,
        out: &mut Vec<Vec<u32>>,
    ) {
        if i == assign.len() {
            out.push(assign.clone());
            return;
        }
        for v in 0..m as u32 {
            assign[i] = v;
            if constraints[i].iter().all(|c| holds(assign, c)) {
                search(i + 1, assign, m, constraints, holds, out);
            }
        }
    }

    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let branches = exec.map_range(m, |v| {
        let mut assign = vec![0u32; n];
        assign[0] = v as u32;
        let mut out = Vec::new();
        if constraints[0].iter().all(|c| holds(&assign, c)) {
            search(1, &mut assign, m, &constraints, &holds, &mut out);
        }
        out
    });
    Ok(branches.concat())
}

pub fn brute_force_stone_homs(
    source: &Arc<AugStone>,
    target: &Arc<AugStone>,
    budget: u64,
    exec: Exec,
) -> Result<Vec<StoneHom>> {
    let maps = brute_force_homs(
        Structure {
            lattice: source.lattice(),
            e: source.e(),
        },
        Structure {
            lattice: target.lattice(),
            e: target.e(),
        },
        Signature::AugmentedStone,
        budget,
        exec,
    )?;
    Ok(maps
        .into_iter()
        .map(|map| StoneHom {
            source: source.clone(),
            target: target.clone(),
            map,
        })
        .collect())
}

/// Brute force over the lattice views; image arrays are indexed by mask
/// because the views list elements in mask order.
pub fn brute_force_bool_homs(
    source: &Arc<BoolAlg>,
    target: &Arc<BoolAlg>,
    budget: u64,
    exec: Exec,
) -> Result<Vec<BoolHom>> {
    let (ls, lt) = (source.lattice()?, target.lattice()?);
    let maps = brute_force_homs(
        Structure {
            lattice: &ls,
            e: ls.top_idx(),
        },
        Structure {
            lattice: &lt,
            e: lt.top_idx(),
        },
        Signature::Boolean,
        budget,
        exec,
    )?;
    Ok(maps
        .into_iter()
        .map(|map| BoolHom {
            source: source.clone(),
            target: target.clone(),
            map,
        })
        .collect())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub boolean: String,
    pub stone: String,
    pub bool_homs: usize,
    pub stone_homs: usize,
    pub brute_bool_homs: Option<usize>,
    pub brute_stone_homs: Option<usize>,
    pub all_homs_valid: bool,
    pub beta_after_alpha_is_identity: bool,
    pub alpha_after_beta_is_identity: bool,
    pub enumeration_matches_brute_force: Option<bool>,
    pub alpha_image_matches_brute_force: Option<bool>,
    pub budget_hits: Vec<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.all_homs_valid
            && self.bool_homs == self.stone_homs
            && self.beta_after_alpha_is_identity
            && self.alpha_after_beta_is_identity
            && self.enumeration_matches_brute_force != Some(false)
            && self.alpha_image_matches_brute_force != Some(false)
    }
}

/// Both hom sets with the bijection between them.
#[derive(Clone, Debug)]
pub struct HomSetWitness {
    pub boolean: Arc<BoolAlg>,
    pub stone: Arc<AugStone>,
    pub bool_homs: Vec<BoolHom>,
    pub stone_homs: Vec<StoneHom>,
    /// `stone_homs[pairing[i]] = alpha(bool_homs[i])`.
    pub pairing: Vec<usize>,
    pub report: BijectionReport,
}

fn same_set<T: Clone + Eq + std::hash::Hash>(a: &[T], b: &[T]) -> bool {
    let (sa, sb): (HashSet<T>, HashSet<T>) = (a.iter().cloned().collect(), b.iter().cloned().collect());
    a.len() == b.len() && sa == sb
}

/// Verify that `alpha` and `beta` are mutually inverse on the full hom sets,
/// comparing against brute force wherever the budget allows.
pub fn check_bijection(b: &Arc<BoolAlg>, s: &Arc<AugStone>, budget: u64, exec: Exec) -> Result<HomSetWitness> {
    let cb = ContractAlgebra::new(b.clone())?;
    let cl_s = s.skeleton().alg.clone();
    let mut report = BijectionReport {
        boolean: b.name().into(),
        stone: s.name().into(),
        ..Default::default()
    };

    let bool_homs: Vec<BoolHom> = enumerate_bool_homs(b, &cl_s).collect();
    let images = exec
        .map_slice(&bool_homs, |f| alpha(f, &cb, s))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    match brute_force_bool_homs(b, &cl_s, budget, exec) {
        Ok(brute) => {
            report.brute_bool_homs = Some(brute.len());
            report.enumeration_matches_brute_force = Some(same_set(
                &brute.iter().map(|h| h.map.clone()).collect::<Vec<_>>(),
                &bool_homs.iter().map(|h| h.map.clone()).collect::<Vec<_>>(),
            ));
        }
        Err(Error::SearchTooLarge { bound, .. }) => report.budget_hits.push(format!(
            "Hom({}, {}): {} functions",
            b.name(),
            cl_s.name(),
            bound_text(bound)
        )),
        Err(Error::TooLarge { .. }) => {
            report
                .budget_hits
                .push(format!("Hom({}, {}): lattice view too large", b.name(), cl_s.name()))
        }
        Err(e) => return Err(e),
    }
    let stone_homs = match brute_force_stone_homs(cb.stone(), s, budget, exec) {
        Ok(brute) => {
            report.brute_stone_homs = Some(brute.len());
            report.alpha_image_matches_brute_force = Some(same_set(
                &brute.iter().map(|h| h.map.clone()).collect::<Vec<_>>(),
                &images.iter().map(|h| h.map.clone()).collect::<Vec<_>>(),
            ));
            brute
        }
        Err(Error::SearchTooLarge { bound, .. }) => {
            report.budget_hits.push(format!(
                "Hom({}, {}): {} functions",
                cb.stone().name(),
                s.name(),
                bound_text(bound)
            ));
            images.clone()
        }
        Err(e) => return Err(e),
    };

    report.bool_homs = bool_homs.len();
    report.stone_homs = stone_homs.len();
    let bool_ok = exec
        .map_slice(&bool_homs, |f| check_bool_hom(f).passed())
        .into_iter()
        .all(|x| x);
    let stone_ok = exec
        .map_slice(&stone_homs, |h| check_stone_hom(h).passed())
        .into_iter()
        .chain(exec.map_slice(&images, |h| check_stone_hom(h).passed()))
        .all(|x| x);
    report.all_homs_valid = bool_ok && stone_ok;
    report.beta_after_alpha_is_identity = bool_homs
        .iter()
        .zip(&images)
        .map(|(f, fs)| beta(fs, &cb).map(|back| back == *f))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|x| x);
    report.alpha_after_beta_is_identity = exec
        .map_slice(&stone_homs, |fs| {
            beta(fs, &cb).and_then(|f| alpha(&f, &cb, s)).map(|back| back == *fs)
        })
        .into_iter()
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|x| x);

    let pairing = images
        .iter()
        .map(|img| stone_homs.iter().position(|h| h.map == img.map).unwrap_or(usize::MAX))
        .collect::<Vec<_>>();
    if pairing.contains(&usize::MAX) {
        report.alpha_image_matches_brute_force = Some(false);
    }
    Ok(HomSetWitness {
        boolean: b.clone(),
        stone: s.clone(),
        bool_homs,
        stone_homs,
        pairing,
        report,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FullyFaithfulReport {
    pub source: String,
    pub target: String,
    pub bool_homs: usize,
    pub stone_homs: usize,
    pub brute_stone_homs: Option<usize>,
    pub injective: bool,
    pub surjective: bool,
    pub budget_hits: Vec<String>,
}

impl FullyFaithfulReport {
    pub fn passed(&self) -> bool {
        self.injective && self.surjective && self.bool_homs == self.stone_homs
    }
}

/// `f |-> C(f)` is a bijection `Hom(B, B2) -> Hom(C(B), C(B2))`.
pub fn check_fully_faithful(
    b: &Arc<BoolAlg>,
    b2: &Arc<BoolAlg>,
    budget: u64,
    exec: Exec,
) -> Result<FullyFaithfulReport> {
    let (cb, cb2) = (ContractAlgebra::new(b.clone())?, ContractAlgebra::new(b2.clone())?);
    let mut report = FullyFaithfulReport {
        source: b.name().into(),
        target: b2.name().into(),
        ..Default::default()
    };
    let bool_homs: Vec<BoolHom> = enumerate_bool_homs(b, b2).collect();
    let images: Vec<Vec<u32>> = bool_homs
        .iter()
        .map(|f| contract_on_hom(f, &cb, &cb2).map(|h| h.map))
        .collect::<Result<_>>()?;
    report.bool_homs = bool_homs.len();
    report.injective = images.iter().collect::<HashSet<_>>().len() == images.len();

    let skel = cb2.stone().skeleton().alg.clone();
    let via_alpha: Vec<Vec<u32>> = enumerate_bool_homs(b, &skel)
        .map(|f| alpha(&f, &cb, cb2.stone()).map(|h| h.map))
        .collect::<Result<_>>()?;
    let mut stone_set = via_alpha;
    match brute_force_stone_homs(cb.stone(), cb2.stone(), budget, exec) {
        Ok(brute) => {
            let brute: Vec<Vec<u32>> = brute.into_iter().map(|h| h.map).collect();
            report.brute_stone_homs = Some(brute.len());
            if !same_set(&brute, &stone_set) {
                // the oracle is authoritative
                stone_set = brute;
            }
        }
        Err(Error::SearchTooLarge { bound, .. }) => report.budget_hits.push(format!(
            "Hom({}, {}): {} functions",
            cb.stone().name(),
            cb2.stone().name(),
            bound_text(bound)
        )),
        Err(e) => return Err(e),
    }
    report.stone_homs = stone_set.len();
    report.surjective = same_set(&images, &stone_set);
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NaturalityReport {
    pub squares: u64,
    pub points: u64,
    pub counterexamples: u64,
    pub witnesses: Vec<String>,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.counterexamples == 0
    }

    fn absorb(&mut self, other: NaturalityReport) {
        self.squares += other.squares;
        self.points += other.points;
        self.counterexamples += other.counterexamples;
        for w in other.witnesses {
            if self.witnesses.len() < crate::report::WITNESS_CAP {
                self.witnesses.push(w);
            }
        }
    }
}

/// Both naturality squares for `rho : B' -> B` and `sigma : S -> S'`, over
/// every `f` in `Hom(B, Cl(S))` and every `f*` in `Hom(C(B), S)`.
///
/// `c_src` is `C(B')` and `c_dst` is `C(B)`. The Stone hom set is produced
/// as the image of `alpha`, which [`check_bijection`] pins to brute force.
pub fn check_naturality(
    rho: &BoolHom,
    sigma: &StoneHom,
    c_src: &ContractAlgebra,
    c_dst: &ContractAlgebra,
) -> Result<NaturalityReport> {
    let pairs = hom_pairs(c_dst, &sigma.source)?;
    naturality_with(rho, sigma, c_src, c_dst, &pairs)
}

fn hom_pairs(cb: &ContractAlgebra, s: &Arc<AugStone>) -> Result<Vec<(BoolHom, StoneHom)>> {
    enumerate_bool_homs(cb.base(), &s.skeleton().alg)
        .map(|f| alpha(&f, cb, s).map(|fs| (f, fs)))
        .collect()
}

fn naturality_with(
    rho: &BoolHom,
    sigma: &StoneHom,
    c_src: &ContractAlgebra,
    c_dst: &ContractAlgebra,
    pairs: &[(BoolHom, StoneHom)],
) -> Result<NaturalityReport> {
    let s_prime = &sigma.target;
    let cl_sigma = cl_on_hom(sigma)?;
    let c_rho = contract_on_hom(rho, c_src, c_dst)?;
    let mut report = NaturalityReport::default();
    let label = || {
        format!(
            "rho: {} -> {}, sigma: {} -> {}",
            rho.source.name(),
            rho.target.name(),
            sigma.source.name(),
            sigma.target.name()
        )
    };

    for (f, _) in pairs {
        let lhs = alpha(&rho.then(f)?.then(&cl_sigma)?, c_src, s_prime)?;
        let rhs = c_rho.then(&alpha(f, c_dst, &sigma.source)?)?.then(sigma)?;
        report.squares += 1;
        report.points += lhs.map.len() as u64;
        if let Some(p) = (0..lhs.map.len()).find(|&p| lhs.map[p] != rhs.map[p]) {
            report.counterexamples += 1;
            if report.witnesses.len() < crate::report::WITNESS_CAP {
                report.witnesses.push(format!(
                    "alpha square, {}, f={:?}, at {}",
                    label(),
                    f.map,
                    c_src.stone().element_name(p)
                ));
            }
        }
    }
    for (_, fstar) in pairs {
        let lhs = beta(&c_rho.then(fstar)?.then(sigma)?, c_src)?;
        let rhs = rho.then(&beta(fstar, c_dst)?)?.then(&cl_sigma)?;
        report.squares += 1;
        report.points += lhs.map.len() as u64;
        if let Some(p) = (0..lhs.map.len()).find(|&p| lhs.map[p] != rhs.map[p]) {
            report.counterexamples += 1;
            if report.witnesses.len() < crate::report::WITNESS_CAP {
                report.witnesses.push(format!(
                    "beta square, {}, f*={:?}, at {}",
                    label(),
                    fstar.map,
                    c_src.base().element_name(p as u32)
                ));
            }
        }
    }
    Ok(report)
}

/// A Stone algebra in a sweep, remembering whether it was built as `C(B)`.
#[derive(Clone, Debug)]
pub struct StoneObject {
    pub stone: Arc<AugStone>,
    pub contract: Option<Arc<ContractAlgebra>>,
}

impl StoneObject {
    pub fn plain(stone: Arc<AugStone>) -> Self {
        StoneObject { stone, contract: None }
    }

    pub fn contract(cb: Arc<ContractAlgebra>) -> Self {
        StoneObject {
            stone: cb.stone().clone(),
            contract: Some(cb),
        }
    }
}

/// Stone homomorphisms `s -> t`: through `alpha` when `s` is a contract
/// algebra, otherwise by brute force.
pub fn stone_homs_between(s: &StoneObject, t: &Arc<AugStone>, budget: u64, exec: Exec) -> Result<Vec<StoneHom>> {
    match &s.contract {
        Some(cb) => hom_pairs(cb, t).map(|v| v.into_iter().map(|(_, fs)| fs).collect()),
        None => brute_force_stone_homs(&s.stone, t, budget, exec),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub algebra_pairs: u64,
    pub morphism_pairs: u64,
    pub naturality: NaturalityReport,
    pub budget_hits: Vec<String>,
    pub elapsed_ms: u128,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.naturality.passed()
    }
}

/// Naturality for every `rho : B' -> B` and `sigma : S -> S'` drawn from the
/// enumerated hom sets among the given algebras.
pub fn naturality_sweep(
    bools: &[Arc<BoolAlg>],
    stones: &[StoneObject],
    budget: u64,
    exec: Exec,
) -> Result<SweepReport> {
    let start = Instant::now();
    let contracts: Vec<ContractAlgebra> = bools
        .iter()
        .map(|b| ContractAlgebra::new(b.clone()))
        .collect::<Result<_>>()?;
    let mut report = SweepReport::default();

    let mut sigma_sets: Vec<Vec<Option<Vec<StoneHom>>>> = Vec::new();
    for s in stones {
        let mut row = Vec::new();
        for t in stones {
            match stone_homs_between(s, &t.stone, budget, exec) {
                Ok(v) => row.push(Some(v)),
                Err(Error::SearchTooLarge { bound, .. }) => {
                    report.budget_hits.push(format!(
                        "Hom({}, {}): {} functions",
                        s.stone.name(),
                        t.stone.name(),
                        bound_text(bound)
                    ));
                    row.push(None);
                }
                Err(e) => return Err(e),
            }
        }
        sigma_sets.push(row);
    }
    // Hom(B, Cl(S)) with alpha images, per (B, S).
    let pairs: Vec<Vec<Vec<(BoolHom, StoneHom)>>> = contracts
        .iter()
        .map(|cb| {
            stones
                .iter()
                .map(|s| hom_pairs(cb, &s.stone))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut tasks = Vec::new();
    for bp in 0..bools.len() {
        for b in 0..bools.len() {
            for (s, row) in sigma_sets.iter().enumerate() {
                for (sp, set) in row.iter().enumerate() {
                    if set.is_some() {
                        tasks.push((bp, b, s, sp));
                    }
                }
            }
        }
    }
    report.algebra_pairs = tasks.len() as u64;
    let results = exec.map_slice(&tasks, |&(bp, b, s, sp)| -> Result<(u64, NaturalityReport)> {
        let rhos: Vec<BoolHom> = enumerate_bool_homs(&bools[bp], &bools[b]).collect();
        let sigmas = sigma_sets[s][sp].as_ref().expect("filtered");
        let mut acc = NaturalityReport::default();
        let mut count = 0;
        for rho in &rhos {
            for sigma in sigmas {
                count += 1;
                acc.absorb(naturality_with(
                    rho,
                    sigma,
                    &contracts[bp],
                    &contracts[b],
                    &pairs[b][s],
                )?);
            }
        }
        Ok((count, acc))
    });
    for r in results {
        let (count, nat) = r?;
        report.morphism_pairs += count;
        report.naturality.absorb(nat);
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    pub boolean: String,
    pub stone: String,
    pub bijection: BijectionReport,
    pub triangle_contract: bool,
    pub triangle_closure: bool,
    pub naturality: Option<SweepReport>,
    pub budget_hits: Vec<String>,
    pub elapsed_ms: u128,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.bijection.passed()
            && self.triangle_contract
            && self.triangle_closure
            && self.naturality.as_ref().is_none_or(SweepReport::passed)
    }
}

/// Bijection, both triangle identities, and naturality over the
/// endomorphisms of `b` and `s`.
pub fn adjunction_report(b: &Arc<BoolAlg>, s: &StoneObject, budget: u64, exec: Exec) -> Result<AdjunctionReport> {
    let start = Instant::now();
    let witness = check_bijection(b, &s.stone, budget, exec)?;
    let cb = ContractAlgebra::new(b.clone())?;
    let triangle_contract = check_triangle_contract(&cb)?;
    let triangle_closure = check_triangle_closure(&s.stone)?;
    let mut budget_hits = witness.report.budget_hits.clone();
    let naturality = match naturality_sweep(std::slice::from_ref(b), std::slice::from_ref(s), budget, exec) {
        Ok(r) if r.algebra_pairs == 0 => {
            budget_hits.extend(r.budget_hits);
            None
        }
        Ok(r) => Some(r),
        Err(e) => return Err(e),
    };
    Ok(AdjunctionReport {
        boolean: b.name().into(),
        stone: s.stone.name().into(),
        bijection: witness.report,
        triangle_contract,
        triangle_closure,
        naturality,
        budget_hits,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
