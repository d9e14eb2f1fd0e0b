use std::sync::Arc;

use contralg::adjunction::{alpha, beta, brute_force_stone_homs, DEFAULT_BUDGET};
use contralg::boolalg::{enumerate_bool_homs, BoolHom};
use contralg::catalog::{boolean, contract, stone_catalog};
use contralg::contract::{contract_on_hom, Contract};
use contralg::lattice::{check_heyting_with, check_lattice_laws_with, check_stone_with};
use contralg::stone::{check_aug_props_with, check_stone_hom};
use contralg::Exec;
use proptest::prelude::*;

fn contract_strategy(k: usize) -> impl Strategy<Value = Contract> {
    let full = (1u32 << k) - 1;
    (0..=full, 0..=full).prop_map(move |(a, g)| Contract { a, g: g | (full & !a) })
}

proptest! {
    #[test]
    fn contract_identities_on_raw_masks(x in contract_strategy(3), y in contract_strategy(3)) {
        let b = boolean(3);
        let top = Contract::top(&b);
        // stone identity and augmentation
        prop_assert_eq!(x.neg(&b).join(x.cl(&b)), top);
        prop_assert_eq!(Contract::closure_element(&b).implies(x, &b), x.cl(&b));
        // closed forms of negation and closure
        prop_assert_eq!(x.neg(&b), Contract { a: x.g, g: b.neg(x.g) });
        prop_assert_eq!(x.cl(&b), Contract { a: b.neg(x.g), g: x.g });
        // modus ponens
        let mp = x.meet(x.implies(y, &b));
        prop_assert_eq!(mp.meet(y), mp);
    }

    #[test]
    fn contract_functor_preserves_operations(seed in 0usize..64) {
        let src = contract(2).unwrap();
        let dst = contract(3).unwrap();
        let homs: Vec<BoolHom> = enumerate_bool_homs(src.base(), dst.base()).collect();
        let f = &homs[seed % homs.len()];
        let h = contract_on_hom(f, &src, &dst).unwrap();
        prop_assert!(check_stone_hom(&h).passed());
    }
}

#[test]
fn alpha_beta_round_trip_against_brute_force() {
    let cb = contract(2).unwrap();
    for s in stone_catalog(9).unwrap() {
        let found = brute_force_stone_homs(cb.stone(), &s.stone, 9u64.pow(9), Exec::default()).unwrap();
        let cl_s = s.stone.skeleton().alg.clone();
        let bool_homs: Vec<_> = enumerate_bool_homs(cb.base(), &cl_s).collect();
        assert_eq!(found.len(), bool_homs.len(), "{}", s.stone.name());
        for f in &bool_homs {
            let fs = alpha(f, &cb, &s.stone).unwrap();
            assert!(
                found.iter().any(|h| h.map == fs.map),
                "{}: alpha image not found by brute force",
                s.stone.name()
            );
            assert_eq!(beta(&fs, &cb).unwrap().map, f.map);
        }
    }
}

#[test]
fn sequential_and_parallel_reports_agree() {
    for s in stone_catalog(usize::MAX).unwrap() {
        let l = s.stone.lattice();
        for (a, b) in [
            (
                check_lattice_laws_with(l, Exec::Sequential),
                check_lattice_laws_with(l, Exec::Parallel),
            ),
            (
                check_heyting_with(l, Exec::Sequential),
                check_heyting_with(l, Exec::Parallel),
            ),
            (
                check_stone_with(l, Exec::Sequential),
                check_stone_with(l, Exec::Parallel),
            ),
            (
                check_aug_props_with(&s.stone, Exec::Sequential),
                check_aug_props_with(&s.stone, Exec::Parallel),
            ),
        ] {
            assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        }
    }
    let c = contract(1).unwrap();
    let target = Arc::clone(contract(2).unwrap().stone());
    let seq = brute_force_stone_homs(c.stone(), &target, DEFAULT_BUDGET, Exec::Sequential).unwrap();
    let par = brute_force_stone_homs(c.stone(), &target, DEFAULT_BUDGET, Exec::Parallel).unwrap();
    assert!(seq.iter().map(|h| &h.map).eq(par.iter().map(|h| &h.map)));
}
