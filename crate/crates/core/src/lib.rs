//! Finite contract algebras over Boolean algebras, augmented Stone algebras,
//! and the adjunction between them, with exhaustive law checking.
//!
//! The `parallel` feature (on by default) runs sweeps on the rayon pool;
//! see [`par::Exec`].

pub mod adjunction;
pub mod boolalg;
pub mod catalog;
pub mod cli;
pub mod contract;
pub mod error;
pub mod lattice;
pub mod par;
pub mod parser;
pub mod report;
pub mod stone;

pub use adjunction::{alpha, beta, check_bijection, check_fully_faithful, check_naturality, counit, unit};
pub use boolalg::{as_boolean, enumerate_bool_homs, free_boolean_algebra, powerset_algebra, BoolAlg, BoolHom};
pub use contract::{contract_on_hom, Contract, ContractAlgebra};
pub use error::{Error, Result};
pub use lattice::{build_lattice, Element, FiniteLattice};
pub use par::Exec;
pub use report::LawReport;
pub use stone::{check_aug_props, find_closure_element, AugStone, StoneHom};
