//! Kleene's strong three-valued logic: formulas, worlds, valuation and
//! meaning semantics.

mod formula;
mod parse;
mod semantics;
mod truth;

pub use formula::Formula;
pub use parse::parse;
pub use semantics::{
    check_arity, classical_worlds, dnf_formula_for, entails, entails_classically, equivalent,
    equivalent_classically, eval, info_leq, meaning, meaning_by_scan, world_universe, worlds, MAX_ARITY,
};
pub use truth::{TruthValue, World};
