//! Partial probability: measures on partial fields, belief assignments over
//! Kleene formulas, and the axiom checkers for both.

pub(crate) mod axioms;
mod belief;
mod measure;

pub use crate::value::{pv_leq, sigma, PartialValue, RPair};
pub use axioms::{
    check_belief_axioms, check_derived_properties, AxiomReport, Unchecked, Violation, ViolationKind,
};
pub use belief::{induced_beliefs, BeliefAssignment, BeliefEntry, BeliefFile};
pub use measure::{
    check_measure_axioms, measure_from_classical, AssociatedMeasure, ClassicalMeasure, MeasureViolation,
};
