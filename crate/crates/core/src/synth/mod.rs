//! Dutch Book synthesis against incoherent beliefs.
//!
//! Each construction places bets at the agent's own rates and is re-checked
//! by exhaustive detection before a [`Certificate`] is returned.

pub mod certificate;
pub mod classical;
pub mod partial;
pub mod solver;

pub use certificate::{Certificate, Descriptor, Observed, Payoff, PayoffClass, PayoffTable};
pub use classical::{
    check_classical_beliefs, synth_classical, ClassicalBeliefs, ClassicalKind, ClassicalViolation,
};
pub use partial::{
    synth_axiom1, synth_axiom2, synth_axiom3, synth_axiom4, synth_equivalence, synthesize_all,
    SynthesisReport, Unsynthesized,
};
pub use solver::{stake_solver, StakeQuadruple};
