//! Partial (three-valued) subjective probability.
//!
//! The crate covers the partial-set algebra, Kleene semantics over `Kⁿ`,
//! partial probability values and measures, partial bets with payoffs in
//! R², exhaustive (weak) Dutch Book detection, and constructive synthesis of
//! Dutch Books against belief assignments that break the partial
//! probability axioms.

pub mod betting;
pub mod bitset;
pub mod error;
pub mod gen;
pub mod kleene;
pub mod partial_set;
pub mod probability;
pub mod synth;
pub mod value;
pub mod verify;

pub use error::{Error, Result};
