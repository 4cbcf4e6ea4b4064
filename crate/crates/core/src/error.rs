use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("universe mismatch: `{left}` vs `{right}`")]
    UniverseMismatch { left: String, right: String },

    #[error("atom index {index} outside universe of size {size}")]
    AtomOutOfRange { index: usize, size: usize },

    #[error("partial set is not disjoint: atom {atom} is both positive and negative")]
    NotDisjoint { atom: usize },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("variable p{index} exceeds arity {arity}")]
    VarOutOfRange { index: usize, arity: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("arity {arity} exceeds the enumeration cap of {cap}")]
    ArityCap { arity: usize, cap: usize },

    #[error("invalid world string `{0}` (expected letters T, N, F)")]
    BadWorld(String),

    #[error("world {0} is not classical")]
    NonClassicalWorld(String),

    #[error("formula `{0}` is not classical (contains n)")]
    NonClassicalFormula(String),

    #[error("invalid partial probability value ({x}, {y})")]
    InvalidValue { x: f64, y: f64 },

    #[error("non-finite number in {0}")]
    NonFinite(&'static str),

    #[error("invalid classical measure: {0}")]
    InvalidMeasure(String),

    #[error("field is not closed: {0}")]
    FieldNotClosed(String),

    #[error("duplicate formula `{0}` in belief assignment")]
    DuplicateFormula(String),

    #[error("formula `{0}` has no belief value")]
    MissingEntry(String),

    #[error("stake solver precondition failed: {0}")]
    Solver(SolverPrecondition),

    #[error("synthesis precondition failed: {0}")]
    Precondition(String),

    #[error("synthesized book failed verification: {0}")]
    Unverified(String),

    #[error("invalid input: {0}")]
    Input(String),
}

/// Which precondition of the stake solver failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SolverPrecondition {
    #[error("quotient not in T")]
    NotInT,
    #[error("(y, x) equals (z, w)")]
    EqualToSigma,
    #[error("x + z differs from y + w")]
    SumMismatch,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
