use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("cannot mix radicands sqrt({0}) and sqrt({1})")]
    RadicandMismatch(u64, u64),

    #[error("radicand {0} is outside the supported range")]
    RadicandTooLarge(String),

    #[error("square root of a negative number: {0}")]
    NegativeRadicand(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not doubly stochastic")]
    NotDoublyStochastic,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is reducible")]
    Reducible,

    #[error("blocks do not commute")]
    NotCommuting,

    #[error("dimension {n} exceeds the budget of {limit}")]
    OverBudget { n: usize, limit: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("similarity undecided: {0}")]
    SimilarityUndecided(String),

    #[error("graph is not regular")]
    NotRegular,

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal verification failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
