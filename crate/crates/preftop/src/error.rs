//! Error type shared by every module of the crate.

/// Errors surfaced by the fallible operations of this crate.
///
/// Pure mathematical maps (representation, opposites, closures) are total
/// and never fail; errors arise from contract violations at the API
/// boundary: mismatched dimensions, sizes beyond the configured caps,
/// preconditions on constructions, and out-of-scope requests.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("size {requested} exceeds cap {cap}")]
    SizeCap { requested: usize, cap: usize },

    #[error("monotone map table does not cover value {0}")]
    UncoveredValue(f64),

    #[error("interval for alternative {0} is empty")]
    EmptyInterval(usize),

    #[error("index {index} out of range for ground set of size {n}")]
    OutOfRange { index: usize, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("out of scope: {0}")]
    Scope(String),

    #[error("invalid domain value: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
