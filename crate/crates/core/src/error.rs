use thiserror::Error;

/// Errors raised by the library. Each variant maps to a distinct CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{what} too large: {size} exceeds the limit {limit}")]
    GuardExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("insufficient precision: {0}")]
    Precision(String),

    /// Inputs that cannot come from any Lefschetz fibration.
    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("degree is not an integer: {0}")]
    NonIntegralDegree(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
