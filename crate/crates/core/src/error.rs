//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands live over different variable sets or truncations.
    #[error("variable set / truncation mismatch: {0}")]
    Structural(String),

    /// Series inversion requested for a series whose constant term is not +-1.
    #[error("series not invertible: {0}")]
    NonInvertible(String),

    /// An unbounded product or enumeration cannot stabilize under the
    /// requested truncation.
    #[error("divergent configuration: {0}")]
    Divergence(String),

    /// Input violates a domain precondition (gap condition, part bound, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Bad or incomplete parameters for an identity instance.
    #[error("invalid parameters: {0}")]
    Params(String),
}

pub type Result<T> = std::result::Result<T, Error>;
