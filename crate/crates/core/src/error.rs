//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter tuple violates its documented constraints.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A vector or matrix has the wrong number of components.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// Two operands live in different ambients or have incompatible shapes.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A matrix required to have full row rank does not.
    #[error("matrix is rank deficient")]
    RankDeficient,

    /// A scalar required to be a unit is not.
    #[error("{0} is not a unit")]
    NonUnit(u64),

    /// The operation is not defined for these parameters.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The operation needs a nonzero code.
    #[error("operation undefined on the zero code")]
    ZeroCode,

    /// The formula requires an odd field order.
    #[error("field order {0} must be odd")]
    EvenFieldOrder(u64),

    /// An index lies outside its permitted range.
    #[error("index {index} outside {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    /// A closed form evaluated to a non-integer.
    #[error("non-integral value {numerator}/{denominator}")]
    NonIntegral { numerator: String, denominator: String },

    /// Exhaustive work would exceed the configured budget.
    #[error("budget exceeded: need {needed} work units, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    /// A code description could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
