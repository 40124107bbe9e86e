//! Error type shared by every algebra, series and solver operation.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DendError {
    /// `1 ≺ 1` and `1 ≻ 1` are undefined in the augmented algebra; raised
    /// whenever both operands of a half-product carry a unit component.
    #[error("unit product 1≺1 / 1≻1 is undefined")]
    UnitProductUndefined,

    /// The λ⁰ coefficient of a series does not match what the operation
    /// requires (exp needs 0, log/inverse need exactly the unit).
    #[error("bad constant term: {0}")]
    BadConstantTerm(&'static str),

    /// Series combined with different truncation orders.
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    /// An element does not belong to the carrier an operation expects
    /// (wrong matrix size, wrong sequence length, nonzero constant term
    /// in a q-summation polynomial, ...).
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    /// Leading/constant data violates a solver precondition
    /// (e.g. division by a polynomial with zero constant term).
    #[error("zero leading coefficient: {0}")]
    ZeroLeadingCoefficient(&'static str),

    /// A closed form requested on a model that cannot support it.
    #[error("operation requires a commutative model with nonzero weight")]
    NonCommutativeModel,

    /// Equation shape outside the supported degrees, or malformed
    /// coefficient table.
    #[error("unsupported or malformed equation: {0}")]
    ShapeError(String),

    /// A built-in cross-check disagreed with the closed form.
    #[error("internal verification failed at λ-order {order}: {check}")]
    VerificationFailure { order: usize, check: String },

    /// Malformed textual input (element, tree, polynomial, rational).
    #[error("parse error: {0}")]
    ParseError(String),
}

pub type Result<T> = std::result::Result<T, DendError>;
