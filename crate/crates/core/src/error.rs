//! Error type shared by the numerical and arithmetic layers.

use thiserror::Error;

/// Failure modes of the evaluation operations.
///
/// The variants map onto the distinct caller reactions: a domain or range
/// error means the input itself is bad, a regime error means the caller
/// picked the wrong evaluation method for the region, a conditioning error
/// means the point is evaluable in principle but was refused because the
/// result would be numerically meaningless.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MathError {
    /// Input lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An overflow guard tripped before evaluation could proceed.
    #[error("range error: {0}")]
    Range(String),

    /// Gamma pole at a non-positive integer, carrying that integer.
    #[error("gamma pole at z = {n}")]
    GammaPole { n: i64 },

    /// The zeta function is not defined at this point (s = 0 or s = 1).
    #[error("zeta is not defined at s = {re}{im:+}i")]
    Undefined { re: f64, im: f64 },

    /// The requested evaluation method is not valid in this region.
    #[error("regime error: {0}")]
    Regime(String),

    /// Evaluation near an ill-conditioned point was refused.
    #[error("conditioning error: {0}")]
    Conditioning(String),
}

pub type Result<T> = std::result::Result<T, MathError>;
