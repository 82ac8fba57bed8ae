//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series evaluator exceeded its term budget before meeting tolerance.
    #[error("series did not converge within {max_terms} terms: {context}")]
    NonConvergence { context: String, max_terms: usize },

    /// Parameters sit on (or numerically too close to) a pole of a formula.
    #[error("parameter pole: {0}")]
    Pole(String),

    /// Adaptive quadrature failed to reach the requested accuracy.
    #[error("quadrature failure: {0}")]
    Quadrature(String),

    /// The requested (model, target) pair has no tabulated reduction.
    #[error("unsupported special-case reduction: {model} -> {target}")]
    UnsupportedReduction { model: String, target: String },

    /// Parameter estimation failed for every restart.
    #[error("fit failed: {0}")]
    Fit(String),

    /// Malformed input that is not a numeric domain problem (bad spec
    /// string, empty sample set, inconsistent flags).
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
