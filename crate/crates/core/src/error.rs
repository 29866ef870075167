use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A terminating series was requested with a numerator parameter that is
    /// not a nonpositive integer.
    #[error("unsupported series: {0}")]
    Unsupported(String),

    /// A denominator Pochhammer symbol vanishes before the series terminates.
    #[error("pole: (c)_{index} vanishes for c = {c}")]
    Pole { c: String, index: u64 },

    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error("quadrature did not converge: estimated error {error:e} after {evaluations} evaluations")]
    Convergence { error: f64, evaluations: usize },

    /// A hard-coded certificate disagrees with what it is supposed to encode.
    #[error("certificate mismatch: {0}")]
    Certificate(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
