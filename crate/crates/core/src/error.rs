use thiserror::Error;

/// Unified error type for the statistical core.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error in {op}: {message}")]
    Domain { op: &'static str, message: String },

    /// An iterative numeric scheme exhausted its iteration budget without
    /// reaching its tolerance. Never silently swallowed: quantiles and
    /// continued fractions either converge or report this.
    #[error("{op} failed to converge: {message}")]
    Convergence { op: &'static str, message: String },

    /// Input data is malformed or unusable (non-finite values, duplicate
    /// identifiers, missing cells where a complete block is required).
    #[error("data error: {0}")]
    Data(String),

    /// Input is well-formed but the requested analysis is impossible
    /// (too few approaches or datasets, mismatched approach sets).
    #[error("analysis error: {0}")]
    Analysis(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            op,
            message: message.into(),
        }
    }

    pub(crate) fn convergence(op: &'static str, message: impl Into<String>) -> Self {
        Error::Convergence {
            op,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
