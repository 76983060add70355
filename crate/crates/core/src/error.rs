use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    /// The exact series engine does not cover this pattern; use the oracle or the asymptotics.
    #[error("no exact generating function for this pattern: {0}")]
    UnsupportedExact(String),

    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("probability undefined: {0}")]
    UndefinedProbability(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
