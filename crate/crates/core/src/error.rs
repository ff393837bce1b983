use thiserror::Error;

/// Errors raised by the engine.
///
/// The variants follow the failure categories used throughout the crate: bad
/// input from a caller (`Usage`, `Parse`), a value outside an operation's
/// domain (`Domain`), a failed search (`NoWitness`) and broken internal
/// invariants (`Internal`).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no witness: {0}")]
    NoWitness(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
