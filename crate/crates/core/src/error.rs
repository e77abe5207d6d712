use thiserror::Error;

/// Errors raised by graph construction, the verifiers and the fuzz harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed edge-list input. `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The caller violated an operation's precondition (bad vertex, u = v, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// The input is outside the domain of the statement being checked,
    /// e.g. a disconnected graph handed to a connected-graph verifier.
    #[error("domain error: {0}")]
    Domain(String),

    /// A size guard or enumeration cap was hit.
    #[error("resource limit: {0}")]
    Resource(String),

    /// An internally checked guarantee failed. Always an implementation bug.
    #[error("internal assertion failed: {0}")]
    Assertion(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn resource(msg: impl Into<String>) -> Error {
    Error::Resource(msg.into())
}
