use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A mathematical precondition was violated (zero polynomial, non-divisor, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A polynomial or matrix could not be parsed.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    /// A Sturm count was requested with a root sitting on an endpoint.
    #[error("polynomial vanishes at interval endpoint {0}")]
    EndpointRoot(String),
    /// Refinement could not reach the requested accuracy.
    #[error("precision error: {0}")]
    Precision(String),
    /// A configured size cap was exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// Unreadable input source.
    #[error("input error: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
