use thiserror::Error;

/// Errors produced by the library.
///
/// The variants map onto the CLI exit codes: `Bounds` and `Domain` are
/// validation failures (exit 2), `Resource` is a configured-limit overflow
/// (exit 3), and `Invariant` is an internal consistency failure (exit 4).
#[derive(Debug, Error)]
pub enum Error {
    /// A size parameter is outside the supported range.
    #[error("parameter out of bounds: {0}")]
    Bounds(String),
    /// Inputs are structurally valid but violate a precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Objects with mismatched dimensions were combined.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A structurally malformed object was supplied.
    #[error("malformed input: {0}")]
    Structural(String),
    /// A configured resource limit was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// An internal invariant failed; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn bounds(msg: impl Into<String>) -> Self {
        Error::Bounds(msg.into())
    }
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
