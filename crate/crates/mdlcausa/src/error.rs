use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates a documented precondition (dimension mismatch,
    /// empty input, out-of-range parameter, cyclic graph, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A computation was rejected because it would exceed the configured
    /// resource limits rather than produce a wrong answer slowly.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }
}
