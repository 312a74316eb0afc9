use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Subset DSL text could not be tokenized or parsed.
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    /// Input was well-formed but violates a domain constraint (r > t, k < 2, ...).
    #[error("invalid subset: {0}")]
    Semantic(String),

    /// A computation would exceed a configured size limit.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// Argument outside the operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
