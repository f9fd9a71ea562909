use thiserror::Error;

/// Broad failure categories. The CLI maps these onto process exit codes,
/// so the distinction is part of the public contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// A value violated a declared constraint at construction time.
    Validation,
    /// An operation was invoked with incompatible or out-of-contract arguments.
    Usage,
    /// A computation would exceed a configured resource bound.
    Resource,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("resource error: {0}")]
    Resource(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Validation(_) => ErrorCategory::Validation,
            Error::Usage(_) => ErrorCategory::Usage,
            Error::Resource(_) => ErrorCategory::Resource,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
