use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("connecting element lies in the subgroup: {0}")]
    Loop(String),
    #[error("relation is symmetric, not a digraph: {0}")]
    NotAntisymmetric(String),
    #[error("syntax error at offset {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<crate::numth::NumthError> for Error {
    fn from(e: crate::numth::NumthError) -> Error {
        Error::InvalidArgument(e.to_string())
    }
}

impl From<crate::permgroup::PermError> for Error {
    fn from(e: crate::permgroup::PermError) -> Error {
        match e {
            crate::permgroup::PermError::Syntax { offset, msg } => Error::Syntax { offset, msg },
            other => Error::InvalidArgument(other.to_string()),
        }
    }
}
