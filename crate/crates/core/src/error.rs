use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("no image assigned to generator {0}")]
    MissingGenerator(String),
    #[error("unknown relation family `{0}`")]
    UnknownFamily(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("square does not commute")]
    NonCommutingSquare,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
