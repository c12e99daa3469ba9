use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("datum condition ({condition}) fails at {location}: {message}")]
    Datum { condition: String, location: String, message: String },
    #[error("height {height} exceeds the configured cap {cap}")]
    CapExceeded { height: usize, cap: usize },
    #[error("bar involution requires a consistent datum")]
    Inconsistent,
    #[error("operation requires a finite type datum")]
    NotFiniteType,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
