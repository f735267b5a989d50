//! Error classes. Each maps to one CLI exit code.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed or mathematically invalid input (exit code 2).
    #[error("invalid input: {0}")]
    Input(String),
    /// A configured degree or iteration cap was reached (exit code 3).
    #[error("cap reached: {0}")]
    Cap(String),
    /// A computed object violates a proven invariant (exit code 4).
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// Anything else (exit code 5).
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 2,
            Error::Cap(_) => 3,
            Error::Invariant(_) => 4,
            Error::Internal(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
