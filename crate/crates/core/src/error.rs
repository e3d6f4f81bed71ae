use thiserror::Error;

/// Errors reported by the engine.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on user-supplied data failed.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Two values that must live over the same ring do not.
    #[error("incompatible operands: {0}")]
    Incompatible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn incompatible(msg: impl Into<String>) -> Self {
        Error::Incompatible(msg.into())
    }
}
