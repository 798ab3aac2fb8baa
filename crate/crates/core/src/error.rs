use thiserror::Error;

/// Errors raised by generators, transforms and the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("radix mismatch: expected {expected}, found {found}")]
    RadixMismatch { expected: u32, found: u32 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("digit {digit} out of range for radix {radix}")]
    DigitOutOfRange { digit: u32, radix: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested object is ruled out by a necessary existence condition.
    #[error("does not exist: {0}")]
    Nonexistent(String),

    #[error("operation requires a binary code")]
    NotBinary,

    #[error("operation requires a non-empty code")]
    EmptyCode,

    #[error("input is not a Gray code: {0}")]
    NotGray(String),

    #[error("search budget exhausted before a witness was found")]
    SearchBudget,

    /// A construction produced something that violates its own contract.
    #[error("construction invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn nonexistent(msg: impl Into<String>) -> Error {
    Error::Nonexistent(msg.into())
}
