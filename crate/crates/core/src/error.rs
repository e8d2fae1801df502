use thiserror::Error;

/// Errors raised by the toolkit. Precondition failures of size bounds are
/// reported inside [`crate::bounds::BoundReport`] instead of here.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("word length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid word text {0:?}: expected only '0' and '1'")]
    InvalidWordText(String),

    #[error("radius {t} exceeds word length {n}")]
    RadiusTooLarge { t: usize, n: usize },

    #[error("empty word list")]
    EmptyList,

    #[error("duplicate codeword {0}")]
    DuplicateWord(String),

    #[error("code has {size} codewords, fewer than the list size {list_size}")]
    CodeTooSmall { size: usize, list_size: usize },

    #[error("list size must be at least {min}, got {got}")]
    ListSizeTooSmall { min: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size guard exceeded: {what} = {actual} > {limit}")]
    GuardExceeded {
        what: &'static str,
        actual: String,
        limit: String,
    },

    #[error("code file: {0}")]
    CodeFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
