use thiserror::Error;

/// Errors raised by the library.
///
/// `Validation` covers malformed input data (complexes, functions, documents),
/// `Usage` covers calls that violate an operation's preconditions, and
/// `Internal` signals a broken invariant inside the library itself.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! usage {
    ($($arg:tt)*) => { $crate::error::Error::Usage(format!($($arg)*)) };
}

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::Validation(format!($($arg)*)) };
}

pub(crate) use invalid;
pub(crate) use usage;
