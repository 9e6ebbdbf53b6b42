use std::fmt;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter violated an operation's contract.
    InvalidArgument(String),
    /// The request exceeds the resource envelope this build supports
    /// (e.g. an oracle asked to enumerate a space that does not fit memory).
    ResourceLimit(String),
    /// An internal exactness check failed. This is never caused by bad
    /// input; it signals a defect in a transcribed formula or construction.
    Inconsistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::ResourceLimit(msg) => write!(f, "resource limit: {msg}"),
            Error::Inconsistency(msg) => write!(f, "internal consistency error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
