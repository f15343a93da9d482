use thiserror::Error;

/// Failures reported by curve operations, index construction and index I/O.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("coordinate overflow: {0}")]
    Overflow(String),

    #[error("enumeration budget of {limit} exceeded")]
    BudgetExceeded { limit: usize },

    #[error("corrupt index: {0}")]
    Decode(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }

    pub(crate) fn decode(msg: impl Into<String>) -> Self {
        Error::Decode(msg.into())
    }
}
