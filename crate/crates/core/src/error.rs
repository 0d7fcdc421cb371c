use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An exponential-cost computation was asked for beyond its configured limit.
    #[error("resource guard `{guard}` tripped: requested {requested}, limit {limit}")]
    Guard {
        guard: &'static str,
        limit: u128,
        requested: u128,
    },

    #[error("operands belong to different groups or rings: {0}")]
    Mismatch(String),

    /// A value that must be a rational integer was not; always an upstream bug.
    #[error("non-integral value: {0}")]
    NonIntegral(String),
}

impl Error {
    pub(crate) fn guard(guard: &'static str, limit: u128, requested: u128) -> Self {
        Error::Guard {
            guard,
            limit,
            requested,
        }
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}
