use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("guard exceeded for {what}: requested {requested}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        requested: String,
        limit: String,
    },

    #[error("class functions live on different groups: S_{left} vs S_{right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("no period up to {max_period} reproduces the samples")]
    NoPeriod { max_period: usize },

    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error("expected m = 2, got m = {0}")]
    NotM2(u64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, requested: impl ToString, limit: impl ToString) -> Error {
    Error::GuardExceeded {
        what,
        requested: requested.to_string(),
        limit: limit.to_string(),
    }
}
