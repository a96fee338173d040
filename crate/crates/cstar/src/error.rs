use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("contradictory bounds: {0}")]
    Contradiction(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
