use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("configuration is not virtual: {0}")]
    NotVirtual(String),
    #[error("crystal model inconsistency: {0}")]
    Inconsistent(String),
    #[error("{what} exceeded the cap of {cap}")]
    Resource { what: String, cap: usize },
    #[error("conjecture check failed: {0}")]
    Conjecture(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
