use thiserror::Error;

#[derive(Debug, Error)]
pub enum ApexError {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = ApexError> = std::result::Result<T, E>;
