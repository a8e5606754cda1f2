use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at {0}")]
    Pole(String),

    #[error("size limit exceeded: requested {requested}, cap is {cap}")]
    Size { requested: usize, cap: usize },

    #[error("failed to converge: {0}")]
    Convergence(String),

    #[error("outside the region of validity: {0}")]
    Region(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
