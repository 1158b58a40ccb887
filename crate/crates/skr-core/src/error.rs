use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("insufficient precision: need index {needed}, have {available}")]
    InsufficientPrecision { needed: usize, available: usize },
    #[error("root isolation failed: {0}")]
    RootIsolation(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("quadrature budget exceeded: {0}")]
    Quadrature(String),
    #[error("ambiguous match: {0}")]
    Ambiguous(String),
    #[error("ill-conditioned system (condition estimate {0:e})")]
    IllConditioned(f64),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
