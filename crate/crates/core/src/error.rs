use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrexError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension {dim} exceeds the configured bound {bound}")]
    DimensionGuard { dim: usize, bound: usize },
    #[error("presentation is not finite-dimensional: {0}")]
    InfiniteDimensional(String),
    #[error("element of length {length} lies outside the length ball of radius {bound}")]
    LengthOverflow { length: usize, bound: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("structural failure: {0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, GrexError>;
