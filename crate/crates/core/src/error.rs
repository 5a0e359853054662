use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxError {
    #[error("n = {0} is not supported: need at least two points (one point gives the toric surface with Cox ring k[x, s1, s2, e])")]
    UnsupportedPointCount(usize),

    #[error("dimension mismatch: {left} points vs {right} points")]
    DimensionMismatch { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid point configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("value too large for enumeration: {0}")]
    TooLarge(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, CoxError>;
