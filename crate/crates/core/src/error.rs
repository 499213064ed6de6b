use thiserror::Error;

use crate::rootfind::RootError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("radius {0} outside (0, 1]")]
    RadiusOutOfRange(f64),

    #[error("parameter `{name}` = {value} is invalid: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("operation not supported for {0} domains")]
    UnsupportedDomain(&'static str),

    #[error("no d_α entry for multi-index {0}")]
    MissingTableEntry(String),

    #[error("multi-index {0} does not have coprime parts")]
    NotCoprime(String),

    #[error("index {index} has weight above the degree cap {cap}")]
    AboveCap { index: String, cap: u32 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("premise |f| < 1 violated: sampled sup {0}")]
    PremiseViolated(f64),

    #[error(transparent)]
    Root(#[from] RootError),
}
