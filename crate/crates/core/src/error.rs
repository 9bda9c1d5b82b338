use thiserror::Error;

use crate::cheb::GridKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FhtError {
    #[error("invalid size {n}: at least {min} required")]
    InvalidSize { n: usize, min: usize },

    #[error("argument {x} lies outside [-1, 1]")]
    Domain { x: f64 },

    #[error("grid mismatch: expected {expected:?}, found {found:?}")]
    GridMismatch { expected: GridKind, found: GridKind },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("degree {degree} exceeds the recurrence cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown analytic pair `{0}`")]
    UnknownPair(String),

    #[error("linear solver failure: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, FhtError>;
