use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("binary sequence is not the image of a positive bi-index")]
    InvalidBinarySeq,
    #[error("word is not positive")]
    NotPositive,
    #[error("partial fraction requires distinct shifts")]
    DegenerateShift,
    #[error("element is not in the regular subspace: {0}")]
    NotRegular(String),
    #[error("monomial cannot be linearized: {0}")]
    NotLinearizable(String),
    #[error("input exceeds resource limit: {0}")]
    TooLarge(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("divergent index: {0}")]
    Divergent(String),
    #[error("tolerance {tol:e} not reached, best bound {bound:e}")]
    PrecisionFailure { tol: f64, bound: f64 },
    #[error("invalid value: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
