//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("quadrature failure: {0}")]
    Quadrature(String),

    #[error("resolution failure at {variable} = {value}: estimated error {estimate:.3e} exceeds tolerance {tolerance:.3e}")]
    Resolution {
        variable: &'static str,
        value: f64,
        estimate: f64,
        tolerance: f64,
    },

    #[error("special function evaluation failed: {0}")]
    SpecialFunction(String),

    #[error("fixed-point iteration failed: {0}")]
    FixedPoint(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("format error: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
