use std::fmt;

use crate::expr::ParseError;
use crate::field::ComplexPoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("numerical failure at {point}: {reason}")]
    NumericalFailure { point: ComplexPoint, reason: String },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("mode error: {0}")]
    Mode(String),

    #[error("invalid target {point}: {reason}")]
    InvalidTarget { point: ComplexPoint, reason: String },

    #[error("coordinate index {index} out of range for {dim} variables")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn numerical(point: impl Into<ComplexPoint>, reason: impl fmt::Display) -> Self {
        Error::NumericalFailure {
            point: point.into(),
            reason: reason.to_string(),
        }
    }
}
