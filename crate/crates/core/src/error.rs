use thiserror::Error;

/// Errors raised by the verification pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("undefined resultant: both inputs are zero")]
    UndefinedResultant,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {denominator} vanishes at ({x}, {y})")]
    Pole {
        denominator: &'static str,
        x: String,
        y: String,
    },

    #[error("not on spectral curve: stress matrix is nonsingular at ({x}, {y})")]
    NotOnCurve { x: String, y: String },

    #[error("point lies on the exceptional line 2x - 3y - 3 = 0 of the birational map")]
    ExceptionalLocus,

    #[error("branch value at x = {0} is irrational; use the numeric pipeline")]
    IrrationalBranch(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("verification failed [{check}]: {detail}")]
    Verification { check: String, detail: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn verification(check: &str, detail: impl Into<String>) -> Self {
        Error::Verification {
            check: check.to_string(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
