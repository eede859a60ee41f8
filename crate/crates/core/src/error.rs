//! Error types shared across the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars belong to different field towers")]
    TowerMismatch,
    #[error("minimal polynomial is reducible; factor: {factor}")]
    ReducibleMinpoly { factor: String },
    #[error("resource budget exceeded during {phase}")]
    BudgetExceeded { phase: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
