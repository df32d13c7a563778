use thiserror::Error;

use crate::params::Condition;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("label condition violated: {0}")]
    ConditionViolation(Condition),
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by a multi-term radical scalar is not supported")]
    UnsupportedDivisor,
    #[error("cannot add integer-weight and half-odd-weight functions")]
    ParityMismatch,
    #[error("polynomial not divisible by (1{sign}x): function leaves the weighted polynomial space")]
    NotDivisible { sign: char },
    #[error("integrand is not a polynomial (doubled exponents {e_minus}, {e_plus})")]
    NonPolynomialIntegrand { e_minus: i64, e_plus: i64 },
    #[error("pole at x = {0}")]
    PoleAtEndpoint(f64),
    #[error("x = {0} outside [-1, 1]")]
    OutOfDomain(f64),
    #[error("K- differential form is singular at j=|m|=|q|; use the closed-form action")]
    BoundaryCase,
    #[error("operator image is nonzero but its target label {0} is outside the lattice")]
    NonzeroOutsideLattice(String),
    #[error("matrix column {0} leaves the basis window")]
    OutOfWindowUnhandled(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operator is not diagonal on {0}")]
    OffDiagonal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
