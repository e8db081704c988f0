//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ElicitError {
    #[error("non-finite integrand value {value} at observation {at}")]
    NonFiniteIntegrand { at: f64, value: f64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("point {point:?} outside the action domain")]
    DomainViolation { point: Vec<f64> },

    #[error("expected denominator E[q(Y)] = {value} is not positive")]
    DenominatorError { value: f64 },

    #[error("distribution is not symmetric: |F(c+x) - (1 - F((c-x)-))| = {margin} at offset {offset}")]
    NotSymmetric { offset: f64, margin: f64 },

    #[error("quantile at level {alpha} is not unique (CDF flat over width > {width})")]
    NonUniqueQuantile { alpha: f64, width: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("convexity check failed for {name} at {point:?}: {detail}")]
    ConvexityError {
        name: String,
        point: Vec<f64>,
        detail: String,
    },

    #[error("integration path leaves the interior of the action domain at lambda = {lambda}")]
    PathOutsideDomain { lambda: f64 },

    #[error("empirical score appears unbounded below near {point:?}")]
    Diverged { point: Vec<f64> },

    #[error("parse error at row {row}: {detail}")]
    ParseError { row: usize, detail: String },

    #[error("usage error: {0}")]
    UsageError(String),
}

pub type Result<T> = std::result::Result<T, ElicitError>;
