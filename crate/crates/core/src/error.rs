//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by parameter construction, domain checks and series evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PqError {
    /// Parameter pair or policy rejected at construction.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Argument outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// A function was evaluated (or would be evaluated) outside its declared domain.
    #[error("evaluation at x = {x} outside the function domain [{lo}, {hi}]")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },

    /// Series truncation budget exhausted before the tolerance was met.
    /// Carries the last partial sum so callers can inspect how far it got.
    #[error("series did not converge within {terms} terms (last partial sum {partial})")]
    Convergence { partial: f64, terms: usize },
}

pub type Result<T> = std::result::Result<T, PqError>;
