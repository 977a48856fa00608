use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: operands from {left} and {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },

    #[error("division by zero")]
    DivisionByZero,

    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The prescribed diagonal does not sum to `-c_{n-1}`.
    #[error("trace mismatch: d_1 + ... + d_n + c_(n-1) = {residual}, expected 0")]
    TraceMismatch { residual: FieldElement },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("enumeration budget exceeded: {candidates} candidates, budget {budget}")]
    BudgetExceeded { candidates: String, budget: u64 },

    #[error("exhaustive enumeration needs a prime field, got {0}")]
    WrongField(FieldSpec),

    #[error("parse error at item {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
