//! Kernel error type shared by all modules.

use crate::cell::CellId;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("duplicate token `{token}` in tier {tier}")]
    DuplicateId { tier: String, token: CellId },

    #[error("dangling reference to `{token}` in {context}")]
    DanglingReference { context: String, token: CellId },

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("enumeration budget of {budget} tuples exceeded in {context}")]
    EnumerationBudgetExceeded { context: String, budget: u64 },

    #[error("presentation is not 1-strict: {0}")]
    NotStrict(String),

    #[error("invalid monoid table: {0}")]
    InvalidMonoid(String),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("chaotic displayed closure violation: {0}")]
    ChaoticClosureViolation(String),

    #[error("category `{0}` is not a groupoid")]
    NotAGroupoid(CellId),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("construction failed (kernel invariant broken): {0}")]
    ConstructionFailed(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, KernelError>;
