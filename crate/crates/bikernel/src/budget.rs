//! Enumeration budget.
//!
//! Every exhaustive search in the kernel charges the tuples it visits against
//! a budget. Exceeding the budget is a hard error, never silent truncation.

use crate::error::{KernelError, Result};
use std::sync::atomic::{AtomicU64, Ordering};

/// Default budget: 10^7 instantiation tuples per top-level operation.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A shared tuple counter with a hard limit. Safe to charge from multiple
/// threads; results do not depend on the interleaving because charging is
/// monotone and failure is sticky.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit: limit.max(1),
            used: AtomicU64::new(0),
        }
    }

    /// Reads `BIKERNEL_BUDGET` from the environment, falling back to the default.
    pub fn from_env() -> Self {
        let limit = std::env::var("BIKERNEL_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        Budget::new(limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    /// Charges `n` tuples, failing once the running total passes the limit.
    pub fn charge(&self, context: &str, n: u64) -> Result<()> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        if before.saturating_add(n) > self.limit {
            return Err(KernelError::EnumerationBudgetExceeded {
                context: context.to_string(),
                budget: self.limit,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charge_up_to_limit_then_fail() {
        let b = Budget::new(10);
        assert!(b.charge("t", 10).is_ok());
        assert!(matches!(
            b.charge("t", 1),
            Err(KernelError::EnumerationBudgetExceeded { .. })
        ));
    }
}
