//! Run configuration shared by the CLI commands.

use crate::budget::{Budget, DEFAULT_BUDGET};
use std::path::PathBuf;

#[derive(Debug, Clone)]
pub struct Config {
    /// Instantiation-tuple budget for every exhaustive enumeration.
    pub enumeration_budget: u64,
    pub fuzz_seed: u64,
    pub fuzz_count: usize,
    pub output_path: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            enumeration_budget: DEFAULT_BUDGET,
            fuzz_seed: 7,
            fuzz_count: 200,
            output_path: None,
        }
    }
}

impl Config {
    pub fn budget(&self) -> Budget {
        Budget::new(self.enumeration_budget.max(1))
    }
}
