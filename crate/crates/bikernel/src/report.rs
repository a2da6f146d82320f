//! Machine-readable reports.
//!
//! All checks report in the same shape: a status plus a list of violations,
//! each naming the violated law, the instantiating cells, and the two sides
//! that were compared. An empty violation list is equivalent to a pass.

use crate::cell::CellId;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("pass"),
            Status::Fail => f.write_str("fail"),
        }
    }
}

/// One failed law instantiation: the law tag, the witness cells, and the
/// evaluated left- and right-hand values (or a description of what is
/// missing/ill-typed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub cells: Vec<CellId>,
    pub lhs: String,
    pub rhs: String,
}

impl Violation {
    pub fn new(
        law: impl Into<String>,
        cells: Vec<CellId>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        Violation {
            law: law.into(),
            cells,
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }
}

/// Report of a validation or law check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub status: Status,
    pub violations: Vec<Violation>,
}

/// Well-typedness and totality reports share the law-report shape.
pub type ValidationReport = LawReport;

impl LawReport {
    pub fn pass() -> Self {
        LawReport {
            status: Status::Pass,
            violations: Vec::new(),
        }
    }

    pub fn from_violations(violations: Vec<Violation>) -> Self {
        let status = if violations.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        LawReport { status, violations }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// True when some violation carries the given law tag.
    pub fn has_law(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

/// One univalence witness: a pair of cells where the counting or canonicity
/// condition fails, with the observed count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnivalenceWitness {
    pub cells: (CellId, CellId),
    pub count: usize,
    /// True when the count is right but the unique element is not the
    /// canonical identity one.
    pub non_canonical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnivalenceSide {
    pub status: Status,
    pub witnesses: Vec<UnivalenceWitness>,
}

impl UnivalenceSide {
    pub fn from_witnesses(witnesses: Vec<UnivalenceWitness>) -> Self {
        let status = if witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        UnivalenceSide { status, witnesses }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Local and global univalence decisions plus their conjunction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnivalenceReport {
    pub local: UnivalenceSide,
    pub global: UnivalenceSide,
    pub overall: Status,
}

impl UnivalenceReport {
    pub fn new(local: UnivalenceSide, global: UnivalenceSide) -> Self {
        let overall = if local.passed() && global.passed() {
            Status::Pass
        } else {
            Status::Fail
        };
        UnivalenceReport {
            local,
            global,
            overall,
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }
}
