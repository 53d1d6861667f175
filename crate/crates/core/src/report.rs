//! Outcome records shared by every verification routine.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A recorded discrepancy that does not fail a run.
    Flagged,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub claim: String,
    pub status: Status,
    pub details: String,
}

impl Check {
    pub fn new(name: impl Into<String>, claim: impl Into<String>, ok: bool, details: impl Into<String>) -> Self {
        Check { name: name.into(), claim: claim.into(), status: if ok { Status::Pass } else { Status::Fail }, details: details.into() }
    }

    pub fn flagged(name: impl Into<String>, claim: impl Into<String>, details: impl Into<String>) -> Self {
        Check { name: name.into(), claim: claim.into(), status: Status::Flagged, details: details.into() }
    }

    /// Flagged checks do not count as failures.
    pub fn ok(&self) -> bool {
        self.status != Status::Fail
    }
}

pub fn all_ok(checks: &[Check]) -> bool {
    checks.iter().all(Check::ok)
}
