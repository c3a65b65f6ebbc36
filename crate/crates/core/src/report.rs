//! Structured outcomes of verification checks.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Warn,
    Fail,
}

/// The offending entry of a failed or suspicious check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Row/column or parameter indices locating the offending entry.
    pub indices: Vec<i64>,
    /// Exact rendering of the offending value or a short mismatch description.
    pub value: String,
}

impl Witness {
    pub fn new(indices: Vec<i64>, value: impl Into<String>) -> Self {
        Self { indices, value: value.into() }
    }

    pub fn entry(row: usize, col: usize, value: impl fmt::Display) -> Self {
        Self::new(vec![row as i64, col as i64], value.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("failed check {suite}/{check} has no witness")]
pub struct MissingWitness {
    pub suite: String,
    pub check: String,
}

impl CheckReport {
    fn build(suite: &str, check: &str, params: &[(&str, String)], status: Status, witness: Option<Witness>) -> Self {
        Self {
            suite: suite.to_owned(),
            check: check.to_owned(),
            params: params.iter().map(|(k, v)| ((*k).to_owned(), v.clone())).collect(),
            status,
            witness,
        }
    }

    pub fn pass(suite: &str, check: &str, params: &[(&str, String)]) -> Self {
        Self::build(suite, check, params, Status::Pass, None)
    }

    pub fn fail(suite: &str, check: &str, params: &[(&str, String)], witness: Witness) -> Self {
        Self::build(suite, check, params, Status::Fail, Some(witness))
    }

    pub fn warn(suite: &str, check: &str, params: &[(&str, String)], witness: Option<Witness>) -> Self {
        Self::build(suite, check, params, Status::Warn, witness)
    }

    /// Pass when `witness` is `None`, fail with it otherwise.
    pub fn from_witness(suite: &str, check: &str, params: &[(&str, String)], witness: Option<Witness>) -> Self {
        match witness {
            None => Self::pass(suite, check, params),
            Some(w) => Self::fail(suite, check, params, w),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    /// Enforces that failures carry a witness.
    pub fn validate(&self) -> Result<(), MissingWitness> {
        if self.status == Status::Fail && self.witness.is_none() {
            return Err(MissingWitness { suite: self.suite.clone(), check: self.check.clone() });
        }
        Ok(())
    }

    fn sort_key(&self) -> (&str, &str, &BTreeMap<String, String>) {
        (&self.suite, &self.check, &self.params)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Warn => "WARN",
            Status::Fail => "FAIL",
        };
        write!(f, "[{status}] {}/{}", self.suite, self.check)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " @ {:?}: {}", w.indices, w.value)?;
        }
        Ok(())
    }
}

/// Sorts reports by `(suite, check, params)`.
pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

/// The most severe status, `Pass` for an empty list.
pub fn aggregate(reports: &[CheckReport]) -> Status {
    reports.iter().map(|r| r.status).max().unwrap_or(Status::Pass)
}

/// Shorthand for building parameter lists.
#[macro_export]
macro_rules! params {
    ($($k:literal => $v:expr),* $(,)?) => {
        &[$(($k, ($v).to_string())),*]
    };
}
