//! Machine-readable verification reports (schema `report-v1`).
//!
//! A report is a list of suites, each a list of checks with a status and a
//! string-valued witness map. Reports are deterministic: all maps are
//! ordered, floats are preformatted with fixed precision by the producers,
//! and no timestamps or environment data are recorded beyond the explicit
//! config echo.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA: &str = "report-v1";

/// Outcome of one check.
///
/// `Pass`/`Fail` report decidable claims (exact arithmetic or pinned
/// tolerances). `Demonstrated` marks finite-sample evidence for an
/// asymptotic statement: the run exhibits the claimed behavior without
/// deciding it. `Aborted` marks a check that could not run to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Demonstrated,
    Aborted,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Key numbers backing the verdict, preformatted for byte-stable output.
    pub witness: BTreeMap<String, String>,
}

impl Check {
    pub fn new(name: &str, status: Status) -> Self {
        Check {
            name: name.to_string(),
            status,
            witness: BTreeMap::new(),
        }
    }

    /// Pass/fail from a boolean claim.
    pub fn claim(name: &str, ok: bool) -> Self {
        Check::new(name, if ok { Status::Pass } else { Status::Fail })
    }

    /// Demonstrated/fail from a boolean observation.
    pub fn demonstration(name: &str, ok: bool) -> Self {
        Check::new(name, if ok { Status::Demonstrated } else { Status::Fail })
    }

    pub fn with(mut self, key: &str, value: impl Into<String>) -> Self {
        self.witness.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub demonstrated: usize,
    pub aborted: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool: Tool,
    /// Echo of the effective configuration (seed, sizes, suite selection).
    pub config: BTreeMap<String, String>,
    pub suites: Vec<SuiteReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: BTreeMap<String, String>) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            tool: Tool {
                name: "coarse".to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
            },
            config,
            suites: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push_suite(&mut self, suite: SuiteReport) {
        self.suites.push(suite);
        self.recount();
    }

    fn recount(&mut self) {
        let mut s = Summary::default();
        for suite in &self.suites {
            for check in &suite.checks {
                s.total += 1;
                match check.status {
                    Status::Pass => s.passed += 1,
                    Status::Fail => s.failed += 1,
                    Status::Demonstrated => s.demonstrated += 1,
                    Status::Aborted => s.aborted += 1,
                }
            }
        }
        self.summary = s;
    }

    /// 0 when every check passed or was demonstrated; 1 on any failure;
    /// 3 when the run aborted before completing.
    pub fn exit_code(&self) -> i32 {
        if self.summary.aborted > 0 {
            3
        } else if self.summary.failed > 0 {
            1
        } else {
            0
        }
    }

    /// Deterministic pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
