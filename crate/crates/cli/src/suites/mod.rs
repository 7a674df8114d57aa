//! The five verification suites behind `coarse verify`.
//!
//! Each suite runs a fixed list of named checks against the library with a
//! seeded RNG, producing pass / fail / demonstrated statuses plus witness
//! data. A toolkit error that prevents a suite from finishing aborts the
//! run (the report stays valid JSON and the process exits 3).

pub mod asym;
pub mod chains;
pub mod filling;
pub mod spaces;
pub mod weyl;

use crate::config::{RunConfig, SuiteKind};
use crate::report::{Check, SuiteReport};

/// A suite that could not run to completion (unexpected library error).
#[derive(Debug, thiserror::Error)]
#[error("suite '{suite}' aborted: {message}")]
pub struct SuiteAbort {
    pub suite: &'static str,
    pub message: String,
}

impl SuiteAbort {
    pub fn new(suite: &'static str, message: impl ToString) -> Self {
        SuiteAbort {
            suite,
            message: message.to_string(),
        }
    }
}

pub fn run_suite(kind: SuiteKind, cfg: &RunConfig) -> Result<SuiteReport, SuiteAbort> {
    match kind {
        SuiteKind::Chains => chains::run(cfg),
        SuiteKind::Weyl => weyl::run(cfg),
        SuiteKind::Spaces => spaces::run(cfg),
        SuiteKind::Filling => filling::run(cfg),
        SuiteKind::Asym => asym::run(cfg),
    }
}

/// Runs up to `trials` instances of a randomized check, stopping at the
/// first counterexample. Returns (all held, index of first failure).
pub(crate) fn run_trials<E>(
    trials: usize,
    mut f: impl FnMut(usize) -> Result<bool, E>,
) -> Result<(bool, Option<usize>), E> {
    for t in 0..trials {
        if !f(t)? {
            return Ok((false, Some(t)));
        }
    }
    Ok((true, None))
}

/// Standard trial bookkeeping on a check's witness map.
pub(crate) fn note_trials(mut c: Check, trials: usize, bad: Option<usize>) -> Check {
    c = c.with("trials", trials.to_string());
    if let Some(t) = bad {
        c = c.with("first_failure_trial", t.to_string());
    }
    c
}

/// Fixed-precision float rendering: keeps reports byte-stable.
pub(crate) fn f9(x: f64) -> String {
    format!("{x:.9}")
}
