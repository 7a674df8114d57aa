//! Library behind the `coarse` binary: verification suites over the
//! coarse-geometry toolkit, machine-readable reports, and table renderers.

pub mod config;
pub mod report;
pub mod suites;
pub mod tables;

use config::RunConfig;
use report::{Check, Report, Status, SuiteReport};

/// Runs the configured suites into one report. An aborting suite leaves a
/// partial report (valid JSON, `aborted` status recorded) and stops the run.
pub fn run_verify(cfg: &RunConfig) -> Report {
    let mut report = Report::new(cfg.echo());
    for &kind in &cfg.suites {
        match suites::run_suite(kind, cfg) {
            Ok(suite) => report.push_suite(suite),
            Err(abort) => {
                report.push_suite(SuiteReport {
                    name: abort.suite.to_string(),
                    checks: vec![
                        Check::new("suite_completed", Status::Aborted).with("error", abort.message)
                    ],
                });
                break;
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use config::{SuiteKind, DEFAULT_SEED};

    fn quick_cfg(suites: Vec<SuiteKind>) -> RunConfig {
        RunConfig {
            seed: DEFAULT_SEED,
            trials: 6,
            n_max: 3,
            suites,
        }
    }

    #[test]
    fn all_suites_pass_with_small_trials() {
        let report = run_verify(&quick_cfg(SuiteKind::ALL.to_vec()));
        assert_eq!(report.exit_code(), 0, "{}", report.to_json());
        assert_eq!(report.suites.len(), 5);
        assert!(report.summary.failed == 0 && report.summary.aborted == 0);
        assert!(report.summary.demonstrated > 0, "asymptotic checks present");
    }

    #[test]
    fn report_bytes_are_deterministic() {
        let a = run_verify(&quick_cfg(vec![SuiteKind::Chains, SuiteKind::Asym]));
        let b = run_verify(&quick_cfg(vec![SuiteKind::Chains, SuiteKind::Asym]));
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn different_seeds_still_pass() {
        let mut cfg = quick_cfg(vec![SuiteKind::Chains]);
        cfg.seed = 12345;
        let report = run_verify(&cfg);
        assert_eq!(report.exit_code(), 0, "{}", report.to_json());
    }
}
