//! Exponent-sequence suite: β closed forms and conditions, the extension
//! impossibility mechanism, the harmonic ledger, and the φ-family product
//! condition on a log grid (demonstrated by the β-driven family; the
//! harmonic family's failure at p = 3 is verified as a counterexample).

use super::{f9, SuiteAbort};
use crate::config::RunConfig;
use crate::report::{Check, SuiteReport};
use coarse_toolkit::asymptotics::{
    base_a_dominates_reciprocal, beta_sequence, extension_impossibility, harmonic_alpha_check,
    log_grid, phi_family_report, verify_beta_conditions, BetaSequence, PhiFamily,
};
use coarse_toolkit::rational::{int, rat, rat_str};

fn ctx(e: impl std::fmt::Display) -> SuiteAbort {
    SuiteAbort::new("asym", e)
}

pub fn run(_cfg: &RunConfig) -> Result<SuiteReport, SuiteAbort> {
    let mut checks = Vec::new();

    // Closed form: β(4) = (10, 9, 7, 1) with partial sums (10, 19, 26, 27);
    // β(2) = (2, 1).
    let b4 = beta_sequence(4).map_err(ctx)?;
    let b2 = beta_sequence(2).map_err(ctx)?;
    let ok = b4.raw() == [int(10), int(9), int(7), int(1)]
        && b4.partial_sums() == [int(10), int(19), int(26), int(27)]
        && b2.raw() == [int(2), int(1)];
    checks.push(
        Check::claim("beta_closed_form", ok)
            .with("beta4", render(b4.raw()))
            .with("beta4_sums", render(b4.partial_sums())),
    );

    // Every generated sequence satisfies positivity, monotonicity, the
    // recursion, admissibility, and strictness, for k = 2..=8.
    let mut ok = true;
    for k in 2..=8 {
        let seq = beta_sequence(k).map_err(ctx)?;
        if !verify_beta_conditions(&seq).all_pass {
            ok = false;
        }
        if !verify_beta_conditions(&seq.normalized_sequence()).all_pass {
            ok = false;
        }
    }
    checks.push(Check::claim("beta_conditions_all_k", ok).with("k_range", "2..=8"));

    // The constant sequence (1,1,1) must be rejected (recursion fails:
    // its scale constant vanishes).
    let constant = BetaSequence::from_raw(vec![int(1), int(1), int(1)]).map_err(ctx)?;
    let rep = verify_beta_conditions(&constant);
    let rejected = !rep.all_pass && rep.rows.iter().any(|r| !r.recursion);
    checks.push(
        Check::claim("constant_sequence_rejected", rejected)
            .with("scale_constant", rat_str(&rep.scale_constant)),
    );

    // The normalized worked example (1, 9/10, 7/10, 1/10) passes with
    // scale constant 1/10.
    let normalized = BetaSequence::from_raw(vec![int(1), rat(9, 10), rat(7, 10), rat(1, 10)])
        .map_err(ctx)?;
    let rep = verify_beta_conditions(&normalized);
    let ok = rep.all_pass && rep.scale_constant == rat(1, 10);
    checks.push(
        Check::claim("normalized_example_passes", ok)
            .with("scale_constant", rat_str(&rep.scale_constant)),
    );

    // Extension impossibility: differences β_n − β_{n+1} = c·n! strictly
    // increase, and the remark values stay negative.
    let b8 = beta_sequence(8).map_err(ctx)?;
    let imp = extension_impossibility(&b8);
    let ok = imp.strictly_increasing
        && imp.factorial_pattern
        && imp.remark_holds
        && imp.lower_bound == int(1);
    checks.push(
        Check::claim("extension_impossibility", ok)
            .with("differences", render(&imp.differences))
            .with("lower_bound", rat_str(&imp.lower_bound)),
    );

    // Harmonic ledger: S_k − (k/(k−1))S_{k−1} = (H_k − 1)/(k − 1) < 1.
    let mut ok = true;
    let mut k3_value = String::new();
    for k in 2..=10 {
        let ledger = harmonic_alpha_check(k).map_err(ctx)?;
        if !ledger.identity_matches || !ledger.below_one {
            ok = false;
        }
        if k == 3 {
            k3_value = rat_str(&ledger.identity_value);
        }
    }
    checks.push(Check::claim("harmonic_ledger", ok).with("identity_k3", k3_value));

    // a(d) = max(1,d)^{−1/2} dominates 1/d (exact at perfect squares).
    checks.push(
        Check::claim("base_dominates_reciprocal", base_a_dominates_reciprocal(10_000))
            .with("max_m", "10000"),
    );

    // φ-family product condition, demonstrated by the β(4)-driven family
    // on the standard log grid: φ increasing, consecutive ratios
    // decreasing, and every product ratio decreasing on the tail.
    let grid = log_grid(1e2, 1e6, 9).map_err(ctx)?;
    let beta_family = PhiFamily::from_beta(beta_sequence(4).map_err(ctx)?);
    let report = phi_family_report(&beta_family, 4, &grid).map_err(ctx)?;
    let verdicts: Vec<String> = report
        .product_decreasing_tail
        .iter()
        .map(|(p, ok)| format!("p{p}:{ok}"))
        .collect();
    checks.push(
        Check::demonstration(
            "phi_product_condition_beta",
            report.demonstrated && report.phi_increasing && report.ratios_decreasing_tail,
        )
        .with("grid", "log:1e2:1e6:9")
        .with("product_tail", verdicts.join(",")),
    );

    // The harmonic family genuinely fails the product condition at p = 3
    // (its ratio grows like d^{1/12}); the report must detect this.
    let harmonic_family = PhiFamily::harmonic();
    let hreport = phi_family_report(&harmonic_family, 3, &grid).map_err(ctx)?;
    let detected = !hreport.demonstrated
        && hreport
            .product_decreasing_tail
            .iter()
            .any(|&(p, ok)| p == 3 && !ok);
    let growth = hreport
        .rows
        .last()
        .zip(hreport.rows.iter().rev().nth(1))
        .map(|(last, prev)| {
            let r_last = last.product_ratios.iter().find(|(p, _)| *p == 3).unwrap().1;
            let r_prev = prev.product_ratios.iter().find(|(p, _)| *p == 3).unwrap().1;
            r_last / r_prev
        })
        .unwrap_or(f64::NAN);
    checks.push(
        Check::claim("harmonic_counterexample_detected", detected)
            .with("p3_ratio_step_growth", f9(growth))
            .with("expected_step_growth", f9(10f64.powf(0.5 / 12.0))),
    );

    Ok(SuiteReport {
        name: "asym".to_string(),
        checks,
    })
}

fn render(rats: &[coarse_toolkit::rational::Rat]) -> String {
    let parts: Vec<String> = rats.iter().map(rat_str).collect();
    parts.join(",")
}
