//! Model-space suite: metric axioms, ε-volume growth tables, closed-form
//! ball counts, horosphere distortion, control profiles, and the coarse
//! volume / neighborhood inequalities.

use super::{f9, note_trials, run_trials, SuiteAbort};
use crate::config::RunConfig;
use crate::report::{Check, SuiteReport};
use coarse_toolkit::spaces::{
    ball_cardinalities, coarse_volume_report, control_function_profile, epsilon_volume,
    growth_table, horosphere_embed, horosphere_gap, linear_fit, metric_spot_check,
    neighborhood_check, sample, tree_ball_closed_form, ModelSpace, Point, SpaceError,
};
use coarse_toolkit::tolerances;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ctx(e: impl std::fmt::Display) -> SuiteAbort {
    SuiteAbort::new("spaces", e)
}

pub fn run(cfg: &RunConfig) -> Result<SuiteReport, SuiteAbort> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let trials = cfg.trials as usize;
    let mut checks = Vec::new();

    // Metric axioms by exhaustive spot check on radius-2 balls.
    let spot_spaces = [
        ModelSpace::Lattice { n: 1 },
        ModelSpace::Lattice { n: 2 },
        ModelSpace::RegularTree { degree: 3 },
        ModelSpace::HalfPlaneNet { spacing: 1 },
        ModelSpace::Product(vec![
            ModelSpace::Lattice { n: 1 },
            ModelSpace::RegularTree { degree: 3 },
        ]),
    ];
    let mut ok = true;
    for space in &spot_spaces {
        let pts = space.ball(&space.basepoint(), 2.0).map_err(ctx)?;
        if !metric_spot_check(space, &pts).map_err(ctx)? {
            ok = false;
        }
    }
    checks.push(
        Check::claim("metric_axioms", ok)
            .with("spaces", "z1,z2,t3,half:1,prod(z1,t3)")
            .with("ball_radius", "2"),
    );

    // Growth tables: lower ≤ upper, both monotone in r.
    let radii: Vec<u32> = (0..=6).collect();
    let mut ok = true;
    let mut witness = Vec::new();
    for space in [
        ModelSpace::Lattice { n: 1 },
        ModelSpace::Lattice { n: 2 },
        ModelSpace::RegularTree { degree: 3 },
    ] {
        let table = growth_table(&space, 1.0, &radii).map_err(ctx)?;
        for row in &table.rows {
            if row.lower > row.upper {
                ok = false;
            }
        }
        for pair in table.rows.windows(2) {
            if pair[0].lower > pair[1].lower || pair[0].upper > pair[1].upper {
                ok = false;
            }
        }
        let last = table.rows.last().expect("nonempty radii");
        witness.push(format!("{}@r6:[{},{}]", space.name(), last.lower, last.upper));
    }
    checks.push(Check::claim("growth_bounds_consistent", ok).with("r6", witness.join(" ")));

    // Tree balls match 1 + d((d−1)^r − 1)/(d−2); for T₃ that is 3·2^r − 2.
    let mut ok = true;
    for degree in [3u8, 4] {
        let counted = ball_cardinalities(&ModelSpace::RegularTree { degree }, 8).map_err(ctx)?;
        for (r, &count) in counted.iter().enumerate() {
            if count != tree_ball_closed_form(degree, r as u32) {
                ok = false;
            }
            if degree == 3 && r >= 1 && count != 3 * (1 << r) - 2 {
                ok = false;
            }
        }
    }
    checks.push(
        Check::claim("tree_balls_closed_form", ok)
            .with("t3_r8", tree_ball_closed_form(3, 8).to_string())
            .with("t4_r8", tree_ball_closed_form(4, 8).to_string()),
    );

    // ℤ with ε = 1: both ε-volume bounds equal ⌈(2r+1)/3⌉ (optimal sweep).
    let z1 = ModelSpace::Lattice { n: 1 };
    let mut ok = true;
    for r in 0u64..=20 {
        let ball = z1.ball(&z1.basepoint(), r as f64).map_err(ctx)?;
        let (lo, hi) = epsilon_volume(&z1, &ball, 1.0).map_err(ctx)?;
        let formula = (2 * r + 1).div_ceil(3);
        if lo != formula || hi != formula {
            ok = false;
        }
    }
    checks.push(Check::claim("z1_interval_covering_formula", ok).with("r_max", "20"));

    // Horosphere distortion: d(r) = arccosh(1 + r²/2) within the exact
    // envelope 0 < d(r) − 2 ln r ≤ ln(1 + 4/r²), decreasing gap, and the
    // asymptote |d(10⁶) − 2 ln 10⁶| below the pinned tolerance.
    let map = horosphere_embed(1);
    let mut ok = true;
    let mut prev_gap = f64::INFINITY;
    let mut radii: Vec<u64> = (2..=100).collect();
    radii.extend([1_000, 10_000, 100_000, 1_000_000]);
    for &r in &radii {
        let rf = r as f64;
        let gap = horosphere_gap(rf);
        if gap <= 0.0 || gap >= prev_gap {
            ok = false;
        }
        if gap > (1.0 + 4.0 / (rf * rf)).ln() + tolerances::HORO_GAP_ENVELOPE_ABS {
            ok = false;
        }
        prev_gap = gap;
        if r <= 10_000 {
            let d = map
                .image_distance(&Point::lattice(&[0]), &Point::lattice(&[r as i64]))
                .map_err(ctx)?;
            let closed = (1.0 + rf * rf / 2.0).acosh();
            if (d - closed).abs() > tolerances::HORO_DIST_REL * closed.max(1.0) {
                ok = false;
            }
        }
    }
    let tail_gap = (horosphere_gap(1e6)).abs();
    if tail_gap > tolerances::HORO_ASYMP_ABS {
        ok = false;
    }
    checks.push(
        Check::claim("horosphere_distortion_envelope", ok)
            .with("gap_at_1e6", f9(tail_gap))
            .with("tolerance", f9(tolerances::HORO_ASYMP_ABS)),
    );

    // Control profile of the horosphere: coarse (lower envelope grows
    // unboundedly) with sublinear compression — finite-sample evidence.
    let pairs: Vec<(Point, Point)> = (1..=64)
        .map(|k| (Point::lattice(&[0]), Point::lattice(&[k])))
        .collect();
    let profile = control_function_profile(&map, &pairs).map_err(ctx)?;
    checks.push(
        Check::demonstration(
            "horosphere_control_profile",
            profile.coarse && profile.sublinear_compression,
        )
        .with("pairs", pairs.len().to_string())
        .with("rho_minus_last", f9(profile.rows.last().map(|r| r.lo).unwrap_or(0.0))),
    );

    // Coarse-volume lemma interval on a segment through the horosphere.
    let segment: Vec<Point> = (-40..=40).map(|k| Point::lattice(&[k])).collect();
    let all_pairs: Vec<(Point, Point)> = (0..=80)
        .map(|k| (Point::lattice(&[0]), Point::lattice(&[k])))
        .collect();
    let seg_profile = control_function_profile(&map, &all_pairs).map_err(ctx)?;
    let volume = coarse_volume_report(&map, &segment, 2.0, &seg_profile).map_err(ctx)?;
    checks.push(
        Check::demonstration("coarse_volume_interval", volume.within_bounds)
            .with("vol_x", format!("[{},{}]", volume.vol_x.0, volume.vol_x.1))
            .with("vol_y", format!("[{},{}]", volume.vol_y.0, volume.vol_y.1))
            .with("alpha", f9(volume.alpha))
            .with("beta", f9(volume.beta)),
    );

    // Neighborhood volumes: Vol^ε(N_δ(A)) ≤ β^ε(δ+ε)·Vol^ε(A) on random
    // lattice subsets.
    let z2 = ModelSpace::Lattice { n: 2 };
    let (ok, bad) = run_trials(trials, |_| {
        let a_set = sample::random_lattice_subset(&mut rng, 2, 5, 12);
        let report = neighborhood_check(&z2, &a_set, 2.0, 1.0)?;
        Ok::<_, SpaceError>(report.ok)
    })
    .map_err(ctx)?;
    checks.push(note_trials(
        Check::claim("neighborhood_volume_bound", ok),
        trials,
        bad,
    ));

    // Exponential growth rate of T₃: fitted slope of ln|B(r)| ≈ ln 2.
    let counts = ball_cardinalities(&ModelSpace::RegularTree { degree: 3 }, 12).map_err(ctx)?;
    let xs: Vec<f64> = (6..=12).map(|r| r as f64).collect();
    let ys: Vec<f64> = (6..=12).map(|r| (counts[r] as f64).ln()).collect();
    let (slope, _) = linear_fit(&xs, &ys);
    let rate_ok = (slope - 2f64.ln()).abs() <= tolerances::GROWTH_RATE_REL * 2f64.ln();
    checks.push(
        Check::demonstration("tree_growth_rate", rate_ok)
            .with("fitted_rate", f9(slope))
            .with("ln2", f9(2f64.ln())),
    );

    Ok(SuiteReport {
        name: "spaces".to_string(),
        checks,
    })
}
