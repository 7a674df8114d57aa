//! Filling suite: cubical boundary identities, co-area slicing, the exact
//! planar winding filler, optimal zero-cycle transport, and the scaling
//! experiments behind the filling exponents.

use super::{f9, note_trials, run_trials, SuiteAbort};
use crate::config::RunConfig;
use crate::report::{Check, SuiteReport};
use coarse_toolkit::filling::{
    coarea_profile, cubical_boundary, exhaustive_min_transport, fill_one_cycle_plane,
    fill_zero_cycle, filling_scaling_experiment, rectangle_boundary, rectangle_region, sample,
    FillError, Optimality, ScalingFamily, ZeroCycle,
};
use coarse_toolkit::spaces::{sample as space_sample, ModelSpace};
use coarse_toolkit::tolerances;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctx(e: impl std::fmt::Display) -> SuiteAbort {
    SuiteAbort::new("filling", e)
}

pub fn run(cfg: &RunConfig) -> Result<SuiteReport, SuiteAbort> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let trials = cfg.trials as usize;
    let mut checks = Vec::new();

    // ∂∂ = 0 on random cubical 2-chains.
    let (ok, bad) = run_trials(trials, |_| {
        let c = sample::random_cubical_2chain(&mut rng, 5, 12);
        Ok::<_, FillError>(cubical_boundary(&cubical_boundary(&c)?)?.is_zero())
    })
    .map_err(ctx)?;
    checks.push(note_trials(
        Check::claim("cubical_boundary_squares_to_zero", ok),
        trials,
        bad,
    ));

    // Co-area: summed slice masses never exceed the chain mass, with
    // equality on solid regions (every cell crosses exactly one slab).
    let (ok, bad) = run_trials(trials, |_| {
        let c = sample::random_cubical_2chain(&mut rng, 5, 12);
        for axis in 0..2 {
            let (_, total) = coarea_profile(&c, axis)?;
            if total > c.mass() {
                return Ok(false);
            }
        }
        Ok::<_, FillError>(true)
    })
    .map_err(ctx)?;
    let solid = rectangle_region(3, 3);
    let (_, solid_total) = coarea_profile(&solid, 0).map_err(ctx)?;
    let solid_ok = solid_total == solid.mass() && solid_total == 9;
    checks.push(
        note_trials(Check::claim("coarea_inequality", ok && solid_ok), trials, bad)
            .with("solid_3x3", format!("{solid_total}={}", solid.mass())),
    );

    // The winding filler inverts ∂ exactly (planar 2-cycles vanish, so the
    // filler is unique); rectangles fill with mass a·b.
    let (ok, bad) = run_trials(trials, |_| {
        let w = sample::random_cubical_2chain(&mut rng, 5, 12);
        let filling = fill_one_cycle_plane(&cubical_boundary(&w)?)?;
        Ok::<_, FillError>(
            filling.filler == w
                && filling.mass == w.mass()
                && filling.optimality == Optimality::Exact,
        )
    })
    .map_err(ctx)?;
    let rect = fill_one_cycle_plane(&rectangle_boundary(5, 3)).map_err(ctx)?;
    let rect_ok = rect.mass == 15 && rect.filler == rectangle_region(5, 3);
    checks.push(
        note_trials(Check::claim("winding_filler_exact", ok && rect_ok), trials, bad)
            .with("rect_5x3_mass", rect.mass.to_string()),
    );

    // Filling [[y]] − [[x]] costs exactly d(x, y), on ℤ² and on T₃.
    let (ok, bad) = run_trials(trials, |_| {
        let z2 = ModelSpace::Lattice { n: 2 };
        let t3 = ModelSpace::RegularTree { degree: 3 };
        let (xa, ya) = (
            space_sample::random_lattice_point(&mut rng, 2, 6),
            space_sample::random_lattice_point(&mut rng, 2, 6),
        );
        let (xb, yb) = (
            space_sample::random_tree_point(&mut rng, 3, 5),
            space_sample::random_tree_point(&mut rng, 3, 5),
        );
        for (space, x, y) in [(z2, xa, ya), (t3, xb, yb)] {
            let z = ZeroCycle::pair(x.clone(), y.clone())?;
            let filling = fill_zero_cycle(&space, &z)?;
            let d = space
                .distance(&x, &y)
                .map_err(|_| FillError::Unsupported("model distance"))?;
            if filling.mass as f64 != d || !filling.boundary_matches(&z) {
                return Ok(false);
            }
        }
        Ok::<_, FillError>(true)
    })
    .map_err(ctx)?;
    checks.push(note_trials(
        Check::claim("pair_filling_is_distance", ok),
        trials,
        bad,
    ));

    // The transportation solver is exactly optimal on small multisets.
    let (ok, bad) = run_trials(trials, |_| {
        let space = ModelSpace::Lattice { n: 2 };
        let pairs = rng.gen_range(1..=3);
        let mut weights = Vec::new();
        for _ in 0..pairs {
            weights.push((space_sample::random_lattice_point(&mut rng, 2, 3), -1));
            weights.push((space_sample::random_lattice_point(&mut rng, 2, 3), 1));
        }
        let z = ZeroCycle::new(weights)?;
        let filling = fill_zero_cycle(&space, &z)?;
        let best = exhaustive_min_transport(&space, &z).expect("≤ 3 unit sources");
        Ok::<_, FillError>(
            filling.mass == best
                && filling.boundary_matches(&z)
                && filling.optimality == Optimality::Exact,
        )
    })
    .map_err(ctx)?;
    checks.push(note_trials(
        Check::claim("transport_plan_minimal", ok),
        trials,
        bad,
    ));

    // Scaling exponents: planar rectangle cycles fill quadratically, tree
    // endpoint cycles linearly (log-log fits on desk-scale sizes).
    let z2_table =
        filling_scaling_experiment(ScalingFamily::Z2Rectangles, &[40, 80, 160, 240]).map_err(ctx)?;
    let tree_table =
        filling_scaling_experiment(ScalingFamily::TreeEndpoints, &[4, 8, 16, 32, 64]).map_err(ctx)?;
    let z2_exp = z2_table.exponent.unwrap_or(f64::NAN);
    let tree_exp = tree_table.exponent.unwrap_or(f64::NAN);
    let ok = (z2_exp - 2.0).abs() <= tolerances::SCALING_EXP_ABS
        && (tree_exp - 1.0).abs() <= tolerances::SCALING_EXP_ABS;
    checks.push(
        Check::demonstration("filling_scaling_exponents", ok)
            .with("z2_exponent", f9(z2_exp))
            .with("tree_exponent", f9(tree_exp))
            .with("tolerance", f9(tolerances::SCALING_EXP_ABS)),
    );

    Ok(SuiteReport {
        name: "filling".to_string(),
        checks,
    })
}
