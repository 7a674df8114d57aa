//! Weyl-sector suite: root-system well-formedness, dominance projection,
//! exact sector coordinates, the cone norm inequality, and the pigeonhole
//! segment bound.

use super::{note_trials, run_trials, SuiteAbort};
use crate::config::RunConfig;
use crate::report::{Check, SuiteReport};
use coarse_toolkit::weyl::{
    cone_norm_inequality, dominance_project, root_system, sample, sector_coordinates,
    sector_generators, segment_pigeonhole, unproject, Family, RootSystem, SectorGenerators,
    WeylError,
};
use num::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SYSTEMS: [(Family, usize); 9] = [
    (Family::A, 2),
    (Family::A, 3),
    (Family::A, 4),
    (Family::B, 2),
    (Family::B, 3),
    (Family::B, 4),
    (Family::C, 3),
    (Family::D, 4),
    (Family::G, 2),
];

fn expected_root_count(family: Family, rank: usize) -> usize {
    match family {
        Family::A => rank * (rank + 1),
        Family::B | Family::C => 2 * rank * rank,
        Family::D => 2 * rank * (rank - 1),
        Family::G => 12,
    }
}

fn ctx(e: impl std::fmt::Display) -> SuiteAbort {
    SuiteAbort::new("weyl", e)
}

pub fn run(cfg: &RunConfig) -> Result<SuiteReport, SuiteAbort> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let trials = cfg.trials as usize;
    let mut checks = Vec::new();

    let mut systems: Vec<(RootSystem, SectorGenerators)> = Vec::new();
    for (family, rank) in SYSTEMS {
        let rs = root_system(family, rank).map_err(ctx)?;
        let sg = sector_generators(&rs).map_err(ctx)?;
        systems.push((rs, sg));
    }

    // Root counts match the classical values; simple bases are obtuse.
    let mut ok = true;
    let mut labels = Vec::new();
    for ((family, rank), (rs, _)) in SYSTEMS.iter().zip(&systems) {
        labels.push(format!("{}:{}", rs.label(), rs.roots().len()));
        if rs.roots().len() != expected_root_count(*family, *rank) || rs.rank() != *rank {
            ok = false;
        }
        let gram = rs.basis_gram();
        for i in 0..rs.rank() {
            for j in 0..rs.rank() {
                if i != j && gram[i][j].is_positive() {
                    ok = false;
                }
            }
        }
    }
    checks.push(Check::claim("root_systems_wellformed", ok).with("root_counts", labels.join(",")));

    // Dominance projection: lands in the sector, preserves ‖·‖² exactly,
    // inverts through its reflection word, fixes dominant vectors.
    let (ok, bad) = run_trials(trials, |_| {
        let (rs, sg) = &systems[rng.gen_range(0..systems.len())];
        let v = sample::random_in_span(&mut rng, sg);
        let (w, word) = dominance_project(&v, rs)?;
        let fixed = !rs.is_dominant(&v) || (word.is_empty() && w == v);
        Ok::<_, WeylError>(
            rs.is_dominant(&w)
                && w.norm_sq() == v.norm_sq()
                && unproject(&w, rs, &word) == v
                && fixed,
        )
    })
    .map_err(ctx)?;
    checks.push(note_trials(
        Check::claim("dominance_projection_roundtrip", ok),
        trials,
        bad,
    ));

    // Exact nonnegative sector coordinates reconstruct dominant vectors.
    let (ok, bad) = run_trials(trials, |_| {
        let (_, sg) = &systems[rng.gen_range(0..systems.len())];
        let w = sample::random_dominant(&mut rng, sg);
        let coords = sector_coordinates(&w, sg)?;
        Ok::<_, WeylError>(
            coords.coefficients.iter().all(|c| !c.is_negative())
                && coords.reconstruct(sg) == w,
        )
    })
    .map_err(ctx)?;
    checks.push(note_trials(
        Check::claim("sector_coordinates_roundtrip", ok),
        trials,
        bad,
    ));

    // ‖v‖² ≥ Σ_{j∈J} δ_j²‖e_j‖² for random index subsets.
    let (ok, bad) = run_trials(trials, |_| {
        let (_, sg) = &systems[rng.gen_range(0..systems.len())];
        let w = sample::random_dominant(&mut rng, sg);
        let j_set: Vec<usize> = (0..sg.rank()).filter(|_| rng.gen_bool(0.5)).collect();
        cone_norm_inequality(&w, sg, &j_set)
    })
    .map_err(ctx)?;
    checks.push(note_trials(
        Check::claim("cone_norm_inequality", ok),
        trials,
        bad,
    ));

    // Pigeonhole: rank-many sub-segments, each no longer than the whole,
    // best image distance ≥ whole/p for a metric image distance.
    let (ok, bad) = run_trials(trials, |_| {
        let (_, sg) = &systems[rng.gen_range(0..systems.len())];
        let a = sample::random_in_span(&mut rng, sg);
        let b = sample::random_in_span(&mut rng, sg);
        if a == b {
            return Ok::<_, WeylError>(true);
        }
        let ph = segment_pigeonhole(&a, &b, sg, |x, y| x.sub(y).norm_f64())?;
        Ok(ph.segments.len() == sg.rank()
            && ph.norm_bound_exact
            && ph.bound_satisfied
            && ph.best_segment().image_distance >= ph.bound - 1e-12)
    })
    .map_err(ctx)?;
    checks.push(note_trials(
        Check::claim("pigeonhole_segment_bound", ok),
        trials,
        bad,
    ));

    Ok(SuiteReport {
        name: "weyl".to_string(),
        checks,
    })
}
