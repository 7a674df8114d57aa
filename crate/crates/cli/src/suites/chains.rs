//! Chain-calculus suite: boundary identities, reflection laws, face sums,
//! splitting decompositions, Gram masses, and canonical serialization.

use super::{f9, note_trials, run_trials, SuiteAbort};
use crate::config::RunConfig;
use crate::report::{Check, SuiteReport};
use coarse_toolkit::chain_calculus::{
    chain_from_json, chain_mass, chain_to_json, decompose_parallelogram, gram_sq_volume,
    linearly_independent, oriented_form, parallelepiped, parallelogram, parallelogram_face_sum,
    reflect_identity_check, reflect_identity_iterated_check, sample, ChainError, ChainJson,
    Vector,
};
use coarse_toolkit::rational::sqrt_f64;
use coarse_toolkit::tolerances;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Frozen canonical rendering of the unit-square parallelogram
/// P¹((0,0); e₁, e₂): left, bottom, top, right edges in canonical order.
const UNIT_SQUARE_JSON: &str = "{\"degree\":1,\"dim\":2,\"terms\":[\
 {\"coefficient\":-1,\"vertices\":[[\"0/1\",\"0/1\"],[\"0/1\",\"1/1\"]]},\
 {\"coefficient\":1,\"vertices\":[[\"0/1\",\"0/1\"],[\"1/1\",\"0/1\"]]},\
 {\"coefficient\":-1,\"vertices\":[[\"0/1\",\"1/1\"],[\"1/1\",\"1/1\"]]},\
 {\"coefficient\":1,\"vertices\":[[\"1/1\",\"0/1\"],[\"1/1\",\"1/1\"]]}]}";

fn ctx(e: impl std::fmt::Display) -> SuiteAbort {
    SuiteAbort::new("chains", e)
}

pub fn run(cfg: &RunConfig) -> Result<SuiteReport, SuiteAbort> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let trials = cfg.trials as usize;
    let n_max = cfg.n_max.max(1);
    let n_hi = n_max.max(2); // boundary/face-sum checks need degree ≥ 2
    let mut checks = Vec::new();

    // ∂P^{n−1} = ∂∂C^n = 0 at the raw ordered-tuple level.
    let (ok, bad) = run_trials(trials, |_| {
        let n = rng.gen_range(2..=n_hi);
        let x = sample::random_vector(&mut rng, n + 1);
        let u = sample::random_vectors(&mut rng, n + 1, n);
        Ok::<_, ChainError>(parallelogram(&x, &u)?.boundary()?.is_zero())
    })
    .map_err(ctx)?;
    checks.push(
        note_trials(Check::claim("boundary_squares_to_zero", ok), trials, bad)
            .with("n_range", format!("2..={n_hi}")),
    );

    // C^n carries ≤ n! simplices, exactly n! for independent spans.
    let (ok, bad) = run_trials(trials, |_| {
        let n = rng.gen_range(1..=n_max);
        let x = sample::random_vector(&mut rng, n + 1);
        let u = sample::random_vectors(&mut rng, n + 1, n);
        let c = parallelepiped(&x, &u)?;
        let fact: u64 = (1..=n as u64).product();
        Ok::<_, ChainError>(
            c.multiplicity() <= fact
                && (!linearly_independent(&u) || c.multiplicity() == fact),
        )
    })
    .map_err(ctx)?;
    checks.push(note_trials(
        Check::claim("multiplicity_factorial_bound", ok),
        trials,
        bad,
    ));

    // Single-wall reflection, as geometric chains.
    let (ok, bad) = run_trials(trials, |_| {
        let n = rng.gen_range(1..=n_max);
        let x = sample::random_vector(&mut rng, n + 1);
        let u = sample::random_vectors(&mut rng, n + 1, n);
        let k = rng.gen_range(1..=n);
        reflect_identity_check(&x, &u, k)
    })
    .map_err(ctx)?;
    checks.push(note_trials(
        Check::claim("reflection_identity_currents", ok),
        trials,
        bad,
    ));

    // Iterated (point) reflection, exact as oriented chains.
    let (ok, bad) = run_trials(trials, |_| {
        let n = rng.gen_range(1..=n_max);
        let x = sample::random_vector(&mut rng, n + 1);
        let u = sample::random_vectors(&mut rng, n + 1, n);
        reflect_identity_iterated_check(&x, &u)
    })
    .map_err(ctx)?;
    checks.push(note_trials(
        Check::claim("iterated_reflection_oriented", ok),
        trials,
        bad,
    ));

    // The 2n-face sum reconstructs P^{n−1}(x; u).
    let (ok, bad) = run_trials(trials, |_| {
        let n = rng.gen_range(2..=n_hi);
        let x = sample::random_vector(&mut rng, n + 1);
        let u = sample::random_vectors(&mut rng, n + 1, n);
        let fs = parallelogram_face_sum(&x, &u)?;
        Ok::<_, ChainError>(fs.faces.len() == 2 * n && fs.reconstructs())
    })
    .map_err(ctx)?;
    checks.push(note_trials(
        Check::claim("face_sum_reconstructs", ok),
        trials,
        bad,
    ));

    // Splitting decomposition: piece/face counts, cycle residual, exact
    // closed-form assembly, and the 2n(p+1)-face mass bound.
    let (ok, bad) = run_trials(trials, |_| {
        let n = rng.gen_range(1..=n_max.saturating_sub(1).max(1));
        let dim = n + 2;
        let x = sample::random_vector(&mut rng, dim);
        let u = sample::random_vectors(&mut rng, dim, n + 1);
        let p = rng.gen_range(1..=3);
        let parts = sample::random_parts(&mut rng, u.last().unwrap(), p);
        let d = decompose_parallelogram(&x, &u, &parts)?;
        let mass = chain_mass(&oriented_form(&d.residual)).total;
        let bound = d.residual_mass_bound();
        Ok::<_, ChainError>(
            d.pieces.len() == p
                && d.faces.len() == 2 * n * (p + 1)
                && d.residual.boundary()?.is_zero()
                && d.assembly_matches_residual()
                && mass <= bound * (1.0 + tolerances::RESIDUAL_MASS_REL) + 1e-12,
        )
    })
    .map_err(ctx)?;
    checks.push(note_trials(
        Check::claim("decomposition_closed_form", ok),
        trials,
        bad,
    ));

    // Σ|aᵢ|·vol(σᵢ) over C^n(x; u) equals √det Gram(u).
    let mut worst_rel = 0.0f64;
    let (ok, bad) = run_trials(trials, |_| {
        let n = rng.gen_range(1..=n_max);
        let x = sample::random_vector(&mut rng, n + 1);
        let u = sample::random_vectors(&mut rng, n + 1, n);
        let mass = chain_mass(&parallelepiped(&x, &u)?).total;
        let exact = sqrt_f64(&gram_sq_volume(&u));
        let rel = (mass - exact).abs() / exact.max(1.0);
        worst_rel = worst_rel.max(rel);
        Ok::<_, ChainError>(rel <= tolerances::MASS_GRAM_REL)
    })
    .map_err(ctx)?;
    checks.push(
        note_trials(Check::claim("mass_matches_gram", ok), trials, bad)
            .with("worst_rel_error", f9(worst_rel))
            .with("tolerance", f9(tolerances::MASS_GRAM_REL)),
    );

    // Canonical JSON: random round-trips plus the frozen unit square.
    let (ok, bad) = run_trials(trials, |_| {
        let n = rng.gen_range(1..=n_max);
        let x = sample::random_vector(&mut rng, n + 1);
        let u = sample::random_vectors(&mut rng, n + 1, n);
        let c = parallelepiped(&x, &u)?;
        let s = serde_json::to_string(&chain_to_json(&c)).expect("chain serializes");
        let j: ChainJson = serde_json::from_str(&s).expect("chain JSON parses");
        Ok::<_, ChainError>(chain_from_json(&j)? == c)
    })
    .map_err(ctx)?;
    let unit = parallelogram(
        &Vector::from_ints(&[0, 0]),
        &[Vector::from_ints(&[1, 0]), Vector::from_ints(&[0, 1])],
    )
    .map_err(ctx)?;
    let golden = serde_json::to_string(&chain_to_json(&unit)).expect("chain serializes");
    let frozen: String = UNIT_SQUARE_JSON.split_whitespace().collect();
    let golden_ok = golden == frozen;
    checks.push(
        note_trials(
            Check::claim("canonical_json_roundtrip", ok && golden_ok),
            trials,
            bad,
        )
        .with("unit_square_frozen", if golden_ok { "match" } else { "mismatch" }),
    );

    Ok(SuiteReport {
        name: "chains".to_string(),
        checks,
    })
}
