//! Property tests for the exact chain calculus: boundary identities,
//! reflection laws, face sums, decompositions, and mass formulas on
//! randomized rational inputs.

use coarse_toolkit::chain_calculus::{
    chain_mass, cone, decompose_parallelogram, gram_sq_volume, linearly_independent,
    oriented_form, parallelepiped, parallelogram, parallelogram_face_sum, reflect_identity_check,
    reflect_identity_iterated_check, Vector,
};
use coarse_toolkit::rational::{rat, sqrt_f64, Rat};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn vector(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(small_rat(), dim).prop_map(Vector::new)
}

fn vectors(dim: usize, n: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(vector(dim), n)
}

/// Anchor plus `n` spanning vectors in ambient dimension `n + 1`.
fn instance(ns: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Vector, Vec<Vector>)> {
    ns.prop_flat_map(|n| {
        let dim = n + 1;
        (vector(dim), vectors(dim, n))
    })
}

/// Anchor, `n + 1` spanning vectors, and a `p`-part splitting of the last
/// vector (the last part closes the sum exactly).
fn decomposition_instance() -> impl Strategy<Value = (Vector, Vec<Vector>, Vec<Vector>)> {
    (1usize..=2, 1usize..=3).prop_flat_map(|(n, p)| {
        let dim = n + 2;
        (vector(dim), vectors(dim, n + 1), vectors(dim, p - 1)).prop_map(
            move |(x, u, mut parts)| {
                let mut last = u.last().unwrap().clone();
                for a in &parts {
                    last = last.sub(a);
                }
                parts.push(last);
                (x, u, parts)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// ∂∂C^n = 0 at the raw ordered-tuple level.
    #[test]
    fn boundary_of_boundary_vanishes((x, u) in instance(2..=3)) {
        let p = parallelogram(&x, &u).unwrap();
        prop_assert!(p.boundary().unwrap().is_zero());
    }

    /// C^n carries at most n! simplices, exactly n! when the spanning
    /// vectors are linearly independent.
    #[test]
    fn multiplicity_bounded_by_factorial((x, u) in instance(1..=3)) {
        let c = parallelepiped(&x, &u).unwrap();
        let fact: u64 = (1..=u.len() as u64).product();
        prop_assert!(c.multiplicity() <= fact);
        if linearly_independent(&u) {
            prop_assert_eq!(c.multiplicity(), fact);
        }
    }

    /// ∂[x, c] = c − [x, ∂c] for the cone construction, tuple-exactly.
    #[test]
    fn cone_boundary_identity(((x, u), apex) in instance(2..=3).prop_flat_map(|(x, u)| {
        let dim = x.dim();
        (Just((x, u)), vector(dim))
    })) {
        let c = parallelogram(&x, &u).unwrap();
        let lhs = cone(&apex, &c).unwrap().boundary().unwrap();
        let rhs = c.sub(&cone(&apex, &c.boundary().unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Single-vector reflection holds as geometric chains for every wall.
    #[test]
    fn reflection_holds_as_currents(((x, u), k) in instance(1..=3).prop_flat_map(|(x, u)| {
        let n = u.len();
        (Just((x, u)), 1usize..=n)
    })) {
        prop_assert!(reflect_identity_check(&x, &u, k).unwrap());
    }

    /// The iterated (point) reflection is exact as oriented chains.
    #[test]
    fn iterated_reflection_is_oriented_exact((x, u) in instance(1..=3)) {
        prop_assert!(reflect_identity_iterated_check(&x, &u).unwrap());
    }

    /// The face-sum lemma reconstructs P^{n−1}(x; u) from its 2n faces.
    #[test]
    fn face_sum_reconstructs((x, u) in instance(2..=3)) {
        let fs = parallelogram_face_sum(&x, &u).unwrap();
        prop_assert_eq!(fs.faces.len(), 2 * u.len());
        prop_assert!(fs.reconstructs());
    }

    /// Decomposing P^n along a p-part splitting yields p pieces, a cycle
    /// residual, the closed-form 2n(p+1) faces assembling it, and the
    /// coarse mass bound on its oriented content.
    #[test]
    fn decomposition_closed_form((x, u, parts) in decomposition_instance()) {
        let n = u.len() - 1;
        let p = parts.len();
        let d = decompose_parallelogram(&x, &u, &parts).unwrap();
        prop_assert_eq!(d.pieces.len(), p);
        prop_assert_eq!(d.faces.len(), 2 * n * (p + 1));
        prop_assert!(d.residual.boundary().unwrap().is_zero());
        prop_assert!(d.assembly_matches_residual());
        let oriented_mass = chain_mass(&oriented_form(&d.residual)).total;
        prop_assert!(oriented_mass <= d.residual_mass_bound() * (1.0 + 1e-9) + 1e-9);
    }

    /// Σ |a_i|·vol(σ_i) over C^n(x; u) equals the exact Gram volume
    /// √det(⟨u_i, u_j⟩) of the parallelepiped.
    #[test]
    fn mass_matches_gram_volume((x, u) in instance(1..=3)) {
        let c = parallelepiped(&x, &u).unwrap();
        let mass = chain_mass(&c).total;
        let gram = sqrt_f64(&gram_sq_volume(&u));
        prop_assert!(
            (mass - gram).abs() <= 1e-9 * gram.max(1.0),
            "mass {mass} vs gram {gram}"
        );
    }
}
