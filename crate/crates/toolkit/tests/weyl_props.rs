//! Property tests for the Weyl sector machinery: dominance projection,
//! exact sector coordinates, the cone norm inequality, and the pigeonhole
//! segment selection, across the supported root systems.

use coarse_toolkit::chain_calculus::Vector;
use coarse_toolkit::rational::{rat, Rat};
use coarse_toolkit::weyl::{
    cone_norm_inequality, dominance_project, root_system, sector_coordinates, sector_generators,
    segment_pigeonhole, unproject, Family, RootSystem,
};
use num::Signed;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn system() -> impl Strategy<Value = RootSystem> {
    prop::sample::select(vec![
        (Family::A, 2),
        (Family::A, 3),
        (Family::B, 2),
        (Family::B, 3),
        (Family::C, 3),
        (Family::D, 4),
        (Family::G, 2),
    ])
    .prop_map(|(family, rank)| root_system(family, rank).unwrap())
}

/// Rational combination of the simple basis: an arbitrary span vector.
fn span_vector(rs: &RootSystem, coeffs: &[Rat]) -> Vector {
    let mut v = Vector::zero(rs.ambient_dim());
    for (c, h) in coeffs.iter().zip(rs.simple_basis()) {
        v = v.add(&h.scale(c));
    }
    v
}

fn system_and_coeffs() -> impl Strategy<Value = (RootSystem, Vec<Rat>)> {
    system().prop_flat_map(|rs| {
        let rank = rs.rank();
        (Just(rs), prop::collection::vec(small_rat(), rank))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Dominance projection lands in the closed sector, preserves the
    /// squared norm exactly, and its reflection word inverts back to v.
    #[test]
    fn dominance_projection_roundtrip((rs, cs) in system_and_coeffs()) {
        let v = span_vector(&rs, &cs);
        let (w, word) = dominance_project(&v, &rs).unwrap();
        prop_assert!(rs.is_dominant(&w));
        prop_assert_eq!(w.norm_sq(), v.norm_sq());
        prop_assert_eq!(unproject(&w, &rs, &word), v.clone());
        if rs.is_dominant(&v) {
            prop_assert!(word.is_empty());
            prop_assert_eq!(w, v);
        }
    }

    /// Dominant vectors have exact nonnegative sector coordinates that
    /// reconstruct the vector.
    #[test]
    fn sector_coordinates_roundtrip((rs, cs) in system_and_coeffs()) {
        let v = span_vector(&rs, &cs);
        let (w, _) = dominance_project(&v, &rs).unwrap();
        let sg = sector_generators(&rs).unwrap();
        let coords = sector_coordinates(&w, &sg).unwrap();
        prop_assert!(coords.coefficients.iter().all(|c| !c.is_negative()));
        prop_assert_eq!(coords.reconstruct(&sg), w);
    }

    /// ‖v‖² ≥ Σ_{j∈J} δ_j²‖e_j‖² for every index subset J on the sector.
    #[test]
    fn cone_norm_inequality_holds(((rs, cs), mask) in system_and_coeffs()
        .prop_flat_map(|(rs, cs)| {
            let rank = rs.rank();
            (Just((rs, cs)), prop::collection::vec(any::<bool>(), rank))
        }))
    {
        let v = span_vector(&rs, &cs);
        let (w, _) = dominance_project(&v, &rs).unwrap();
        let sg = sector_generators(&rs).unwrap();
        let j_set: Vec<usize> = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &keep)| keep.then_some(i))
            .collect();
        prop_assert!(cone_norm_inequality(&w, &sg, &j_set).unwrap());
    }

    /// Simple reflections are norm-preserving involutions.
    #[test]
    fn simple_reflection_involution(((rs, cs), wall) in system_and_coeffs()
        .prop_flat_map(|(rs, cs)| {
            let rank = rs.rank();
            (Just((rs, cs)), 0..rank)
        }))
    {
        let v = span_vector(&rs, &cs);
        let s = rs.simple_reflection(&v, wall);
        prop_assert_eq!(s.norm_sq(), v.norm_sq());
        prop_assert_eq!(rs.simple_reflection(&s, wall), v);
    }

    /// The pigeonhole step: rank-many sub-segments walk from a to b, each
    /// no longer than the whole, and the best image distance meets the
    /// 1/p lower bound for a genuine metric.
    #[test]
    fn pigeonhole_segments_cover_and_bound((rs, ca, cb) in system()
        .prop_flat_map(|rs| {
            let rank = rs.rank();
            (
                Just(rs),
                prop::collection::vec(small_rat(), rank),
                prop::collection::vec(small_rat(), rank),
            )
        }))
    {
        let a = span_vector(&rs, &ca);
        let b = span_vector(&rs, &cb);
        prop_assume!(a != b);
        let sg = sector_generators(&rs).unwrap();
        let ph = segment_pigeonhole(&a, &b, &sg, |x, y| x.sub(y).norm_f64()).unwrap();
        prop_assert_eq!(ph.segments.len(), sg.rank());
        prop_assert_eq!(&ph.segments.first().unwrap().start, &a);
        prop_assert_eq!(&ph.segments.last().unwrap().end, &b);
        prop_assert!(ph.norm_bound_exact);
        prop_assert!(ph.bound_satisfied);
        let whole = b.sub(&a).norm_f64();
        prop_assert!((ph.whole_image_distance - whole).abs() <= 1e-12 * whole.max(1.0));
        prop_assert!(ph.best_segment().image_distance >= ph.bound - 1e-12);
    }
}
