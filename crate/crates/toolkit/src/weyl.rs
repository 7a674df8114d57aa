//! Exact root systems, Weyl sector generators, and sector decompositions.
//!
//! Supported systems: A, B, C, D up to rank 8 (standard integer realizations)
//! and G₂, plus direct sums of those. All root and generator coordinates are
//! exact rationals (in fact primitive integer vectors), so every inner
//! product, wall test, and sector decomposition below is exact.
//!
//! The sector generators `e_1..e_p` are the maximally singular directions:
//! `e_i` spans the intersection of all walls except the i-th. The closed
//! fundamental sector is `{v : ⟨v, h_i⟩ ≥ 0 ∀i} = {Σ δ_i e_i : δ_i ≥ 0}`,
//! and the two descriptions convert exactly into each other here.

use std::collections::BTreeSet;
use std::fmt;

use num::bigint::BigInt;
use num::traits::{Signed, Zero};
use num::Integer;

use crate::chain_calculus::Vector;
use crate::linalg;
use crate::rational::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G => "G",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("unsupported system {family}{rank}")]
    UnsupportedRank { family: Family, rank: usize },
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("vector is not in the span of the simple basis")]
    NotInSpan,
    #[error("vector is outside the closed sector: wall {wall} violated")]
    OutsideSector { wall: usize },
    #[error("zero-length segment")]
    ZeroLength,
    #[error("simple basis is singular")]
    SingularBasis,
}

/// A root system in its standard exact realization, together with an obtuse
/// simple basis (⟨h_i, h_j⟩ ≤ 0 for i ≠ j).
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: String,
    ambient_dim: usize,
    roots: Vec<Vector>,
    simple_basis: Vec<Vector>,
}

impl RootSystem {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.simple_basis.len()
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn simple_basis(&self) -> &[Vector] {
        &self.simple_basis
    }

    /// Gram matrix of the simple basis, exact.
    pub fn basis_gram(&self) -> Vec<Vec<Rat>> {
        self.simple_basis
            .iter()
            .map(|a| self.simple_basis.iter().map(|b| a.dot(b)).collect())
            .collect()
    }

    /// Exact reflection in the wall orthogonal to simple root `i` (0-based):
    /// s_i(v) = v − (2⟨v,h_i⟩/⟨h_i,h_i⟩)·h_i. Preserves ‖·‖² exactly.
    pub fn simple_reflection(&self, v: &Vector, i: usize) -> Vector {
        let h = &self.simple_basis[i];
        let coeff = v.dot(h) * Rat::from_integer(BigInt::from(2)) / h.norm_sq();
        v.sub(&h.scale(&coeff))
    }

    /// Whether v lies in the closed fundamental sector (all ⟨v,h_i⟩ ≥ 0).
    pub fn is_dominant(&self, v: &Vector) -> bool {
        self.simple_basis
            .iter()
            .all(|h| !v.dot(h).is_negative())
    }
}

fn unit(dim: usize, i: usize, c: i64) -> Vector {
    let mut coords = vec![0i64; dim];
    coords[i] = c;
    Vector::from_ints(&coords)
}

fn with_negatives(mut roots: Vec<Vector>) -> Vec<Vector> {
    let negs: Vec<Vector> = roots.iter().map(Vector::neg).collect();
    roots.extend(negs);
    roots
}

/// Builds the standard exact realization of an irreducible system.
/// A–D support ranks up to 8 (A from 1, B/C from 1, D from 2); G is rank 2.
pub fn root_system(family: Family, rank: usize) -> Result<RootSystem, WeylError> {
    let bad = || WeylError::UnsupportedRank { family, rank };
    match family {
        Family::A => {
            if rank == 0 || rank > 8 {
                return Err(bad());
            }
            let dim = rank + 1;
            let mut roots = Vec::new();
            for i in 0..dim {
                for j in 0..dim {
                    if i != j {
                        let mut coords = vec![0i64; dim];
                        coords[i] = 1;
                        coords[j] = -1;
                        roots.push(Vector::from_ints(&coords));
                    }
                }
            }
            let basis = (0..rank)
                .map(|i| {
                    let mut coords = vec![0i64; dim];
                    coords[i] = 1;
                    coords[i + 1] = -1;
                    Vector::from_ints(&coords)
                })
                .collect();
            Ok(RootSystem {
                label: format!("A{rank}"),
                ambient_dim: dim,
                roots,
                simple_basis: basis,
            })
        }
        Family::B | Family::C => {
            if rank == 0 || rank > 8 {
                return Err(bad());
            }
            let dim = rank;
            let axis_len = if family == Family::B { 1 } else { 2 };
            let mut roots = Vec::new();
            for i in 0..dim {
                roots.push(unit(dim, i, axis_len));
            }
            for i in 0..dim {
                for j in (i + 1)..dim {
                    for (si, sj) in [(1, 1), (1, -1)] {
                        let mut coords = vec![0i64; dim];
                        coords[i] = si;
                        coords[j] = sj;
                        roots.push(Vector::from_ints(&coords));
                    }
                }
            }
            let roots = with_negatives(roots);
            let mut basis: Vec<Vector> = (0..rank.saturating_sub(1))
                .map(|i| {
                    let mut coords = vec![0i64; dim];
                    coords[i] = 1;
                    coords[i + 1] = -1;
                    Vector::from_ints(&coords)
                })
                .collect();
            basis.push(unit(dim, rank - 1, axis_len));
            Ok(RootSystem {
                label: format!("{family}{rank}"),
                ambient_dim: dim,
                roots,
                simple_basis: basis,
            })
        }
        Family::D => {
            if rank < 2 || rank > 8 {
                return Err(bad());
            }
            let dim = rank;
            let mut roots = Vec::new();
            for i in 0..dim {
                for j in (i + 1)..dim {
                    for (si, sj) in [(1, 1), (1, -1)] {
                        let mut coords = vec![0i64; dim];
                        coords[i] = si;
                        coords[j] = sj;
                        roots.push(Vector::from_ints(&coords));
                    }
                }
            }
            let roots = with_negatives(roots);
            let mut basis: Vec<Vector> = (0..rank - 1)
                .map(|i| {
                    let mut coords = vec![0i64; dim];
                    coords[i] = 1;
                    coords[i + 1] = -1;
                    Vector::from_ints(&coords)
                })
                .collect();
            let mut last = vec![0i64; dim];
            last[rank - 2] = 1;
            last[rank - 1] = 1;
            basis.push(Vector::from_ints(&last));
            Ok(RootSystem {
                label: format!("D{rank}"),
                ambient_dim: dim,
                roots,
                simple_basis: basis,
            })
        }
        Family::G => {
            if rank != 2 {
                return Err(bad());
            }
            // Realized in the sum-zero plane of ℝ³: short roots are the A₂
            // roots (norm² 2), long roots the (2,−1,−1) type (norm² 6).
            let short = vec![
                Vector::from_ints(&[1, -1, 0]),
                Vector::from_ints(&[0, 1, -1]),
                Vector::from_ints(&[1, 0, -1]),
            ];
            let long = vec![
                Vector::from_ints(&[2, -1, -1]),
                Vector::from_ints(&[-1, 2, -1]),
                Vector::from_ints(&[-1, -1, 2]),
            ];
            let roots = with_negatives([short, long].concat());
            let basis = vec![
                Vector::from_ints(&[1, -1, 0]),
                Vector::from_ints(&[-2, 1, 1]),
            ];
            Ok(RootSystem {
                label: "G2".to_string(),
                ambient_dim: 3,
                roots,
                simple_basis: basis,
            })
        }
    }
}

/// Direct sum: roots and simple basis of either factor, embedded in the
/// orthogonal sum of the ambient spaces. Sectors of a product are products
/// of sectors, so the generators concatenate too.
pub fn direct_sum(a: &RootSystem, b: &RootSystem) -> RootSystem {
    let dim = a.ambient_dim + b.ambient_dim;
    let embed_a = |v: &Vector| {
        let mut coords = v.coords().to_vec();
        coords.resize(dim, Rat::zero());
        Vector::new(coords)
    };
    let embed_b = |v: &Vector| {
        let mut coords = vec![Rat::zero(); a.ambient_dim];
        coords.extend_from_slice(v.coords());
        Vector::new(coords)
    };
    let mut roots: Vec<Vector> = a.roots.iter().map(embed_a).collect();
    roots.extend(b.roots.iter().map(embed_b));
    let mut basis: Vec<Vector> = a.simple_basis.iter().map(embed_a).collect();
    basis.extend(b.simple_basis.iter().map(embed_b));
    RootSystem {
        label: format!("{}+{}", a.label, b.label),
        ambient_dim: dim,
        roots,
        simple_basis: basis,
    }
}

/// The maximally singular generators e_1..e_p of the fundamental sector.
#[derive(Clone, Debug)]
pub struct SectorGenerators {
    parent: RootSystem,
    generators: Vec<Vector>,
}

impl SectorGenerators {
    pub fn parent(&self) -> &RootSystem {
        &self.parent
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray.
fn primitive_integer(v: &Vector) -> Vector {
    let mut denom_lcm = BigInt::from(1);
    for c in v.coords() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = v
        .coords()
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for n in &ints {
        g = g.gcd(n);
    }
    if g.is_zero() {
        return v.clone();
    }
    Vector::new(ints.iter().map(|n| Rat::from_integer(n / &g)).collect())
}

/// Solves, for each i, the exact system ⟨e_i, h_k⟩ = 0 (k ≠ i),
/// ⟨e_i, h_i⟩ > 0 with e_i in the span of the simple basis, and scales each
/// solution to a primitive integer vector.
pub fn sector_generators(rs: &RootSystem) -> Result<SectorGenerators, WeylError> {
    let p = rs.rank();
    let gram = rs.basis_gram();
    let mut generators = Vec::with_capacity(p);
    for i in 0..p {
        // e_i = Σ_j c_j h_j with Gram·c = δ_i solves the wall conditions.
        let mut rhs = vec![Rat::zero(); p];
        rhs[i] = Rat::from_integer(BigInt::from(1));
        let c = linalg::solve(&gram, &rhs).ok_or(WeylError::SingularBasis)?;
        let mut e = Vector::zero(rs.ambient_dim);
        for (cj, h) in c.iter().zip(&rs.simple_basis) {
            e = e.add(&h.scale(cj));
        }
        let e = primitive_integer(&e);
        debug_assert!(e.dot(&rs.simple_basis[i]).is_positive());
        generators.push(e);
    }
    Ok(SectorGenerators {
        parent: rs.clone(),
        generators,
    })
}

/// Exact nonnegative coordinates of a dominant vector in the sector
/// generators: `v = basepoint-free Σ δ_i e_i`.
#[derive(Clone, Debug)]
pub struct SectorCoordinates {
    pub coefficients: Vec<Rat>,
    pub basepoint: Vector,
}

impl SectorCoordinates {
    /// basepoint + Σ δ_i e_i, for round-trip checks.
    pub fn reconstruct(&self, sg: &SectorGenerators) -> Vector {
        let mut v = self.basepoint.clone();
        for (d, e) in self.coefficients.iter().zip(sg.generators()) {
            v = v.add(&e.scale(d));
        }
        v
    }
}

/// Writes `v = Σ δ_i e_i` with exact δ_i ≥ 0. Errors when v is outside the
/// closed sector (reporting the violated wall, 0-based) or not in the span
/// of the simple basis.
pub fn sector_coordinates(
    v: &Vector,
    sg: &SectorGenerators,
) -> Result<SectorCoordinates, WeylError> {
    let rs = &sg.parent;
    if v.dim() != rs.ambient_dim {
        return Err(WeylError::DimMismatch {
            expected: rs.ambient_dim,
            got: v.dim(),
        });
    }
    // ⟨v, h_k⟩ = δ_k ⟨e_k, h_k⟩ since e_i ⊥ h_k for i ≠ k.
    let mut coefficients = Vec::with_capacity(sg.rank());
    for (k, (e, h)) in sg.generators.iter().zip(&rs.simple_basis).enumerate() {
        let num = v.dot(h);
        if num.is_negative() {
            return Err(WeylError::OutsideSector { wall: k });
        }
        coefficients.push(num / e.dot(h));
    }
    let coords = SectorCoordinates {
        coefficients,
        basepoint: Vector::zero(rs.ambient_dim),
    };
    if &coords.reconstruct(sg) != v {
        return Err(WeylError::NotInSpan);
    }
    Ok(coords)
}

/// Maps v into the closed fundamental sector by simple reflections (lowest
/// violated wall first). Returns the dominant representative and the
/// reflection word in application order (0-based wall indices). Preserves
/// ‖·‖² exactly; terminates because the Weyl orbit is finite (visited-set
/// guard).
pub fn dominance_project(
    v: &Vector,
    rs: &RootSystem,
) -> Result<(Vector, Vec<usize>), WeylError> {
    if v.dim() != rs.ambient_dim {
        return Err(WeylError::DimMismatch {
            expected: rs.ambient_dim,
            got: v.dim(),
        });
    }
    let mut w = v.clone();
    let mut word = Vec::new();
    let mut visited: BTreeSet<Vector> = BTreeSet::new();
    loop {
        let violated = rs
            .simple_basis
            .iter()
            .position(|h| w.dot(h).is_negative());
        match violated {
            None => return Ok((w, word)),
            Some(i) => {
                if !visited.insert(w.clone()) {
                    // Unreachable for genuine reflection orbits; guards
                    // against a malformed basis.
                    return Err(WeylError::SingularBasis);
                }
                w = rs.simple_reflection(&w, i);
                word.push(i);
            }
        }
    }
}

/// Applies the inverse of a dominance-projection word, sending the
/// fundamental sector back onto the sector containing the original vector.
pub fn unproject(v: &Vector, rs: &RootSystem, word: &[usize]) -> Vector {
    let mut w = v.clone();
    for &i in word.iter().rev() {
        w = rs.simple_reflection(&w, i);
    }
    w
}

/// Checks the sector norm inequality ‖v‖² ≥ Σ_{j∈J} δ_j²‖e_j‖² exactly
/// (J is a set of 0-based generator indices). Always true on the closed
/// sector: pairwise ⟨e_i,e_j⟩ ≥ 0 makes every cross term nonnegative.
pub fn cone_norm_inequality(
    v: &Vector,
    sg: &SectorGenerators,
    j_set: &[usize],
) -> Result<bool, WeylError> {
    let coords = sector_coordinates(v, sg)?;
    let mut rhs = Rat::zero();
    for &j in j_set {
        let d = &coords.coefficients[j];
        rhs += d * d * sg.generators[j].norm_sq();
    }
    Ok(v.norm_sq() >= rhs)
}

/// One segment of the broken path used by [`segment_pigeonhole`].
#[derive(Clone, Debug)]
pub struct PathSegment {
    pub start: Vector,
    pub end: Vector,
    pub image_distance: f64,
}

/// Outcome of the pigeonhole segment selection.
#[derive(Clone, Debug)]
pub struct Pigeonhole {
    /// Broken path a = x_0, x_1, …, x_p = b with x_j − x_{j−1} = δ_j·g(e_j).
    pub segments: Vec<PathSegment>,
    /// Index (into `segments`) of the sub-segment with maximal image
    /// distance.
    pub best: usize,
    /// Image distance of the whole segment (a, b).
    pub whole_image_distance: f64,
    /// The guaranteed lower bound whole/p on the best image distance.
    pub bound: f64,
    /// Whether best ≥ bound held numerically (always, up to fp rounding).
    pub bound_satisfied: bool,
    /// Whether ‖x_j − x_{j−1}‖² ≤ ‖b − a‖² held exactly for every segment.
    pub norm_bound_exact: bool,
}

impl Pigeonhole {
    pub fn best_segment(&self) -> &PathSegment {
        &self.segments[self.best]
    }
}

/// The pigeonhole step: decomposes b − a over the sector generators
/// (dominance-projecting first when needed and transporting the generators
/// back with the inverse reflection word), walks the broken path
/// a, a+δ_1 g(e_1), …, b, and selects the sub-segment whose image distance
/// under `image_distance` is maximal. That maximum is ≥ (1/p)·image
/// distance of (a,b) whenever `image_distance` is a metric, and each
/// sub-segment is no longer than the whole one (exact norm comparison).
pub fn segment_pigeonhole<F>(
    a: &Vector,
    b: &Vector,
    sg: &SectorGenerators,
    image_distance: F,
) -> Result<Pigeonhole, WeylError>
where
    F: Fn(&Vector, &Vector) -> f64,
{
    let w = b.sub(a);
    if w.is_zero() {
        return Err(WeylError::ZeroLength);
    }
    let rs = &sg.parent;
    let (dominant, word) = dominance_project(&w, rs)?;
    let coords = sector_coordinates(&dominant, sg)?;
    let whole_sq = w.norm_sq();

    let mut segments = Vec::with_capacity(sg.rank());
    let mut cursor = a.clone();
    let mut norm_bound_exact = true;
    for (delta, e) in coords.coefficients.iter().zip(sg.generators()) {
        let step = unproject(&e.scale(delta), rs, &word);
        let end = cursor.add(&step);
        if step.norm_sq() > whole_sq {
            norm_bound_exact = false;
        }
        segments.push(PathSegment {
            image_distance: image_distance(&cursor, &end),
            start: cursor,
            end: end.clone(),
        });
        cursor = end;
    }
    debug_assert_eq!(cursor, *b, "broken path must end at b");

    let best = segments
        .iter()
        .enumerate()
        .max_by(|(_, s), (_, t)| s.image_distance.total_cmp(&t.image_distance))
        .map(|(i, _)| i)
        .expect("rank ≥ 1");
    let whole_image_distance = image_distance(a, b);
    let bound = whole_image_distance / sg.rank() as f64;
    let bound_satisfied = segments[best].image_distance >= bound - 1e-12;
    Ok(Pigeonhole {
        segments,
        best,
        whole_image_distance,
        bound,
        bound_satisfied,
        norm_bound_exact,
    })
}

pub mod sample {
    //! Deterministic random dominant vectors for the verification sweeps.

    use super::SectorGenerators;
    use crate::chain_calculus::Vector;
    use crate::rational::rat;
    use rand::Rng;

    /// Random point of the closed sector: Σ δ_i e_i with small nonnegative
    /// rational δ_i (occasionally zero, exercising the sector boundary).
    pub fn random_dominant<R: Rng>(rng: &mut R, sg: &SectorGenerators) -> Vector {
        let mut v = Vector::zero(sg.parent().ambient_dim());
        for e in sg.generators() {
            let delta = rat(rng.gen_range(0..=8), rng.gen_range(1..=4));
            v = v.add(&e.scale(&delta));
        }
        v
    }

    /// Random vector in the span of the simple basis (any sector).
    pub fn random_in_span<R: Rng>(rng: &mut R, sg: &SectorGenerators) -> Vector {
        let mut v = Vector::zero(sg.parent().ambient_dim());
        for h in sg.parent().simple_basis() {
            let c = rat(rng.gen_range(-6..=6), rng.gen_range(1..=3));
            v = v.add(&h.scale(&c));
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(coords: &[i64]) -> Vector {
        Vector::from_ints(coords)
    }

    fn all_systems() -> Vec<RootSystem> {
        let mut out = Vec::new();
        for rank in 2..=4 {
            out.push(root_system(Family::A, rank).unwrap());
        }
        for rank in 2..=4 {
            out.push(root_system(Family::B, rank).unwrap());
        }
        out.push(root_system(Family::C, 3).unwrap());
        out.push(root_system(Family::D, 4).unwrap());
        out.push(root_system(Family::G, 2).unwrap());
        out
    }

    #[test]
    fn a2_roots_and_obtuse_basis() {
        let a2 = root_system(Family::A, 2).unwrap();
        assert_eq!(a2.roots().len(), 6);
        for r in [[1, -1, 0], [0, 1, -1], [1, 0, -1]] {
            assert!(a2.roots().contains(&v(&r)));
            assert!(a2.roots().contains(&v(&r).neg()));
        }
        let g = a2.basis_gram();
        assert_eq!(g[0][1], int(-1));
    }

    #[test]
    fn g2_has_twelve_roots_with_length_ratio_three() {
        let g2 = root_system(Family::G, 2).unwrap();
        assert_eq!(g2.roots().len(), 12);
        let mut lengths: Vec<Rat> = g2.roots().iter().map(Vector::norm_sq).collect();
        lengths.sort();
        lengths.dedup();
        assert_eq!(lengths, vec![int(2), int(6)]);
        assert_eq!(&lengths[1] / &lengths[0], int(3));
    }

    #[test]
    fn roots_closed_under_negation_and_bases_obtuse() {
        for rs in all_systems() {
            for r in rs.roots() {
                assert!(rs.roots().contains(&r.neg()), "{}: −root missing", rs.label());
            }
            let g = rs.basis_gram();
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    if i != j {
                        assert!(
                            !g[i][j].is_positive(),
                            "{}: ⟨h_{i},h_{j}⟩ > 0",
                            rs.label()
                        );
                    }
                }
            }
            // Simple roots are roots, and the basis is independent.
            for h in rs.simple_basis() {
                assert!(rs.roots().contains(h), "{}: basis not a root", rs.label());
            }
            assert!(!linalg::det(&g).is_zero());
        }
    }

    #[test]
    fn a2_generators_frozen() {
        let sg = sector_generators(&root_system(Family::A, 2).unwrap()).unwrap();
        assert_eq!(sg.generators()[0], v(&[2, -1, -1]));
        assert_eq!(sg.generators()[1], v(&[1, 1, -2]));
        assert_eq!(sg.generators()[0].dot(&sg.generators()[1]), int(3));
    }

    #[test]
    fn g2_generators_frozen() {
        let sg = sector_generators(&root_system(Family::G, 2).unwrap()).unwrap();
        assert_eq!(sg.generators()[0], v(&[0, -1, 1]));
        assert_eq!(sg.generators()[1], v(&[-1, -1, 2]));
        assert_eq!(sg.generators()[0].dot(&sg.generators()[1]), int(3));
    }

    #[test]
    fn b2_generators_are_partial_sums() {
        let sg = sector_generators(&root_system(Family::B, 2).unwrap()).unwrap();
        assert_eq!(sg.generators()[0], v(&[1, 0]));
        assert_eq!(sg.generators()[1], v(&[1, 1]));
    }

    #[test]
    fn d4_spin_generators() {
        let sg = sector_generators(&root_system(Family::D, 4).unwrap()).unwrap();
        assert_eq!(sg.generators()[2], v(&[1, 1, 1, -1]));
        assert_eq!(sg.generators()[3], v(&[1, 1, 1, 1]));
    }

    #[test]
    fn rank_one_generator_is_proportional_to_the_root() {
        let sg = sector_generators(&root_system(Family::A, 1).unwrap()).unwrap();
        assert_eq!(sg.generators(), &[v(&[1, -1])]);
    }

    #[test]
    fn generator_wall_conditions_and_acuteness() {
        for rs in all_systems() {
            let sg = sector_generators(&rs).unwrap();
            for (i, e) in sg.generators().iter().enumerate() {
                for (k, h) in rs.simple_basis().iter().enumerate() {
                    let ip = e.dot(h);
                    if k == i {
                        assert!(ip.is_positive(), "{}: ⟨e_{i},h_{i}⟩ ≤ 0", rs.label());
                    } else {
                        assert!(ip.is_zero(), "{}: e_{i} not on wall {k}", rs.label());
                    }
                }
            }
            for a in sg.generators() {
                for b in sg.generators() {
                    assert!(!a.dot(b).is_negative(), "{}: obtuse generators", rs.label());
                }
            }
        }
    }

    #[test]
    fn direct_sum_concatenates() {
        let a2 = root_system(Family::A, 2).unwrap();
        let b2 = root_system(Family::B, 2).unwrap();
        let sum = direct_sum(&a2, &b2);
        assert_eq!(sum.label(), "A2+B2");
        assert_eq!(sum.ambient_dim(), 5);
        assert_eq!(sum.rank(), 4);
        assert_eq!(sum.roots().len(), 6 + 8);
        let sg = sector_generators(&sum).unwrap();
        assert_eq!(sg.generators()[0], v(&[2, -1, -1, 0, 0]));
        assert_eq!(sg.generators()[2], v(&[0, 0, 0, 1, 0]));
    }

    #[test]
    fn unsupported_ranks_rejected() {
        assert!(root_system(Family::A, 9).is_err());
        assert!(root_system(Family::A, 0).is_err());
        assert!(root_system(Family::D, 1).is_err());
        assert!(root_system(Family::G, 3).is_err());
    }

    #[test]
    fn sector_coordinates_frozen_cases() {
        let sg = sector_generators(&root_system(Family::A, 2).unwrap()).unwrap();
        let e1 = sg.generators()[0].clone();
        let c = sector_coordinates(&e1, &sg).unwrap();
        assert_eq!(c.coefficients, vec![int(1), int(0)]);
        let both = e1.add(&sg.generators()[1]);
        let c = sector_coordinates(&both, &sg).unwrap();
        assert_eq!(c.coefficients, vec![int(1), int(1)]);
    }

    #[test]
    fn sector_coordinates_error_paths() {
        let sg = sector_generators(&root_system(Family::A, 2).unwrap()).unwrap();
        // −h₁ violates wall 0.
        let bad = v(&[-1, 1, 0]);
        assert_eq!(
            sector_coordinates(&bad, &sg).unwrap_err(),
            WeylError::OutsideSector { wall: 0 }
        );
        // Dominant-side inner products but outside the span: (1,1,1) has
        // ⟨·,h_i⟩ = 0 yet is not a combination of the generators.
        assert_eq!(
            sector_coordinates(&v(&[1, 1, 1]), &sg).unwrap_err(),
            WeylError::NotInSpan
        );
    }

    #[test]
    fn round_trip_on_random_dominant_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for rs in all_systems() {
            let sg = sector_generators(&rs).unwrap();
            for _ in 0..20 {
                let x = sample::random_dominant(&mut rng, &sg);
                let c = sector_coordinates(&x, &sg).unwrap();
                assert!(c.coefficients.iter().all(|d| !d.is_negative()));
                assert_eq!(c.reconstruct(&sg), x);
            }
        }
    }

    #[test]
    fn dominance_projection_reaches_the_sector_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for rs in all_systems() {
            let sg = sector_generators(&rs).unwrap();
            for _ in 0..20 {
                let x = sample::random_in_span(&mut rng, &sg);
                let (w, word) = dominance_project(&x, &rs).unwrap();
                assert!(rs.is_dominant(&w), "{}: not dominant", rs.label());
                assert_eq!(w.norm_sq(), x.norm_sq(), "{}: norm changed", rs.label());
                assert_eq!(unproject(&w, &rs, &word), x);
            }
        }
    }

    #[test]
    fn dominant_input_projects_to_itself() {
        let rs = root_system(Family::A, 2).unwrap();
        let sg = sector_generators(&rs).unwrap();
        let x = sg.generators()[0].clone();
        let (w, word) = dominance_project(&x, &rs).unwrap();
        assert_eq!(w, x);
        assert!(word.is_empty());
    }

    #[test]
    fn projecting_a_negated_generator_preserves_norm() {
        let rs = root_system(Family::A, 2).unwrap();
        let sg = sector_generators(&rs).unwrap();
        let x = sg.generators()[0].neg();
        let (w, _) = dominance_project(&x, &rs).unwrap();
        assert!(rs.is_dominant(&w));
        assert_eq!(w.norm_sq(), int(6));
    }

    #[test]
    fn cone_norm_inequality_exact() {
        let rs = root_system(Family::A, 3).unwrap();
        let sg = sector_generators(&rs).unwrap();
        let x = sg
            .generators()
            .iter()
            .fold(Vector::zero(4), |acc, e| acc.add(e));
        assert!(cone_norm_inequality(&x, &sg, &[]).unwrap());
        assert!(cone_norm_inequality(&x, &sg, &[0, 1, 2]).unwrap());
    }

    #[test]
    fn cone_norm_inequality_random_g2() {
        let rs = root_system(Family::G, 2).unwrap();
        let sg = sector_generators(&rs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let x = sample::random_dominant(&mut rng, &sg);
            for j_set in [vec![], vec![0], vec![1], vec![0, 1]] {
                assert!(cone_norm_inequality(&x, &sg, &j_set).unwrap());
            }
        }
    }

    #[test]
    fn pigeonhole_rank_one_returns_whole_segment() {
        let sg = sector_generators(&root_system(Family::A, 1).unwrap()).unwrap();
        let a = v(&[0, 0]);
        let b = v(&[3, -3]);
        let ph = segment_pigeonhole(&a, &b, &sg, |x, y| {
            y.sub(x).norm_f64()
        })
        .unwrap();
        assert_eq!(ph.segments.len(), 1);
        assert_eq!(ph.best_segment().start, a);
        assert_eq!(ph.best_segment().end, b);
        assert!(ph.bound_satisfied);
    }

    #[test]
    fn pigeonhole_a2_euclidean() {
        let sg = sector_generators(&root_system(Family::A, 2).unwrap()).unwrap();
        let a = v(&[1, 0, -1]);
        let b = a.add(&sg.generators()[0]).add(&sg.generators()[1]);
        let ph = segment_pigeonhole(&a, &b, &sg, |x, y| y.sub(x).norm_f64()).unwrap();
        assert_eq!(ph.segments.len(), 2);
        assert!(ph.bound_satisfied);
        assert!(ph.norm_bound_exact);
        assert_eq!(ph.segments.last().unwrap().end, b);
    }

    #[test]
    fn pigeonhole_transports_generators_through_reflections() {
        let rs = root_system(Family::A, 2).unwrap();
        let sg = sector_generators(&rs).unwrap();
        // b − a lives in a non-dominant sector.
        let offset = sg.generators()[0]
            .scale(&rat(3, 2))
            .add(&sg.generators()[1]);
        let w = rs.simple_reflection(&offset, 0);
        let a = v(&[0, 1, -1]);
        let b = a.add(&w);
        let ph = segment_pigeonhole(&a, &b, &sg, |x, y| y.sub(x).norm_f64()).unwrap();
        assert_eq!(ph.segments.last().unwrap().end, b);
        assert!(ph.bound_satisfied);
        assert!(ph.norm_bound_exact);
    }

    #[test]
    fn pigeonhole_rejects_zero_segment() {
        let sg = sector_generators(&root_system(Family::A, 2).unwrap()).unwrap();
        let a = v(&[1, 0, -1]);
        assert_eq!(
            segment_pigeonhole(&a, &a, &sg, |_, _| 0.0).unwrap_err(),
            WeylError::ZeroLength
        );
    }
}
