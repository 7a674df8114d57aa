//! Discrete bounded-geometry model spaces: regular trees, lattices, finite
//! products, and a net in the hyperbolic upper half-plane; with ball
//! enumeration, two-sided ε-volume bounds, growth tables, and explicit
//! coarse embeddings (horospherical) with control-function profiles.
//!
//! Conventions:
//! - trees and lattices carry their graph metrics (ℓ¹ on ℤⁿ) for covering
//!   oracles; products combine factor distances in ℓ²;
//! - the half-plane net at spacing s consists of the points
//!   (k·s·2^j, 2^j) for integers k, j, with the closed-form metric
//!   d = arccosh(1 + (Δx² + Δy²)/(2·y₁y₂));
//! - ε-volume (minimal number of radius-ε balls covering a set) is exact on
//!   ℤ via interval covering and otherwise returned as a
//!   (packing lower bound, greedy cover upper bound) pair — minimum covering
//!   is NP-hard in general, and two-sided coarse control is all the
//!   downstream checks need.

use std::collections::BTreeSet;

use crate::tolerances;

pub const DEFAULT_BALL_BUDGET: usize = 2_000_000;

#[derive(Debug, PartialEq, thiserror::Error)]
pub enum SpaceError {
    #[error("point does not belong to the space")]
    PointNotInSpace,
    #[error("ball enumeration exceeded the budget of {budget} points")]
    BudgetExceeded { budget: usize },
    #[error("epsilon {eps} below the bounded-geometry threshold {threshold}")]
    EpsilonBelowThreshold { eps: f64, threshold: f64 },
    #[error("empty point set")]
    EmptySet,
    #[error("{0}")]
    Unsupported(&'static str),
}

/// A point of one of the model spaces.
///
/// - `Tree`: path from the root; the first step has `d` choices, later
///   steps `d − 1` (no backtracking), so paths biject with vertices.
/// - `Lattice`: integer coordinates.
/// - `HalfSpace`: the point (xs·s·2^level, 2^level) of the half-plane net
///   at spacing s (xs has one entry there); embedded horospheres use the
///   same representation at level 0 with unit spacing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Tree(Vec<u8>),
    Lattice(Vec<i64>),
    Product(Vec<Point>),
    HalfSpace { xs: Vec<i64>, level: i32 },
}

impl Point {
    pub fn lattice(coords: &[i64]) -> Point {
        Point::Lattice(coords.to_vec())
    }

    pub fn tree(path: &[u8]) -> Point {
        Point::Tree(path.to_vec())
    }

    pub fn half_plane(k: i64, level: i32) -> Point {
        Point::HalfSpace {
            xs: vec![k],
            level,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelSpace {
    /// The d-regular infinite tree, d ≥ 3, graph metric.
    RegularTree { degree: u8 },
    /// ℤⁿ with the graph (ℓ¹) metric.
    Lattice { n: usize },
    /// Finite product; distance is ℓ² of the factor distances.
    Product(Vec<ModelSpace>),
    /// Net (k·s·2^j, 2^j) in the hyperbolic upper half-plane, s = spacing.
    HalfPlaneNet { spacing: u32 },
}

fn acosh(z: f64) -> f64 {
    z.acosh()
}

impl ModelSpace {
    pub fn name(&self) -> String {
        match self {
            ModelSpace::RegularTree { degree } => format!("t{degree}"),
            ModelSpace::Lattice { n } => format!("z{n}"),
            ModelSpace::Product(fs) => {
                let inner: Vec<String> = fs.iter().map(ModelSpace::name).collect();
                format!("prod({})", inner.join(","))
            }
            ModelSpace::HalfPlaneNet { spacing } => format!("half({spacing})"),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (ModelSpace::RegularTree { degree }, Point::Tree(path)) => {
                path.iter().enumerate().all(|(i, &c)| {
                    let choices = if i == 0 { *degree } else { *degree - 1 };
                    c < choices
                })
            }
            (ModelSpace::Lattice { n }, Point::Lattice(coords)) => coords.len() == *n,
            (ModelSpace::Product(fs), Point::Product(ps)) => {
                fs.len() == ps.len() && fs.iter().zip(ps).all(|(f, q)| f.contains(q))
            }
            (ModelSpace::HalfPlaneNet { .. }, Point::HalfSpace { xs, .. }) => xs.len() == 1,
            _ => false,
        }
    }

    /// Canonical basepoint (root / origin / (0, 1)).
    pub fn basepoint(&self) -> Point {
        match self {
            ModelSpace::RegularTree { .. } => Point::Tree(Vec::new()),
            ModelSpace::Lattice { n } => Point::Lattice(vec![0; *n]),
            ModelSpace::Product(fs) => {
                Point::Product(fs.iter().map(ModelSpace::basepoint).collect())
            }
            ModelSpace::HalfPlaneNet { .. } => Point::half_plane(0, 0),
        }
    }

    /// Graph distance where it is an integer (trees, lattices); None for
    /// products (ℓ², generally irrational) and the half-plane.
    fn integer_distance(&self, x: &Point, y: &Point) -> Option<u64> {
        match (self, x, y) {
            (ModelSpace::RegularTree { .. }, Point::Tree(a), Point::Tree(b)) => {
                let lcp = a.iter().zip(b.iter()).take_while(|(p, q)| p == q).count();
                Some((a.len() - lcp) as u64 + (b.len() - lcp) as u64)
            }
            (ModelSpace::Lattice { .. }, Point::Lattice(a), Point::Lattice(b)) => Some(
                a.iter()
                    .zip(b.iter())
                    .map(|(p, q)| p.abs_diff(*q))
                    .sum::<u64>(),
            ),
            _ => None,
        }
    }

    fn half_plane_xy(&self, p: &Point) -> Option<(f64, f64)> {
        if let (ModelSpace::HalfPlaneNet { spacing }, Point::HalfSpace { xs, level }) = (self, p)
        {
            let y = (2.0f64).powi(*level);
            Some((xs[0] as f64 * *spacing as f64 * y, y))
        } else {
            None
        }
    }

    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64, SpaceError> {
        if !self.contains(x) || !self.contains(y) {
            return Err(SpaceError::PointNotInSpace);
        }
        self.distance_unchecked(x, y)
    }

    fn distance_unchecked(&self, x: &Point, y: &Point) -> Result<f64, SpaceError> {
        if let Some(d) = self.integer_distance(x, y) {
            return Ok(d as f64);
        }
        match (self, x, y) {
            (ModelSpace::Product(fs), Point::Product(a), Point::Product(b)) => {
                let mut sq = 0.0;
                for (f, (p, q)) in fs.iter().zip(a.iter().zip(b)) {
                    let d = f.distance_unchecked(p, q)?;
                    sq += d * d;
                }
                Ok(sq.sqrt())
            }
            (ModelSpace::HalfPlaneNet { .. }, _, _) => {
                let (x1, y1) = self.half_plane_xy(x).unwrap();
                let (x2, y2) = self.half_plane_xy(y).unwrap();
                let dx = x1 - x2;
                let dy = y1 - y2;
                Ok(acosh(1.0 + (dx * dx + dy * dy) / (2.0 * y1 * y2)))
            }
            _ => Err(SpaceError::PointNotInSpace),
        }
    }

    /// Bounded-geometry witness R₀: any R-ball is covered by boundedly many
    /// R₀-balls. 1 for the unit-step discrete spaces; for the half-plane
    /// net, the level-uniform horizontal mesh arccosh(1 + s²/2).
    pub fn bounded_geometry_threshold(&self) -> f64 {
        match self {
            ModelSpace::RegularTree { .. } | ModelSpace::Lattice { .. } => 1.0,
            ModelSpace::Product(fs) => fs
                .iter()
                .map(ModelSpace::bounded_geometry_threshold)
                .fold(1.0, f64::max),
            ModelSpace::HalfPlaneNet { spacing } => {
                let s = *spacing as f64;
                acosh(1.0 + s * s / 2.0)
            }
        }
    }

    pub fn ball(&self, x: &Point, r: f64) -> Result<Vec<Point>, SpaceError> {
        self.ball_with_budget(x, r, DEFAULT_BALL_BUDGET)
    }

    /// All net/graph points within distance r of x, canonically sorted.
    /// Errors when the enumeration would exceed `budget` points.
    pub fn ball_with_budget(
        &self,
        x: &Point,
        r: f64,
        budget: usize,
    ) -> Result<Vec<Point>, SpaceError> {
        if !self.contains(x) {
            return Err(SpaceError::PointNotInSpace);
        }
        let mut out = match self {
            ModelSpace::RegularTree { degree } => {
                let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
                let start = match x {
                    Point::Tree(p) => p.clone(),
                    _ => unreachable!(),
                };
                let mut frontier = vec![start.clone()];
                seen.insert(start);
                let steps = r.floor() as usize;
                for _ in 0..steps {
                    let mut next = Vec::new();
                    for v in &frontier {
                        let push = |w: Vec<u8>, seen: &mut BTreeSet<Vec<u8>>,
                                    next: &mut Vec<Vec<u8>>| {
                            if seen.insert(w.clone()) {
                                next.push(w);
                            }
                        };
                        if !v.is_empty() {
                            let mut parent = v.clone();
                            parent.pop();
                            push(parent, &mut seen, &mut next);
                        }
                        let choices = if v.is_empty() { *degree } else { *degree - 1 };
                        for c in 0..choices {
                            let mut child = v.clone();
                            child.push(c);
                            push(child, &mut seen, &mut next);
                        }
                        if seen.len() > budget {
                            return Err(SpaceError::BudgetExceeded { budget });
                        }
                    }
                    frontier = next;
                }
                seen.into_iter().map(Point::Tree).collect()
            }
            ModelSpace::Lattice { n } => {
                let center = match x {
                    Point::Lattice(c) => c.clone(),
                    _ => unreachable!(),
                };
                let radius = r.floor() as i64;
                let mut out = Vec::new();
                let mut coords = vec![0i64; *n];
                l1_enumerate(&center, radius, 0, &mut coords, &mut out, budget)?;
                out.sort();
                out
            }
            ModelSpace::Product(fs) => {
                let centers = match x {
                    Point::Product(ps) => ps,
                    _ => unreachable!(),
                };
                // Cartesian product of factor balls, filtered by the exact
                // integer ℓ² condition Σ d_i² ≤ r².
                let mut factor_balls = Vec::with_capacity(fs.len());
                for (f, c) in fs.iter().zip(centers) {
                    if matches!(f, ModelSpace::HalfPlaneNet { .. } | ModelSpace::Product(_)) {
                        return Err(SpaceError::Unsupported(
                            "product ball enumeration needs tree or lattice factors",
                        ));
                    }
                    factor_balls.push(f.ball_with_budget(c, r, budget)?);
                }
                let r_sq = (r * r + tolerances::RADIUS_FILTER_ABS).floor() as u64;
                let mut out: Vec<Point> = vec![Point::Product(Vec::new())];
                for ((factor, ball_f), c) in fs.iter().zip(&factor_balls).zip(centers) {
                    let mut next = Vec::new();
                    for partial in &out {
                        let partial_sq: u64 = match partial {
                            Point::Product(ps) => ps
                                .iter()
                                .zip(centers)
                                .zip(fs)
                                .map(|((p, cc), ff)| {
                                    let d = ff.integer_distance(p, cc).unwrap();
                                    d * d
                                })
                                .sum(),
                            _ => unreachable!(),
                        };
                        for q in ball_f {
                            let d = factor.integer_distance(q, c).unwrap();
                            if partial_sq + d * d <= r_sq {
                                let mut ps = match partial {
                                    Point::Product(ps) => ps.clone(),
                                    _ => unreachable!(),
                                };
                                ps.push(q.clone());
                                next.push(Point::Product(ps));
                                if next.len() > budget {
                                    return Err(SpaceError::BudgetExceeded { budget });
                                }
                            }
                        }
                    }
                    out = next;
                }
                out.sort();
                out
            }
            ModelSpace::HalfPlaneNet { spacing } => {
                let (xc, yc) = self.half_plane_xy(x).unwrap();
                let level_c = match x {
                    Point::HalfSpace { level, .. } => *level,
                    _ => unreachable!(),
                };
                let s = *spacing as f64;
                let reach = (r / std::f64::consts::LN_2).ceil() as i32 + 1;
                let coshr = r.cosh() - 1.0;
                let mut out = Vec::new();
                for level in (level_c - reach)..=(level_c + reach) {
                    let y = (2.0f64).powi(level);
                    let dy = y - yc;
                    let h_sq = 2.0 * y * yc * coshr - dy * dy;
                    if h_sq < 0.0 {
                        continue;
                    }
                    let h = h_sq.sqrt();
                    let unit = s * y;
                    let k_min = ((xc - h) / unit - tolerances::RADIUS_FILTER_ABS).ceil() as i64;
                    let k_max = ((xc + h) / unit + tolerances::RADIUS_FILTER_ABS).floor() as i64;
                    for k in k_min..=k_max {
                        let p = Point::half_plane(k, level);
                        let d = self.distance_unchecked(x, &p)?;
                        if d <= r + tolerances::RADIUS_FILTER_ABS {
                            out.push(p);
                            if out.len() > budget {
                                return Err(SpaceError::BudgetExceeded { budget });
                            }
                        }
                    }
                }
                out.sort();
                out
            }
        };
        out.sort();
        Ok(out)
    }
}

fn l1_enumerate(
    center: &[i64],
    radius: i64,
    axis: usize,
    coords: &mut Vec<i64>,
    out: &mut Vec<Point>,
    budget: usize,
) -> Result<(), SpaceError> {
    if axis == center.len() {
        out.push(Point::Lattice(coords.clone()));
        if out.len() > budget {
            return Err(SpaceError::BudgetExceeded { budget });
        }
        return Ok(());
    }
    let used: i64 = coords[..axis]
        .iter()
        .zip(center)
        .map(|(c, cc)| (c - cc).abs())
        .sum();
    let slack = radius - used;
    for v in (center[axis] - slack)..=(center[axis] + slack) {
        coords[axis] = v;
        l1_enumerate(center, radius, axis + 1, coords, out, budget)?;
    }
    coords[axis] = center[axis];
    Ok(())
}

/// Two-sided ε-volume: minimal number of radius-ε balls covering `a_set`.
/// Exact on ℤ (optimal interval covering); elsewhere a maximal
/// (2ε)-separated packing gives the lower bound and a first-fit greedy
/// point-centered cover the upper bound. Deterministic: points are
/// processed in canonical sorted order.
pub fn epsilon_volume(
    space: &ModelSpace,
    a_set: &[Point],
    eps: f64,
) -> Result<(u64, u64), SpaceError> {
    let threshold = space.bounded_geometry_threshold();
    if eps < threshold - 1e-12 {
        return Err(SpaceError::EpsilonBelowThreshold { eps, threshold });
    }
    if a_set.is_empty() {
        return Err(SpaceError::EmptySet);
    }
    let mut pts: Vec<Point> = a_set.to_vec();
    pts.sort();
    pts.dedup();
    for p in &pts {
        if !space.contains(p) {
            return Err(SpaceError::PointNotInSpace);
        }
    }

    // ℤ: optimal interval covering by a left-to-right sweep; balls are
    // intervals of length 2ε around arbitrary real centers.
    if let ModelSpace::Lattice { n: 1 } = space {
        let xs: Vec<i64> = pts
            .iter()
            .map(|p| match p {
                Point::Lattice(c) => c[0],
                _ => unreachable!(),
            })
            .collect();
        let mut count = 0u64;
        let mut covered_to = f64::NEG_INFINITY;
        for &x in &xs {
            if (x as f64) > covered_to {
                count += 1;
                covered_to = x as f64 + 2.0 * eps;
            }
        }
        return Ok((count, count));
    }

    // Packing lower bound: greedily select points pairwise > 2ε apart; any
    // ε-ball (arbitrary center) contains at most one selected point.
    let mut selected: Vec<&Point> = Vec::new();
    for p in &pts {
        let mut far = true;
        for q in &selected {
            if space.distance_unchecked(p, q)? <= 2.0 * eps + tolerances::RADIUS_FILTER_ABS {
                far = false;
                break;
            }
        }
        if far {
            selected.push(p);
        }
    }
    let lower = selected.len() as u64;

    // Greedy cover upper bound: first uncovered point becomes a center.
    // Coverage uses the raw d ≤ ε test, so the produced cover is genuine.
    let mut centers: Vec<&Point> = Vec::new();
    for p in &pts {
        let mut covered = false;
        for c in &centers {
            if space.distance_unchecked(p, c)? <= eps {
                covered = true;
                break;
            }
        }
        if !covered {
            centers.push(p);
        }
    }
    let upper = centers.len() as u64;
    debug_assert!(lower <= upper);
    Ok((lower, upper))
}

#[derive(Clone, Debug)]
pub struct GrowthRow {
    pub r: u32,
    pub lower: u64,
    pub upper: u64,
}

/// ε-volume of balls around one basepoint (the spaces here are
/// vertex-transitive, so the sup over basepoints is attained everywhere).
#[derive(Clone, Debug)]
pub struct GrowthTable {
    pub epsilon: f64,
    pub rows: Vec<GrowthRow>,
}

/// Tabulates r ↦ Vol^ε(B(basepoint, r)) bounds. Bounds are straightened to
/// be monotone without losing validity: a lower bound at radius r is a
/// lower bound for every r' ≥ r (balls nest), and an upper bound at r is an
/// upper bound for every r' ≤ r.
pub fn growth_table(
    space: &ModelSpace,
    eps: f64,
    radii: &[u32],
) -> Result<GrowthTable, SpaceError> {
    let base = space.basepoint();
    let mut rows = Vec::with_capacity(radii.len());
    for &r in radii {
        let ball = space.ball(&base, r as f64)?;
        let (lower, upper) = epsilon_volume(space, &ball, eps)?;
        rows.push(GrowthRow { r, lower, upper });
    }
    rows.sort_by_key(|row| row.r);
    let mut running = 0u64;
    for row in rows.iter_mut() {
        running = running.max(row.lower);
        row.lower = running;
    }
    let mut cap = u64::MAX;
    for row in rows.iter_mut().rev() {
        cap = cap.min(row.upper);
        row.upper = cap;
    }
    Ok(GrowthTable { epsilon: eps, rows })
}

/// |B(basepoint, r)| for r = 0..=rmax.
pub fn ball_cardinalities(space: &ModelSpace, rmax: u32) -> Result<Vec<u64>, SpaceError> {
    let base = space.basepoint();
    (0..=rmax)
        .map(|r| Ok(space.ball(&base, r as f64)?.len() as u64))
        .collect()
}

/// Closed-form d-regular tree ball size 1 + d((d−1)^r − 1)/(d−2), d ≥ 3.
pub fn tree_ball_closed_form(degree: u8, r: u32) -> u64 {
    let d = degree as u64;
    1 + d * ((d - 1).pow(r) - 1) / (d - 2)
}

/// Least-squares fit y = slope·x + intercept.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}

// ---------------------------------------------------------------------------
// Embeddings and control functions
// ---------------------------------------------------------------------------

/// Point transformer between model spaces, with closed-form distances.
#[derive(Clone, Debug)]
pub enum EmbeddingMap {
    Identity { space: ModelSpace },
    /// ℤⁿ (as a net of Euclidean ℝⁿ) into the horosphere {height 1} of the
    /// upper half-space of ℍ^{n+1}: x ↦ (x, 1).
    Horosphere { n: usize },
    /// Collapses everything to the basepoint; the canonical non-coarse map.
    Constant { space: ModelSpace },
}

impl EmbeddingMap {
    pub fn name(&self) -> String {
        match self {
            EmbeddingMap::Identity { space } => format!("identity({})", space.name()),
            EmbeddingMap::Horosphere { n } => format!("horo{n}"),
            EmbeddingMap::Constant { space } => format!("constant({})", space.name()),
        }
    }

    /// Domain of the map.
    pub fn source_space(&self) -> ModelSpace {
        match self {
            EmbeddingMap::Identity { space } | EmbeddingMap::Constant { space } => space.clone(),
            EmbeddingMap::Horosphere { n } => ModelSpace::Lattice { n: *n },
        }
    }

    /// The model space containing the image, when one exists (the n ≥ 2
    /// horosphere lands in a half-space we do not model as a net).
    pub fn image_space(&self) -> Option<ModelSpace> {
        match self {
            EmbeddingMap::Identity { space } | EmbeddingMap::Constant { space } => {
                Some(space.clone())
            }
            EmbeddingMap::Horosphere { n: 1 } => Some(ModelSpace::HalfPlaneNet { spacing: 1 }),
            EmbeddingMap::Horosphere { .. } => None,
        }
    }

    pub fn apply(&self, p: &Point) -> Result<Point, SpaceError> {
        match self {
            EmbeddingMap::Identity { space } => {
                if !space.contains(p) {
                    return Err(SpaceError::PointNotInSpace);
                }
                Ok(p.clone())
            }
            EmbeddingMap::Constant { space } => {
                if !space.contains(p) {
                    return Err(SpaceError::PointNotInSpace);
                }
                Ok(space.basepoint())
            }
            EmbeddingMap::Horosphere { n } => match p {
                Point::Lattice(coords) if coords.len() == *n => Ok(Point::HalfSpace {
                    xs: coords.clone(),
                    level: 0,
                }),
                _ => Err(SpaceError::PointNotInSpace),
            },
        }
    }

    /// Distance in the source space. The horosphere's source is the
    /// Euclidean net, so this is ℓ² there (not the lattice ℓ¹ metric);
    /// both agree in the n = 1 case the covering oracles use.
    pub fn source_distance(&self, x: &Point, y: &Point) -> Result<f64, SpaceError> {
        match self {
            EmbeddingMap::Identity { space } | EmbeddingMap::Constant { space } => {
                space.distance(x, y)
            }
            EmbeddingMap::Horosphere { .. } => Ok((euclidean_sq(x, y)? as f64).sqrt()),
        }
    }

    /// Distance between the images: for the horosphere the exact closed
    /// form arccosh(1 + ‖Δx‖²/2) with integer ‖Δx‖².
    pub fn image_distance(&self, x: &Point, y: &Point) -> Result<f64, SpaceError> {
        match self {
            EmbeddingMap::Identity { space } => space.distance(x, y),
            EmbeddingMap::Constant { .. } => Ok(0.0),
            EmbeddingMap::Horosphere { .. } => {
                Ok(acosh(1.0 + euclidean_sq(x, y)? as f64 / 2.0))
            }
        }
    }

    /// A Lipschitz constant valid on the whole domain, when known:
    /// arccosh(1 + r²/2) ≤ r makes the horosphere 1-Lipschitz.
    pub fn lipschitz_witness(&self) -> f64 {
        match self {
            EmbeddingMap::Identity { .. } | EmbeddingMap::Horosphere { .. } => 1.0,
            EmbeddingMap::Constant { .. } => 0.0,
        }
    }
}

fn euclidean_sq(x: &Point, y: &Point) -> Result<u64, SpaceError> {
    match (x, y) {
        (Point::Lattice(a), Point::Lattice(b)) if a.len() == b.len() => Ok(a
            .iter()
            .zip(b)
            .map(|(p, q)| {
                let d = p.abs_diff(*q);
                d * d
            })
            .sum()),
        _ => Err(SpaceError::PointNotInSpace),
    }
}

pub fn horosphere_embed(n: usize) -> EmbeddingMap {
    assert!(n >= 1);
    EmbeddingMap::Horosphere { n }
}

/// The horosphere distortion gap d(r) − 2 ln r; positive and strictly
/// decreasing for r ≥ 2, bounded by ln(1 + 4/r²).
pub fn horosphere_gap(r: f64) -> f64 {
    acosh(1.0 + r * r / 2.0) - 2.0 * r.ln()
}

#[derive(Clone, Debug)]
pub struct ControlRow {
    pub r: f64,
    /// Empirical lower envelope ρ₋(r): min image distance at source distance r.
    pub lo: f64,
    /// Empirical upper envelope ρ₊(r): max image distance at source distance r.
    pub hi: f64,
}

/// Empirical control functions ρ₋ ≤ d_image ≤ ρ₊ over a pair sample.
#[derive(Clone, Debug)]
pub struct ControlFunctions {
    pub rows: Vec<ControlRow>,
    /// Lower envelope nondecreasing and unbounded over the sampled range
    /// (the finite-sample reading of "coarse embedding").
    pub coarse: bool,
    /// Upper envelope with ρ₊(r)/r decreasing along the sampled tail.
    pub sublinear_compression: bool,
}

impl ControlFunctions {
    /// ρ₊ at r: the upper envelope at the smallest sampled r' ≥ r
    /// (conservative when r falls between samples).
    pub fn rho_plus_at(&self, r: f64) -> Option<f64> {
        self.rows
            .iter()
            .find(|row| row.r >= r - 1e-12)
            .map(|row| row.hi)
    }

    /// Largest sampled source distance with ρ₋(r) ≤ d; 0 when even the
    /// smallest sampled distance maps above d.
    pub fn rho_minus_inverse(&self, d: f64) -> f64 {
        self.rows
            .iter()
            .filter(|row| row.lo <= d + 1e-12)
            .map(|row| row.r)
            .fold(0.0, f64::max)
    }
}

/// Profiles an embedding over explicit point pairs: groups image distances
/// by exact source distance and takes min/max envelopes.
pub fn control_function_profile(
    map: &EmbeddingMap,
    pairs: &[(Point, Point)],
) -> Result<ControlFunctions, SpaceError> {
    use std::collections::BTreeMap;
    let mut buckets: BTreeMap<u64, (f64, f64, f64)> = BTreeMap::new();
    for (x, y) in pairs {
        let r = map.source_distance(x, y)?;
        let d = map.image_distance(x, y)?;
        let key = r.to_bits(); // r ≥ 0, so bit order = numeric order
        let e = buckets.entry(key).or_insert((r, f64::INFINITY, 0.0));
        e.1 = e.1.min(d);
        e.2 = e.2.max(d);
    }
    let rows: Vec<ControlRow> = buckets
        .into_values()
        .map(|(r, lo, hi)| ControlRow { r, lo, hi })
        .collect();

    let positive: Vec<&ControlRow> = rows.iter().filter(|row| row.r > 0.0).collect();
    let nondecreasing = positive
        .windows(2)
        .all(|w| w[1].lo >= w[0].lo - tolerances::CONTROL_PROFILE_ABS);
    let unbounded = match (positive.first(), positive.last()) {
        (Some(first), Some(last)) => last.lo > first.lo + tolerances::CONTROL_PROFILE_ABS,
        _ => false,
    };
    let coarse = nondecreasing && unbounded;

    let tail_start = positive.len() / 2;
    let tail = &positive[tail_start..];
    let sublinear_compression = tail.len() >= 2
        && tail
            .windows(2)
            .all(|w| w[1].hi / w[1].r < w[0].hi / w[0].r + tolerances::CONTROL_PROFILE_ABS);

    Ok(ControlFunctions {
        rows,
        coarse,
        sublinear_compression,
    })
}

/// Coarse-volume preservation data: Vol bounds on both sides and the
/// lemma constants α, β derived from the control profile.
#[derive(Clone, Debug)]
pub struct CoarseVolumeReport {
    pub vol_x: (u64, u64),
    pub vol_y: (u64, u64),
    /// D = ρ₋⁻¹(2ε): source distance below which points can share an ε-ball
    /// downstairs.
    pub collapse_radius: f64,
    /// α = 1 / Vol_X^ε(B(D)) (conservative: the upper volume bound).
    pub alpha: f64,
    /// β = Vol_Y^ε(B(ρ₊(ε))) (conservative: the upper volume bound).
    pub beta: f64,
    /// Interval consistency of Vol_Y ∈ [α·Vol_X, β·Vol_X].
    pub within_bounds: bool,
}

/// Runs both covering oracles and checks the coarse-volume lemma
/// Vol_Y^ε(f(A)) ∈ [α, β]·Vol_X^ε(A) in interval-consistency form:
/// vol_y.lo ≤ β·vol_x.hi and vol_y.hi ≥ α·vol_x.lo.
pub fn coarse_volume_report(
    map: &EmbeddingMap,
    a_set: &[Point],
    eps: f64,
    profile: &ControlFunctions,
) -> Result<CoarseVolumeReport, SpaceError> {
    let source = map.source_space();
    let image = map
        .image_space()
        .ok_or(SpaceError::Unsupported("map image is not a model space"))?;
    if a_set.is_empty() {
        return Err(SpaceError::EmptySet);
    }
    let mut pts = a_set.to_vec();
    pts.sort();
    pts.dedup();

    let vol_x = epsilon_volume(&source, &pts, eps)?;
    let image_pts: Vec<Point> = pts
        .iter()
        .map(|p| map.apply(p))
        .collect::<Result<_, _>>()?;
    let vol_y = epsilon_volume(&image, &image_pts, eps)?;

    let basepoint = pts[0].clone();
    let collapse_radius = profile.rho_minus_inverse(2.0 * eps);
    let bd = source.ball(&basepoint, collapse_radius)?;
    let vol_bd = epsilon_volume(&source, &bd, eps)?;
    let alpha = 1.0 / vol_bd.1 as f64;

    let rho_plus_eps = profile
        .rho_plus_at(eps)
        .unwrap_or_else(|| profile.rows.last().map(|r| r.hi).unwrap_or(0.0));
    let image_base = map.apply(&basepoint)?;
    let bp = image.ball(&image_base, rho_plus_eps)?;
    let vol_bp = epsilon_volume(&image, &bp, eps)?;
    let beta = vol_bp.1 as f64;

    let within_bounds =
        vol_y.0 as f64 <= beta * vol_x.1 as f64 && vol_y.1 as f64 >= alpha * vol_x.0 as f64;
    Ok(CoarseVolumeReport {
        vol_x,
        vol_y,
        collapse_radius,
        alpha,
        beta,
        within_bounds,
    })
}

/// Neighborhood-volume data: Vol(N_δ(A)) against β_X^ε(δ+ε)·Vol(A).
#[derive(Clone, Debug)]
pub struct NeighborhoodReport {
    pub vol_neighborhood: (u64, u64),
    pub vol_a: (u64, u64),
    /// Vol^ε(B(δ+ε)) bounds at the basepoint (vertex-transitive growth).
    pub beta: (u64, u64),
    pub ok: bool,
}

/// Checks Vol^ε(N_δ(A)) ≤ β_X^ε(δ+ε)·Vol^ε(A) in the strong observed form
/// upper(N) ≤ upper(β)·upper(A).
pub fn neighborhood_check(
    space: &ModelSpace,
    a_set: &[Point],
    delta: f64,
    eps: f64,
) -> Result<NeighborhoodReport, SpaceError> {
    if a_set.is_empty() {
        return Err(SpaceError::EmptySet);
    }
    let mut neighborhood: BTreeSet<Point> = BTreeSet::new();
    for p in a_set {
        for q in space.ball(p, delta)? {
            neighborhood.insert(q);
        }
    }
    let neighborhood: Vec<Point> = neighborhood.into_iter().collect();
    let vol_neighborhood = epsilon_volume(space, &neighborhood, eps)?;
    let vol_a = epsilon_volume(space, a_set, eps)?;
    let growth_ball = space.ball(&space.basepoint(), delta + eps)?;
    let beta = epsilon_volume(space, &growth_ball, eps)?;
    let ok = vol_neighborhood.1 <= beta.1 * vol_a.1;
    Ok(NeighborhoodReport {
        vol_neighborhood,
        vol_a,
        beta,
        ok,
    })
}

/// Spot-checks the metric axioms on all pairs/triples from `pts`:
/// symmetry, identity of indiscernibles, triangle inequality (within
/// [`tolerances::METRIC_AXIOM_ABS`] for the half-plane's transcendental
/// distances; the discrete metrics are exact integers).
pub fn metric_spot_check(space: &ModelSpace, pts: &[Point]) -> Result<bool, SpaceError> {
    let tol = tolerances::METRIC_AXIOM_ABS;
    for x in pts {
        for y in pts {
            let dxy = space.distance(x, y)?;
            if (dxy - space.distance(y, x)?).abs() > tol {
                return Ok(false);
            }
            if (x == y) != (dxy.abs() <= tol) {
                return Ok(false);
            }
            for z in pts {
                if space.distance(x, z)? > dxy + space.distance(y, z)? + tol {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub mod sample {
    //! Deterministic random points and subsets for the verification sweeps.

    use super::{ModelSpace, Point};
    use rand::Rng;

    /// Random lattice point in the centered box [−extent, extent]ⁿ.
    pub fn random_lattice_point<R: Rng>(rng: &mut R, n: usize, extent: i64) -> Point {
        Point::Lattice((0..n).map(|_| rng.gen_range(-extent..=extent)).collect())
    }

    /// Random subset of the box, between 1 and max_size points.
    pub fn random_lattice_subset<R: Rng>(
        rng: &mut R,
        n: usize,
        extent: i64,
        max_size: usize,
    ) -> Vec<Point> {
        let size = rng.gen_range(1..=max_size);
        let mut pts: Vec<Point> = (0..size)
            .map(|_| random_lattice_point(rng, n, extent))
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// Random vertex of the d-regular tree at depth ≤ max_depth.
    pub fn random_tree_point<R: Rng>(rng: &mut R, degree: u8, max_depth: usize) -> Point {
        let depth = rng.gen_range(0..=max_depth);
        let path: Vec<u8> = (0..depth)
            .map(|i| {
                let choices = if i == 0 { degree } else { degree - 1 };
                rng.gen_range(0..choices)
            })
            .collect();
        Point::Tree(path)
    }

    pub fn space_sample<R: Rng>(rng: &mut R, space: &ModelSpace, count: usize) -> Vec<Point> {
        (0..count)
            .map(|_| match space {
                ModelSpace::RegularTree { degree } => random_tree_point(rng, *degree, 6),
                ModelSpace::Lattice { n } => random_lattice_point(rng, *n, 8),
                ModelSpace::Product(fs) => {
                    Point::Product(fs.iter().map(|f| space_sample(rng, f, 1).remove(0)).collect())
                }
                ModelSpace::HalfPlaneNet { .. } => {
                    Point::half_plane(rng.gen_range(-8..=8), rng.gen_range(-3..=3))
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t3() -> ModelSpace {
        ModelSpace::RegularTree { degree: 3 }
    }

    fn z(n: usize) -> ModelSpace {
        ModelSpace::Lattice { n }
    }

    fn half() -> ModelSpace {
        ModelSpace::HalfPlaneNet { spacing: 1 }
    }

    #[test]
    fn tree_distance_via_deepest_common_ancestor() {
        let s = t3();
        // Depth-2 and depth-3 vertices meeting only at the root: d = 5.
        let x = Point::tree(&[0, 0]);
        let y = Point::tree(&[1, 0, 0]);
        assert_eq!(s.distance(&x, &y).unwrap(), 5.0);
        // Sharing a length-2 prefix: d = 0 + 1.
        let z = Point::tree(&[0, 0, 1]);
        assert_eq!(s.distance(&x, &z).unwrap(), 1.0);
    }

    #[test]
    fn tree_ball_sizes_match_closed_form() {
        let s = t3();
        let base = s.basepoint();
        let sizes: Vec<usize> = (0..=6)
            .map(|r| s.ball(&base, r as f64).unwrap().len())
            .collect();
        assert_eq!(sizes[1], 4);
        assert_eq!(sizes[2], 10);
        assert_eq!(sizes[3], 22);
        for (r, &n) in sizes.iter().enumerate() {
            assert_eq!(n as u64, tree_ball_closed_form(3, r as u32));
            assert_eq!(n as u64, 3 * 2u64.pow(r as u32) - 2);
        }
    }

    #[test]
    fn lattice_ball_and_point_validation() {
        let s = z(2);
        let b = s.ball(&Point::lattice(&[0, 0]), 1.0).unwrap();
        assert_eq!(b.len(), 5);
        assert!(s
            .distance(&Point::lattice(&[0]), &Point::lattice(&[0, 0]))
            .is_err());
    }

    #[test]
    fn ball_budget_is_enforced() {
        let s = z(2);
        assert_eq!(
            s.ball_with_budget(&Point::lattice(&[0, 0]), 5.0, 10)
                .unwrap_err(),
            SpaceError::BudgetExceeded { budget: 10 }
        );
    }

    #[test]
    fn product_distance_is_l2_of_components() {
        let s = ModelSpace::Product(vec![t3(), t3()]);
        let x = Point::Product(vec![Point::tree(&[0, 0, 1]), Point::tree(&[])]);
        let y = Point::Product(vec![Point::tree(&[]), Point::tree(&[1, 0, 0, 1])]);
        // Component distances 3 and 4.
        assert_eq!(s.distance(&x, &y).unwrap(), 5.0);
    }

    #[test]
    fn product_ball_matches_brute_force_l2_filter() {
        let s = ModelSpace::Product(vec![t3(), t3()]);
        let base = s.basepoint();
        let ball = s.ball(&base, 2.0).unwrap();
        // Brute force: pairs of factor-ball points with d₁² + d₂² ≤ 4.
        let factor = t3();
        let fb = factor.ball(&factor.basepoint(), 2.0).unwrap();
        let mut count = 0;
        for p in &fb {
            for q in &fb {
                let d1 = factor.distance(p, &factor.basepoint()).unwrap();
                let d2 = factor.distance(q, &factor.basepoint()).unwrap();
                if d1 * d1 + d2 * d2 <= 4.0 {
                    count += 1;
                }
            }
        }
        assert_eq!(ball.len(), count);
    }

    #[test]
    fn half_plane_distance_closed_form() {
        let s = half();
        let d = s
            .distance(&Point::half_plane(0, 0), &Point::half_plane(3, 0))
            .unwrap();
        assert!((d - (5.5f64).acosh()).abs() < 1e-12);
        assert!((d - 2.3895).abs() < 1e-3);
        // One level apart, same x: distance ln 2 (vertical geodesic).
        let v = s
            .distance(&Point::half_plane(0, 0), &Point::half_plane(0, 1))
            .unwrap();
        assert!((v - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn half_plane_ball_is_honest() {
        let s = half();
        let c = Point::half_plane(0, 0);
        let ball = s.ball(&c, 2.0).unwrap();
        assert!(ball.contains(&c));
        assert!(ball.len() > 5);
        for p in &ball {
            assert!(s.distance(&c, p).unwrap() <= 2.0 + 1e-6);
        }
        // Points just outside are excluded: (3,1) is at distance ≈ 2.39.
        assert!(!ball.contains(&Point::half_plane(3, 0)));
    }

    #[test]
    fn bounded_geometry_thresholds() {
        assert_eq!(t3().bounded_geometry_threshold(), 1.0);
        assert_eq!(z(2).bounded_geometry_threshold(), 1.0);
        let th = half().bounded_geometry_threshold();
        assert!((th - (1.5f64).acosh()).abs() < 1e-12);
    }

    #[test]
    fn interval_cover_on_z_is_exact() {
        let s = z(1);
        let a = s.ball(&Point::lattice(&[0]), 10.0).unwrap();
        assert_eq!(a.len(), 21);
        assert_eq!(epsilon_volume(&s, &a, 1.0).unwrap(), (7, 7));
        // ⌈(2r+1)/3⌉ across radii.
        for r in 0..=12u64 {
            let a = s.ball(&Point::lattice(&[0]), r as f64).unwrap();
            let expected = (2 * r + 1).div_ceil(3);
            assert_eq!(epsilon_volume(&s, &a, 1.0).unwrap(), (expected, expected));
        }
    }

    #[test]
    fn epsilon_volume_of_a_point_is_one() {
        let s = z(2);
        let a = vec![Point::lattice(&[3, 4])];
        assert_eq!(epsilon_volume(&s, &a, 1.0).unwrap(), (1, 1));
    }

    #[test]
    fn epsilon_volume_bounds_are_ordered_on_trees() {
        let s = t3();
        let a = s.ball(&s.basepoint(), 3.0).unwrap();
        let (lo, hi) = epsilon_volume(&s, &a, 1.0).unwrap();
        assert!(lo >= 1 && lo <= hi);
        assert!(hi <= a.len() as u64);
    }

    #[test]
    fn epsilon_below_threshold_rejected() {
        let s = half();
        let a = vec![Point::half_plane(0, 0)];
        assert!(matches!(
            epsilon_volume(&s, &a, 0.5),
            Err(SpaceError::EpsilonBelowThreshold { .. })
        ));
    }

    #[test]
    fn growth_table_monotone_and_exact_on_z() {
        let table = growth_table(&z(1), 1.0, &[0, 1, 2, 5, 8, 12]).unwrap();
        for w in table.rows.windows(2) {
            assert!(w[0].lower <= w[1].lower);
            assert!(w[0].upper <= w[1].upper);
        }
        for row in &table.rows {
            let expected = (2 * row.r as u64 + 1).div_ceil(3);
            assert_eq!((row.lower, row.upper), (expected, expected));
        }
    }

    #[test]
    fn tree_growth_rate_fits_ln2() {
        let cards = ball_cardinalities(&t3(), 12).unwrap();
        let xs: Vec<f64> = (6..=12).map(|r| r as f64).collect();
        let ys: Vec<f64> = (6..=12).map(|r| (cards[r] as f64).ln()).collect();
        let (slope, _) = linear_fit(&xs, &ys);
        let target = std::f64::consts::LN_2;
        assert!((slope - target).abs() / target < tolerances::GROWTH_RATE_REL);
    }

    #[test]
    fn horosphere_distance_and_asymptotics() {
        let map = horosphere_embed(1);
        let a = Point::lattice(&[0]);
        assert_eq!(map.image_distance(&a, &a).unwrap(), 0.0);
        let b = Point::lattice(&[1000]);
        let d = map.image_distance(&a, &b).unwrap();
        assert!((d - (1.0 + 500_000.0f64).acosh()).abs() < 1e-12);
        assert!((d - 2.0 * (1000.0f64).ln()).abs() < 1e-5);
        // n = 2: Δx = (3,4) ↦ arccosh(13.5).
        let map2 = horosphere_embed(2);
        let d2 = map2
            .image_distance(&Point::lattice(&[0, 0]), &Point::lattice(&[3, 4]))
            .unwrap();
        assert!((d2 - (13.5f64).acosh()).abs() < 1e-12);
    }

    #[test]
    fn horosphere_gap_envelope_and_monotonicity() {
        let mut prev = f64::INFINITY;
        for r in 2..=60u32 {
            let r = r as f64;
            let gap = horosphere_gap(r);
            assert!(gap >= 0.0);
            assert!(gap <= (1.0 + 4.0 / (r * r)).ln() + tolerances::HORO_GAP_ENVELOPE_ABS);
            assert!(gap < prev);
            prev = gap;
        }
    }

    #[test]
    fn control_profile_identity_is_exact_and_coarse() {
        let s = z(1);
        let map = EmbeddingMap::Identity { space: s };
        let pairs: Vec<(Point, Point)> = (0..=20)
            .map(|r| (Point::lattice(&[0]), Point::lattice(&[r])))
            .collect();
        let profile = control_function_profile(&map, &pairs).unwrap();
        for row in &profile.rows {
            assert_eq!(row.lo, row.r);
            assert_eq!(row.hi, row.r);
        }
        assert!(profile.coarse);
    }

    #[test]
    fn control_profile_horosphere_compresses() {
        let map = horosphere_embed(1);
        let pairs: Vec<(Point, Point)> = (1..=200)
            .map(|r| (Point::lattice(&[0]), Point::lattice(&[r * 50])))
            .collect();
        let profile = control_function_profile(&map, &pairs).unwrap();
        for row in &profile.rows {
            let expected = (1.0 + row.r * row.r / 2.0).acosh();
            assert!((row.hi - expected).abs() < 1e-6);
        }
        assert!(profile.coarse);
        assert!(profile.sublinear_compression);
    }

    #[test]
    fn control_profile_constant_map_is_not_coarse() {
        let s = z(1);
        let map = EmbeddingMap::Constant { space: s };
        let pairs: Vec<(Point, Point)> = (0..=10)
            .map(|r| (Point::lattice(&[0]), Point::lattice(&[r])))
            .collect();
        let profile = control_function_profile(&map, &pairs).unwrap();
        assert!(!profile.coarse);
        assert!(profile.rows.iter().all(|row| row.hi == 0.0));
    }

    #[test]
    fn coarse_volume_identity_within_bounds() {
        let s = z(1);
        let map = EmbeddingMap::Identity { space: s.clone() };
        let pairs: Vec<(Point, Point)> = (0..=10)
            .map(|r| (Point::lattice(&[0]), Point::lattice(&[r])))
            .collect();
        let profile = control_function_profile(&map, &pairs).unwrap();
        let a: Vec<Point> = (0..=100).map(|i| Point::lattice(&[i])).collect();
        let report = coarse_volume_report(&map, &a, 2.0, &profile).unwrap();
        assert_eq!(report.vol_x, report.vol_y);
        assert!(report.within_bounds);
    }

    #[test]
    fn coarse_volume_horosphere_segment() {
        let map = horosphere_embed(1);
        let pairs: Vec<(Point, Point)> = (0..=30)
            .map(|r| (Point::lattice(&[0]), Point::lattice(&[r])))
            .collect();
        let profile = control_function_profile(&map, &pairs).unwrap();
        let a: Vec<Point> = (0..=300).map(|i| Point::lattice(&[i])).collect();
        let report = coarse_volume_report(&map, &a, 2.0, &profile).unwrap();
        // ε = 2: exact interval covering upstairs → 301/5 intervals.
        assert_eq!(report.vol_x, (61, 61));
        assert!(report.collapse_radius >= 6.0 && report.collapse_radius <= 8.0);
        assert!(report.within_bounds);
    }

    #[test]
    fn neighborhood_volume_inequality_on_z2() {
        let s = z(2);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let a = sample::random_lattice_subset(&mut rng, 2, 8, 12);
            let report = neighborhood_check(&s, &a, 2.0, 1.0).unwrap();
            assert!(report.ok);
        }
    }

    #[test]
    fn metric_axioms_spot_checked() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for space in [
            t3(),
            z(2),
            ModelSpace::Product(vec![t3(), z(1)]),
            half(),
        ] {
            let pts = sample::space_sample(&mut rng, &space, 6);
            assert!(metric_spot_check(&space, &pts).unwrap(), "{}", space.name());
        }
    }

    #[test]
    fn product_volume_dominates_projection() {
        let s = ModelSpace::Product(vec![t3(), t3()]);
        let factor = t3();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let pts: Vec<Point> = (0..40)
            .map(|_| {
                Point::Product(vec![
                    sample::random_tree_point(&mut rng, 3, 5),
                    sample::random_tree_point(&mut rng, 3, 5),
                ])
            })
            .collect();
        let (_, upper) = epsilon_volume(&s, &pts, 1.0).unwrap();
        let proj: Vec<Point> = pts
            .iter()
            .map(|p| match p {
                Point::Product(ps) => ps[0].clone(),
                _ => unreachable!(),
            })
            .collect();
        let (proj_lower, _) = epsilon_volume(&factor, &proj, 1.0).unwrap();
        // 1-Lipschitz projection: opt(A) ≥ opt(proj A), so the interval
        // consistency lower(proj) ≤ upper(A) must hold.
        assert!(proj_lower <= upper);
    }
}
