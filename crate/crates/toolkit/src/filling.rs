//! Desk-scale filling oracles on integer cubical chains and graphs.
//!
//! Cubical k-cells are axis-aligned unit cells (anchor lattice point plus a
//! sorted set of spanned axes); chains are integer-weighted sums with mass
//! Σ|coefficient|. On top of the boundary operator sit:
//!
//! - combinatorial slicing ⟨c, axis, t⟩ = ∂(c|≤t) − (∂c)|≤t at half-integer
//!   thresholds, with the co-area inequality Σ_t mass(slice_t) ≤ mass(c);
//! - an exact 0-cycle filling oracle on trees and lattices (minimum-cost
//!   transportation between the negative and positive supports);
//! - an exact 1-cycle filling oracle in the planar lattice (winding
//!   numbers; unique because compactly supported planar 2-cycles vanish);
//! - scaling experiments reproducing the quadratic Euclidean filling law
//!   and the linear law on trees.

use std::collections::BTreeMap;

use crate::spaces::{linear_fit, ModelSpace, Point};

#[derive(Debug, PartialEq, thiserror::Error)]
pub enum FillError {
    #[error("chain degree mismatch: expected {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("boundary is undefined below degree 1")]
    DegreeTooLow,
    #[error("slice threshold must be a half-integer, got {0}")]
    BadThreshold(f64),
    #[error("weights must sum to zero")]
    UnbalancedWeights,
    #[error("input chain is not a cycle")]
    NotACycle,
    #[error("{0}")]
    Unsupported(&'static str),
}

/// Axis-aligned unit k-cell: anchor + [0,1]^axes (axes strictly increasing).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    anchor: Vec<i64>,
    axes: Vec<usize>,
}

impl Cell {
    pub fn new(anchor: Vec<i64>, mut axes: Vec<usize>) -> Result<Self, FillError> {
        axes.sort_unstable();
        axes.dedup();
        for &a in &axes {
            if a >= anchor.len() {
                return Err(FillError::DimMismatch {
                    expected: anchor.len(),
                    got: a + 1,
                });
            }
        }
        Ok(Cell { anchor, axes })
    }

    pub fn anchor(&self) -> &[i64] {
        &self.anchor
    }

    pub fn axes(&self) -> &[usize] {
        &self.axes
    }

    pub fn degree(&self) -> usize {
        self.axes.len()
    }

    pub fn dim(&self) -> usize {
        self.anchor.len()
    }

    /// Max coordinate of the cell along `axis` (anchor, or anchor + 1 when
    /// the cell spans the axis).
    fn max_along(&self, axis: usize) -> i64 {
        self.anchor[axis] + i64::from(self.axes.contains(&axis))
    }
}

/// Integer-weighted formal sum of same-degree cubical cells; canonical
/// (zero coefficients dropped, equal cells merged).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalChain {
    degree: usize,
    dim: usize,
    terms: BTreeMap<Cell, i64>,
}

impl CubicalChain {
    pub fn zero(degree: usize, dim: usize) -> Self {
        CubicalChain {
            degree,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        degree: usize,
        dim: usize,
        terms: impl IntoIterator<Item = (Cell, i64)>,
    ) -> Result<Self, FillError> {
        let mut chain = CubicalChain::zero(degree, dim);
        for (cell, coeff) in terms {
            if cell.degree() != degree {
                return Err(FillError::WrongDegree {
                    expected: degree,
                    got: cell.degree(),
                });
            }
            if cell.dim() != dim {
                return Err(FillError::DimMismatch {
                    expected: dim,
                    got: cell.dim(),
                });
            }
            chain.add_term(cell, coeff);
        }
        Ok(chain)
    }

    fn add_term(&mut self, cell: Cell, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(cell.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&cell);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cell, i64)> {
        self.terms.iter().map(|(c, &w)| (c, w))
    }

    pub fn coefficient(&self, cell: &Cell) -> i64 {
        self.terms.get(cell).copied().unwrap_or(0)
    }

    /// Σ |coefficient| — the cubical mass.
    pub fn mass(&self) -> u64 {
        self.terms.values().map(|c| c.unsigned_abs()).sum()
    }

    pub fn add(&self, other: &CubicalChain) -> Result<CubicalChain, FillError> {
        if other.degree != self.degree {
            return Err(FillError::WrongDegree {
                expected: self.degree,
                got: other.degree,
            });
        }
        if other.dim != self.dim {
            return Err(FillError::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut out = self.clone();
        for (cell, coeff) in &other.terms {
            out.add_term(cell.clone(), *coeff);
        }
        Ok(out)
    }

    pub fn neg(&self) -> CubicalChain {
        CubicalChain {
            degree: self.degree,
            dim: self.dim,
            terms: self.terms.iter().map(|(c, w)| (c.clone(), -w)).collect(),
        }
    }

    pub fn sub(&self, other: &CubicalChain) -> Result<CubicalChain, FillError> {
        self.add(&other.neg())
    }

    /// Cells of the chain entirely inside the half-space {x_axis ≤ t}.
    pub fn restrict_below(&self, axis: usize, t: f64) -> CubicalChain {
        CubicalChain {
            degree: self.degree,
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(cell, _)| (cell.max_along(axis) as f64) <= t)
                .map(|(c, w)| (c.clone(), *w))
                .collect(),
        }
    }
}

/// Alternating-sign cubical boundary. The face of a cell in direction
/// +e_a, where a sits at (1-based) position t in the cell's axis list,
/// carries sign (−1)^{t+1}; the opposite face carries −(−1)^{t+1}.
pub fn cubical_boundary(c: &CubicalChain) -> Result<CubicalChain, FillError> {
    if c.degree() == 0 {
        return Err(FillError::DegreeTooLow);
    }
    let mut out = CubicalChain::zero(c.degree() - 1, c.dim());
    for (cell, coeff) in c.terms() {
        for (pos, &axis) in cell.axes.iter().enumerate() {
            let sign = if pos % 2 == 0 { 1 } else { -1 }; // (−1)^{t+1}, t = pos+1
            let rest: Vec<usize> = cell
                .axes
                .iter()
                .copied()
                .filter(|&a| a != axis)
                .collect();
            let mut far = cell.anchor.clone();
            far[axis] += 1;
            out.add_term(
                Cell {
                    anchor: far,
                    axes: rest.clone(),
                },
                sign * coeff,
            );
            out.add_term(
                Cell {
                    anchor: cell.anchor.clone(),
                    axes: rest,
                },
                -sign * coeff,
            );
        }
    }
    Ok(out)
}

fn is_half_integer(t: f64) -> bool {
    (t - t.floor() - 0.5).abs() < 1e-9
}

/// The combinatorial slice ⟨c, axis, t⟩ = ∂(c|≤t) − (∂c)|≤t at a
/// half-integer threshold. Concentrated on the cells crossing the slab
/// boundary; cells flat along `axis` contribute nothing.
pub fn cubical_slice(c: &CubicalChain, axis: usize, t: f64) -> Result<CubicalChain, FillError> {
    if !is_half_integer(t) {
        return Err(FillError::BadThreshold(t));
    }
    let restricted = c.restrict_below(axis, t);
    let boundary_restricted = cubical_boundary(c)?.restrict_below(axis, t);
    cubical_boundary(&restricted)?.sub(&boundary_restricted)
}

/// All half-integer thresholds with a potentially nonzero slice, and the
/// co-area total Σ_t mass(slice_t). The inequality Σ ≤ mass(c) is exact.
pub fn coarea_profile(
    c: &CubicalChain,
    axis: usize,
) -> Result<(Vec<(f64, u64)>, u64), FillError> {
    if c.is_zero() {
        return Ok((Vec::new(), 0));
    }
    let lo = c
        .terms()
        .map(|(cell, _)| cell.anchor[axis])
        .min()
        .unwrap();
    let hi = c
        .terms()
        .map(|(cell, _)| cell.max_along(axis))
        .max()
        .unwrap();
    let mut rows = Vec::new();
    let mut total = 0u64;
    for i in lo..=hi {
        let t = i as f64 + 0.5;
        let m = cubical_slice(c, axis, t)?.mass();
        total += m;
        rows.push((t, m));
    }
    Ok((rows, total))
}

/// Weighted points with total weight zero on a graph model space.
#[derive(Clone, Debug)]
pub struct ZeroCycle {
    weights: Vec<(Point, i64)>,
}

impl ZeroCycle {
    pub fn new(weights: Vec<(Point, i64)>) -> Result<Self, FillError> {
        let mut merged: BTreeMap<Point, i64> = BTreeMap::new();
        for (p, w) in weights {
            *merged.entry(p).or_insert(0) += w;
        }
        merged.retain(|_, w| *w != 0);
        if merged.values().sum::<i64>() != 0 {
            return Err(FillError::UnbalancedWeights);
        }
        Ok(ZeroCycle {
            weights: merged.into_iter().collect(),
        })
    }

    /// [[y]] − [[x]].
    pub fn pair(x: Point, y: Point) -> Result<Self, FillError> {
        ZeroCycle::new(vec![(y, 1), (x, -1)])
    }

    pub fn weights(&self) -> &[(Point, i64)] {
        &self.weights
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Optimality {
    Exact,
    UpperBound,
}

/// One leg of a transport plan: `amount` units moved along a geodesic.
#[derive(Clone, Debug)]
pub struct TransportLeg {
    pub from: Point,
    pub to: Point,
    pub amount: u64,
    pub distance: u64,
}

/// Minimal 1-chain filling of a 0-cycle, as a transport plan.
#[derive(Clone, Debug)]
pub struct ZeroCycleFilling {
    pub plan: Vec<TransportLeg>,
    pub mass: u64,
    pub optimality: Optimality,
}

impl ZeroCycleFilling {
    /// ∂(filler) = z: the plan's endpoint differences reproduce the cycle.
    pub fn boundary_matches(&self, z: &ZeroCycle) -> bool {
        let mut acc: BTreeMap<Point, i64> = BTreeMap::new();
        for leg in &self.plan {
            *acc.entry(leg.to.clone()).or_insert(0) += leg.amount as i64;
            *acc.entry(leg.from.clone()).or_insert(0) -= leg.amount as i64;
        }
        acc.retain(|_, w| *w != 0);
        let expected: BTreeMap<Point, i64> = z.weights.iter().cloned().collect();
        acc == expected
    }
}

struct FlowEdge {
    to: usize,
    rev: usize,
    cap: i64,
    cost: i64,
}

/// Textbook successive-shortest-paths min-cost flow (Bellman–Ford rounds;
/// the instances here are tiny bipartite transportation problems).
struct MinCostFlow {
    graph: Vec<Vec<FlowEdge>>,
}

impl MinCostFlow {
    fn new(n: usize) -> Self {
        MinCostFlow {
            graph: (0..n).map(|_| Vec::new()).collect(),
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64, cost: i64) {
        let rev_from = self.graph[to].len();
        let rev_to = self.graph[from].len();
        self.graph[from].push(FlowEdge {
            to,
            rev: rev_from,
            cap,
            cost,
        });
        self.graph[to].push(FlowEdge {
            to: from,
            rev: rev_to,
            cap: 0,
            cost: -cost,
        });
    }

    /// Sends as much flow as possible from s to t, returning (flow, cost).
    fn run(&mut self, s: usize, t: usize) -> (i64, i64) {
        let n = self.graph.len();
        let mut total_flow = 0;
        let mut total_cost = 0;
        loop {
            let mut dist = vec![i64::MAX; n];
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
            dist[s] = 0;
            // Bellman-Ford; the graph has no negative cycles.
            for _ in 0..n {
                let mut changed = false;
                for u in 0..n {
                    if dist[u] == i64::MAX {
                        continue;
                    }
                    for (ei, e) in self.graph[u].iter().enumerate() {
                        if e.cap > 0 && dist[u] + e.cost < dist[e.to] {
                            dist[e.to] = dist[u] + e.cost;
                            prev[e.to] = Some((u, ei));
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            if dist[t] == i64::MAX {
                return (total_flow, total_cost);
            }
            let mut bottleneck = i64::MAX;
            let mut v = t;
            while let Some((u, ei)) = prev[v] {
                bottleneck = bottleneck.min(self.graph[u][ei].cap);
                v = u;
            }
            let mut v = t;
            while let Some((u, ei)) = prev[v] {
                self.graph[u][ei].cap -= bottleneck;
                let rev = self.graph[u][ei].rev;
                self.graph[v][rev].cap += bottleneck;
                v = u;
            }
            total_flow += bottleneck;
            total_cost += bottleneck * dist[t];
        }
    }
}

fn graph_distance(space: &ModelSpace, x: &Point, y: &Point) -> Result<u64, FillError> {
    match space {
        ModelSpace::RegularTree { .. } | ModelSpace::Lattice { .. } => {
            let d = space
                .distance(x, y)
                .map_err(|_| FillError::Unsupported("point outside the space"))?;
            Ok(d as u64)
        }
        _ => Err(FillError::Unsupported(
            "zero-cycle filling needs a tree or lattice graph metric",
        )),
    }
}

/// Exact minimal-mass filling of a 0-cycle on a tree or lattice: a
/// minimum-cost transportation between the negative supports (sources) and
/// positive supports (sinks), costs = graph distances. The optimal plan's
/// total cost is the filling volume; on geodesic graphs a pair [[y]]−[[x]]
/// fills at exactly d(x, y).
pub fn fill_zero_cycle(
    space: &ModelSpace,
    z: &ZeroCycle,
) -> Result<ZeroCycleFilling, FillError> {
    let sources: Vec<(&Point, u64)> = z
        .weights
        .iter()
        .filter(|(_, w)| *w < 0)
        .map(|(p, w)| (p, w.unsigned_abs()))
        .collect();
    let sinks: Vec<(&Point, u64)> = z
        .weights
        .iter()
        .filter(|(_, w)| *w > 0)
        .map(|(p, w)| (p, *w as u64))
        .collect();
    if sources.is_empty() {
        return Ok(ZeroCycleFilling {
            plan: Vec::new(),
            mass: 0,
            optimality: Optimality::Exact,
        });
    }

    let m = sources.len();
    let n = sinks.len();
    let s = m + n;
    let t = s + 1;
    let mut flow = MinCostFlow::new(t + 1);
    for (i, (_, supply)) in sources.iter().enumerate() {
        flow.add_edge(s, i, *supply as i64, 0);
    }
    for (j, (_, demand)) in sinks.iter().enumerate() {
        flow.add_edge(m + j, t, *demand as i64, 0);
    }
    let mut costs = vec![vec![0u64; n]; m];
    for (i, (src, _)) in sources.iter().enumerate() {
        for (j, (dst, _)) in sinks.iter().enumerate() {
            let d = graph_distance(space, src, dst)?;
            costs[i][j] = d;
            flow.add_edge(i, m + j, i64::MAX / 4, d as i64);
        }
    }
    let (sent, cost) = flow.run(s, t);
    debug_assert_eq!(sent as u64, sources.iter().map(|(_, w)| *w).sum::<u64>());

    let mut plan = Vec::new();
    for (i, (src, _)) in sources.iter().enumerate() {
        for e in &flow.graph[i] {
            if e.to >= m && e.to < m + n {
                let shipped = i64::MAX / 4 - e.cap;
                if shipped > 0 {
                    let j = e.to - m;
                    plan.push(TransportLeg {
                        from: (*src).clone(),
                        to: sinks[j].0.clone(),
                        amount: shipped as u64,
                        distance: costs[i][j],
                    });
                }
            }
        }
    }
    Ok(ZeroCycleFilling {
        plan,
        mass: cost as u64,
        optimality: Optimality::Exact,
    })
}

/// Brute-force reference for tiny instances: expands the cycle into unit
/// tokens and minimizes over all source-to-sink assignments. None when the
/// instance has more than 6 tokens per side.
pub fn exhaustive_min_transport(space: &ModelSpace, z: &ZeroCycle) -> Option<u64> {
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    for (p, w) in &z.weights {
        for _ in 0..w.unsigned_abs() {
            if *w < 0 {
                sources.push(p.clone());
            } else {
                sinks.push(p.clone());
            }
        }
    }
    if sources.len() > 6 {
        return None;
    }
    if sources.is_empty() {
        return Some(0);
    }
    let mut order: Vec<usize> = (0..sinks.len()).collect();
    let mut best = u64::MAX;
    permute(&mut order, 0, &mut |perm| {
        let mut cost = 0u64;
        for (i, &j) in perm.iter().enumerate() {
            cost += graph_distance(space, &sources[i], &sinks[j]).unwrap();
        }
        best = best.min(cost);
    });
    Some(best)
}

fn permute(order: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == order.len() {
        visit(order);
        return;
    }
    for i in k..order.len() {
        order.swap(k, i);
        permute(order, k + 1, visit);
        order.swap(k, i);
    }
}

/// Exact minimal filling of a planar 1-cycle, as the winding-number 2-chain.
#[derive(Clone, Debug)]
pub struct PlanarFilling {
    pub filler: CubicalChain,
    pub mass: u64,
    pub optimality: Optimality,
}

/// Fills a compactly supported 1-cycle in ℤ² with the unique compactly
/// supported 2-chain bounding it (winding numbers per face, computed by a
/// left-to-right scan per row). Exact: two fillers would differ by a
/// compactly supported planar 2-cycle, which is zero, so inf = this mass.
pub fn fill_one_cycle_plane(z: &CubicalChain) -> Result<PlanarFilling, FillError> {
    if z.degree() != 1 {
        return Err(FillError::WrongDegree {
            expected: 1,
            got: z.degree(),
        });
    }
    if z.dim() != 2 {
        return Err(FillError::DimMismatch {
            expected: 2,
            got: z.dim(),
        });
    }
    if z.is_zero() {
        return Ok(PlanarFilling {
            filler: CubicalChain::zero(2, 2),
            mass: 0,
            optimality: Optimality::Exact,
        });
    }

    // Vertical edges per row: coefficient of the edge anchored (i, j)
    // spanning the y-axis. The filler face values obey
    // F(i, j) = F(i−1, j) − z_vert(i, j), starting at 0 far to the left.
    let mut rows: BTreeMap<i64, BTreeMap<i64, i64>> = BTreeMap::new();
    let mut x_min = i64::MAX;
    let mut x_max = i64::MIN;
    for (cell, coeff) in z.terms() {
        x_min = x_min.min(cell.anchor[0]);
        x_max = x_max.max(cell.max_along(0));
        if cell.axes() == [1] {
            *rows
                .entry(cell.anchor[1])
                .or_default()
                .entry(cell.anchor[0])
                .or_insert(0) += coeff;
        }
    }

    let mut filler = CubicalChain::zero(2, 2);
    for (&j, verticals) in &rows {
        let mut f = 0i64;
        for i in x_min..=x_max {
            f -= verticals.get(&i).copied().unwrap_or(0);
            if f != 0 {
                filler.add_term(
                    Cell {
                        anchor: vec![i, j],
                        axes: vec![0, 1],
                    },
                    f,
                );
            }
        }
        if f != 0 {
            // Windings failed to close up: the row's vertical edges do not
            // cancel, so the input was not a cycle.
            return Err(FillError::NotACycle);
        }
    }

    // The scan only consumed vertical edges; this closes the loop on the
    // horizontal ones (and on any malformed input).
    if cubical_boundary(&filler)? != *z {
        return Err(FillError::NotACycle);
    }
    let mass = filler.mass();
    Ok(PlanarFilling {
        filler,
        mass,
        optimality: Optimality::Exact,
    })
}

/// The solid a×b rectangle [0,a]×[0,b] as a 2-chain of unit coefficient.
pub fn rectangle_region(a: i64, b: i64) -> CubicalChain {
    let mut c = CubicalChain::zero(2, 2);
    for i in 0..a {
        for j in 0..b {
            c.add_term(
                Cell {
                    anchor: vec![i, j],
                    axes: vec![0, 1],
                },
                1,
            );
        }
    }
    c
}

/// Boundary loop of the a×b rectangle (mass 2(a+b)).
pub fn rectangle_boundary(a: i64, b: i64) -> CubicalChain {
    cubical_boundary(&rectangle_region(a, b)).expect("degree 2 ≥ 1")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalingFamily {
    /// Square-boundary cycles in ℤ²; size = cycle mass ℓ (side ℓ/4).
    Z2Rectangles,
    /// Endpoint 0-cycles [[y]]−[[x]] in T₃ at distance ℓ.
    TreeEndpoints,
}

#[derive(Clone, Debug)]
pub struct ScalingRow {
    pub ell: f64,
    pub fill_mass: f64,
}

#[derive(Clone, Debug)]
pub struct ScalingTable {
    pub family: ScalingFamily,
    pub rows: Vec<ScalingRow>,
    /// Log-log least-squares exponent; None with fewer than two sizes.
    pub exponent: Option<f64>,
}

/// Runs the filling oracle over a family of cycle sizes and fits the
/// filling law FV(ℓ) ~ ℓ^e on a log-log scale.
pub fn filling_scaling_experiment(
    family: ScalingFamily,
    sizes: &[u64],
) -> Result<ScalingTable, FillError> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &ell in sizes {
        let fill_mass = match family {
            ScalingFamily::Z2Rectangles => {
                let side = (ell / 4).max(1) as i64;
                let z = rectangle_boundary(side, side);
                let filling = fill_one_cycle_plane(&z)?;
                debug_assert_eq!(filling.mass, (side * side) as u64);
                filling.mass as f64
            }
            ScalingFamily::TreeEndpoints => {
                let space = ModelSpace::RegularTree { degree: 3 };
                let x = Point::tree(&[]);
                let y = Point::tree(&vec![0u8; ell as usize]);
                let z = ZeroCycle::pair(x, y)?;
                fill_zero_cycle(&space, &z)?.mass as f64
            }
        };
        rows.push(ScalingRow {
            ell: ell as f64,
            fill_mass,
        });
    }
    let distinct = {
        let mut e: Vec<u64> = sizes.to_vec();
        e.sort_unstable();
        e.dedup();
        e.len()
    };
    let exponent = if distinct >= 2 {
        let xs: Vec<f64> = rows.iter().map(|r| r.ell.ln()).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.fill_mass.max(1.0).ln()).collect();
        Some(linear_fit(&xs, &ys).0)
    } else {
        None
    };
    Ok(ScalingTable {
        family,
        rows,
        exponent,
    })
}

pub mod sample {
    //! Deterministic random cubical chains for the co-area sweeps.

    use super::{Cell, CubicalChain};
    use rand::Rng;

    /// Random 2-chain in the [0, extent)² box with coefficients in ±1..=3.
    pub fn random_cubical_2chain<R: Rng>(
        rng: &mut R,
        extent: i64,
        max_cells: usize,
    ) -> CubicalChain {
        let cells = rng.gen_range(1..=max_cells);
        let mut chain = CubicalChain::zero(2, 2);
        for _ in 0..cells {
            let anchor = vec![rng.gen_range(0..extent), rng.gen_range(0..extent)];
            let magnitude = rng.gen_range(1..=3);
            let coeff = if rng.gen_bool(0.5) { magnitude } else { -magnitude };
            let cell = Cell::new(anchor, vec![0, 1]).expect("axes fit dim 2");
            chain = chain
                .add(&CubicalChain::from_terms(2, 2, vec![(cell, coeff)]).unwrap())
                .unwrap();
        }
        chain
    }

    /// Random 1-cycle: the boundary of a random 2-chain.
    pub fn random_planar_cycle<R: Rng>(rng: &mut R, extent: i64, max_cells: usize) -> CubicalChain {
        super::cubical_boundary(&random_cubical_2chain(rng, extent, max_cells)).unwrap()
    }
}
