//! Exponent sequences and control-function families behind the main
//! growth theorems, with exact rational verification.
//!
//! The β-sequences are generated from the factorial closed form
//! β_n = β₁ − Σ_{j<n} j! with β₁ the minimal integer making β_k ≥ 1. They
//! satisfy the recursion β_{n+1} = (n+1)·β_n − S_n − c with constant
//! c = β₁ − β₂ (c = 1 for the integer sequences; the constant scales with
//! the sequence, which is what lets the normalized form pass the same
//! checks). Admissibility S_p/p < β_{p−1} holds with the exact strictness
//! p·β_{p−1} − S_p = c, and the differences β_n − β_{n+1} = c·n! grow
//! factorially — the mechanism that forbids an infinite admissible
//! extension.
//!
//! The φ-families use the base function a(d) = max(1, d)^{−1/2} (decreasing
//! and ≥ 1/d for d ≥ 1) with either harmonic exponents α_i = 1 − 1/i or a
//! normalized β-sequence; φ₁(d) = d exactly by construction. Asymptotic
//! domination claims ("≪") are demonstrated on sampled grids — monotone
//! behaviour on the tail — never asserted as proved.

use num::{BigInt, One, Signed, Zero};

use crate::rational::{int, rat, to_f64, Rat};

#[derive(Debug, PartialEq, thiserror::Error)]
pub enum AsymError {
    #[error("k = {k} outside supported range {min}..={max}")]
    OutOfRange { k: usize, min: usize, max: usize },
    #[error("a beta sequence needs at least two entries")]
    TooShort,
    #[error("leading entry must be nonzero to normalize")]
    ZeroLeading,
    #[error("grid must be strictly increasing and positive")]
    BadGrid,
}

pub const BETA_K_MIN: usize = 2;
pub const BETA_K_MAX: usize = 10;

/// A finite exponent sequence β₁..β_k with its running sums, kept exact.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaSequence {
    raw: Vec<Rat>,
    normalized: Vec<Rat>,
    partial_sums: Vec<Rat>,
}

impl BetaSequence {
    /// Wraps raw values (at least two, β₁ ≠ 0), computing S_n and β/β₁.
    pub fn from_raw(raw: Vec<Rat>) -> Result<Self, AsymError> {
        if raw.len() < 2 {
            return Err(AsymError::TooShort);
        }
        if raw[0].is_zero() {
            return Err(AsymError::ZeroLeading);
        }
        let mut partial_sums = Vec::with_capacity(raw.len());
        let mut acc = Rat::zero();
        for b in &raw {
            acc += b;
            partial_sums.push(acc.clone());
        }
        let normalized = raw.iter().map(|b| b / &raw[0]).collect();
        Ok(BetaSequence {
            raw,
            normalized,
            partial_sums,
        })
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires ≥ 2 entries
    }

    pub fn raw(&self) -> &[Rat] {
        &self.raw
    }

    pub fn normalized(&self) -> &[Rat] {
        &self.normalized
    }

    /// S_1..S_k of the raw sequence.
    pub fn partial_sums(&self) -> &[Rat] {
        &self.partial_sums
    }

    /// The recursion/strictness constant c = β₁ − β₂ (1 for raw integer
    /// sequences, 1/β₁ after normalization).
    pub fn scale_constant(&self) -> Rat {
        &self.raw[0] - &self.raw[1]
    }

    /// The same sequence rescaled so β₁ = 1.
    pub fn normalized_sequence(&self) -> BetaSequence {
        BetaSequence::from_raw(self.normalized.clone()).expect("normalized keeps length and β₁=1")
    }
}

fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for j in 1..=n {
        f *= BigInt::from(j);
    }
    f
}

/// Generates the canonical integer β-sequence of length k from the
/// factorial closed form, with β₁ = 1 + Σ_{j=1}^{k−1} j! minimal so that
/// β_k ≥ 1.
pub fn beta_sequence(k: usize) -> Result<BetaSequence, AsymError> {
    if !(BETA_K_MIN..=BETA_K_MAX).contains(&k) {
        return Err(AsymError::OutOfRange {
            k,
            min: BETA_K_MIN,
            max: BETA_K_MAX,
        });
    }
    let mut factorial_sum = BigInt::zero();
    for j in 1..k {
        factorial_sum += factorial(j);
    }
    let beta1 = BigInt::one() + &factorial_sum;
    let mut raw = Vec::with_capacity(k);
    let mut drop = BigInt::zero();
    for n in 1..=k {
        if n > 1 {
            drop += factorial(n - 1);
        }
        raw.push(Rat::from(&beta1 - &drop));
    }
    BetaSequence::from_raw(raw)
}

/// Exact per-p verdicts for one admissibility level.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaConditionRow {
    pub p: usize,
    /// β_p > 0 (and β₁ > 0, folded into the first row).
    pub positivity: bool,
    /// β_p < β_{p−1}.
    pub monotonicity: bool,
    /// β_p = p·β_{p−1} − S_{p−1} − c with c = β₁ − β₂ > 0.
    pub recursion: bool,
    /// S_p / p < β_{p−1}.
    pub admissibility: bool,
    /// p·β_{p−1} − S_p = c exactly (the strict margin of admissibility).
    pub strictness: bool,
}

impl BetaConditionRow {
    pub fn all(&self) -> bool {
        self.positivity && self.monotonicity && self.recursion && self.admissibility && self.strictness
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BetaConditionReport {
    pub scale_constant: Rat,
    pub rows: Vec<BetaConditionRow>,
    pub all_pass: bool,
}

/// Checks positivity, strict decrease, the recursion (with its inferred
/// positive scale constant), admissibility, and the exact strictness
/// identity for p = 2..k.
pub fn verify_beta_conditions(seq: &BetaSequence) -> BetaConditionReport {
    let beta = seq.raw();
    let sums = seq.partial_sums();
    let c = seq.scale_constant();
    let c_positive = c.is_positive();
    let mut rows = Vec::with_capacity(beta.len() - 1);
    for p in 2..=beta.len() {
        let bp = &beta[p - 1];
        let bprev = &beta[p - 2];
        let rhs = int(p as i64) * bprev - &sums[p - 2] - &c;
        rows.push(BetaConditionRow {
            p,
            positivity: bp.is_positive() && beta[0].is_positive(),
            monotonicity: bp < bprev,
            recursion: c_positive && *bp == rhs,
            admissibility: &sums[p - 1] / int(p as i64) < *bprev,
            strictness: int(p as i64) * bprev - &sums[p - 1] == c,
        });
    }
    let all_pass = rows.iter().all(BetaConditionRow::all);
    BetaConditionReport {
        scale_constant: c,
        rows,
        all_pass,
    }
}

/// Finite-data form of the no-infinite-extension remark.
#[derive(Clone, Debug, PartialEq)]
pub struct ImpossibilityReport {
    /// d_n = β_n − β_{n+1} for n = 1..k−1 (positive for admissible data).
    pub differences: Vec<Rat>,
    pub strictly_increasing: bool,
    /// d_n = c·n! exactly, c = β₁ − β₂.
    pub factorial_pattern: bool,
    /// (n, (β_{n−1}−β_n) + (β_{n+1}−β_n)) for n = 2..k−1; each < 0.
    pub remark_values: Vec<(usize, Rat)>,
    pub remark_holds: bool,
    /// The first difference β₁ − β₂: a strict lower bound on every later
    /// difference, which factorial growth pushes past any fixed budget —
    /// no infinite admissible sequence can exist.
    pub lower_bound: Rat,
}

/// Verifies on the finite sequence the mechanism that rules out infinite
/// admissible extensions: consecutive differences grow strictly (indeed
/// factorially), so β_n eventually dives below any positive floor.
pub fn extension_impossibility(seq: &BetaSequence) -> ImpossibilityReport {
    let beta = seq.raw();
    let c = seq.scale_constant();
    let differences: Vec<Rat> = beta.windows(2).map(|w| &w[0] - &w[1]).collect();
    let strictly_increasing = differences.windows(2).all(|w| w[0] < w[1]);
    let factorial_pattern = differences
        .iter()
        .enumerate()
        .all(|(idx, d)| *d == &c * Rat::from(factorial(idx + 1)));
    let mut remark_values = Vec::new();
    for n in 2..beta.len() {
        // (β_{n−1} − β_n) + (β_{n+1} − β_n) = d_{n−1} − d_n
        let value = &differences[n - 2] - &differences[n - 1];
        remark_values.push((n, value));
    }
    let remark_holds = remark_values.iter().all(|(_, v)| v.is_negative());
    ImpossibilityReport {
        lower_bound: c,
        differences,
        strictly_increasing,
        factorial_pattern,
        remark_values,
        remark_holds,
    }
}

/// Exact harmonic bookkeeping under α_i = 1 − 1/i.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicLedger {
    pub k: usize,
    /// H_k = Σ_{i≤k} 1/i.
    pub h_k: Rat,
    /// S_k = Σ_{i≤k} α_i = k − H_k.
    pub s_k: Rat,
    /// S_k − (k/(k−1))·S_{k−1}, which must equal (H_k − 1)/(k − 1).
    pub identity_value: Rat,
    pub identity_matches: bool,
    pub below_one: bool,
}

fn harmonic_number(k: usize) -> Rat {
    (1..=k).map(|i| rat(1, i as i64)).sum()
}

/// Computes S_k − (k/(k−1))·S_{k−1} exactly under α_i = 1 − 1/i and checks
/// it equals (H_k − 1)/(k − 1) and sits below 1.
pub fn harmonic_alpha_check(k: usize) -> Result<HarmonicLedger, AsymError> {
    if k < 2 {
        return Err(AsymError::OutOfRange {
            k,
            min: 2,
            max: usize::MAX,
        });
    }
    let h_k = harmonic_number(k);
    let h_prev = harmonic_number(k - 1);
    let s_k = int(k as i64) - &h_k;
    let s_prev = int(k as i64 - 1) - &h_prev;
    let identity_value = &s_k - rat(k as i64, k as i64 - 1) * s_prev;
    let closed_form = (&h_k - int(1)) / int(k as i64 - 1);
    Ok(HarmonicLedger {
        k,
        identity_matches: identity_value == closed_form,
        below_one: identity_value < int(1),
        h_k,
        s_k,
        identity_value,
    })
}

/// The decreasing base function a(d) = max(1, d)^{−1/2}.
pub fn base_a(d: f64) -> f64 {
    d.max(1.0).powf(-0.5)
}

/// Exact check of a(d) ≥ 1/d at the perfect squares d = m², m = 1..max_m,
/// where a(m²) = 1/m is an exact rational.
pub fn base_a_dominates_reciprocal(max_m: u64) -> bool {
    (1..=max_m as i64).all(|m| rat(1, m) >= rat(1, m * m))
}

#[derive(Clone, Debug)]
pub enum ExponentKind {
    /// α_i = 1 − 1/i.
    Harmonic,
    /// 1 − β_i/β₁ from a beta sequence (so the i=1 exponent is zero).
    Beta(BetaSequence),
}

/// φ_i(d) = a(d)^{e_i}·d with e_1 = 0, so φ₁(d) = d identically.
#[derive(Clone, Debug)]
pub struct PhiFamily {
    pub exponents: ExponentKind,
}

impl PhiFamily {
    pub fn harmonic() -> Self {
        PhiFamily {
            exponents: ExponentKind::Harmonic,
        }
    }

    pub fn from_beta(seq: BetaSequence) -> Self {
        PhiFamily {
            exponents: ExponentKind::Beta(seq),
        }
    }

    /// Largest index i supported by the exponent data (unbounded for
    /// harmonic exponents).
    pub fn max_index(&self) -> Option<usize> {
        match &self.exponents {
            ExponentKind::Harmonic => None,
            ExponentKind::Beta(seq) => Some(seq.len()),
        }
    }

    /// The exact exponent e_i applied to a(d); i is 1-based.
    pub fn exponent_of_a(&self, i: usize) -> Rat {
        match &self.exponents {
            ExponentKind::Harmonic => int(1) - rat(1, i as i64),
            ExponentKind::Beta(seq) => int(1) - &seq.normalized()[i - 1],
        }
    }

    pub fn phi(&self, i: usize, d: f64) -> f64 {
        base_a(d).powf(to_f64(&self.exponent_of_a(i))) * d
    }
}

/// Parses/creates a geometric grid of `points` values from lo to hi.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>, AsymError> {
    if !(lo > 0.0) || !(hi > lo) || points < 2 {
        return Err(AsymError::BadGrid);
    }
    let step = (hi / lo).powf(1.0 / (points - 1) as f64);
    Ok((0..points)
        .map(|j| {
            if j + 1 == points {
                hi
            } else {
                lo * step.powi(j as i32)
            }
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct PhiRow {
    pub d: f64,
    /// φ_1(d)..φ_k(d).
    pub phi: Vec<f64>,
    /// φ_{i+1}(d)/φ_i(d) for i = 1..k−1.
    pub consecutive_ratios: Vec<f64>,
    /// (p, (∏_{i≤p, i≠p−1} φ_i)^{p/(p−1)} / ∏_{i≤p} φ_i) for p = 2..k.
    pub product_ratios: Vec<(usize, f64)>,
}

#[derive(Clone, Debug)]
pub struct PhiReport {
    pub rows: Vec<PhiRow>,
    /// Every φ_i strictly increasing along the grid.
    pub phi_increasing: bool,
    /// Every consecutive ratio strictly decreasing on the grid tail.
    pub ratios_decreasing_tail: bool,
    /// Per-p verdicts for the product-condition ratio on the tail.
    pub product_decreasing_tail: Vec<(usize, bool)>,
    /// All monitored quantities behave; finite-grid demonstration only.
    pub demonstrated: bool,
}

/// Tabulates the family over a grid and renders the asymptotic conditions
/// as monotone-tail demonstrations (the tail is the last half of the grid).
pub fn phi_family_report(fam: &PhiFamily, k: usize, grid: &[f64]) -> Result<PhiReport, AsymError> {
    if k < 2 || fam.max_index().is_some_and(|m| k > m) {
        return Err(AsymError::OutOfRange {
            k,
            min: 2,
            max: fam.max_index().unwrap_or(usize::MAX),
        });
    }
    if grid.len() < 2 || grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] <= 0.0 {
        return Err(AsymError::BadGrid);
    }

    let mut rows = Vec::with_capacity(grid.len());
    for &d in grid {
        let phi: Vec<f64> = (1..=k).map(|i| fam.phi(i, d)).collect();
        let consecutive_ratios = phi.windows(2).map(|w| w[1] / w[0]).collect();
        let mut product_ratios = Vec::with_capacity(k - 1);
        for p in 2..=k {
            let ln_all: f64 = phi[..p].iter().map(|v| v.ln()).sum();
            let ln_omit = ln_all - phi[p - 2].ln();
            let exponent = p as f64 / (p as f64 - 1.0);
            product_ratios.push((p, (exponent * ln_omit - ln_all).exp()));
        }
        rows.push(PhiRow {
            d,
            phi,
            consecutive_ratios,
            product_ratios,
        });
    }

    let tail_start = rows.len() / 2;
    let tail = &rows[tail_start..];
    let phi_increasing = (0..k).all(|i| rows.windows(2).all(|w| w[0].phi[i] < w[1].phi[i]));
    let ratios_decreasing_tail = (0..k - 1).all(|i| {
        tail.windows(2)
            .all(|w| w[0].consecutive_ratios[i] > w[1].consecutive_ratios[i])
    });
    let product_decreasing_tail: Vec<(usize, bool)> = (0..k - 1)
        .map(|idx| {
            let p = idx + 2;
            let ok = tail
                .windows(2)
                .all(|w| w[0].product_ratios[idx].1 > w[1].product_ratios[idx].1);
            (p, ok)
        })
        .collect();
    let demonstrated = phi_increasing
        && ratios_decreasing_tail
        && product_decreasing_tail.iter().all(|(_, ok)| *ok);
    Ok(PhiReport {
        rows,
        phi_increasing,
        ratios_decreasing_tail,
        product_decreasing_tail,
        demonstrated,
    })
}
