//! Pinned tolerances for every floating-point check in the toolkit.
//!
//! Exact (rational/integer) checks never consult these. Each constant is
//! owned by one family of checks; suites and acceptance tests must reference
//! these instead of inlining literals so the gate is pinned in one place.

/// Relative tolerance for chain masses against √det Gram (n ≤ 4).
/// The mass pipeline is exact until the final square roots, so the only
/// error is f64 rounding in sqrt and summation.
pub const MASS_GRAM_REL: f64 = 1e-9;

/// Relative tolerance for the residual-cycle mass bound
/// mass(R) ≤ 2n(p+1)·max over faces of ∏‖face vectors‖.
pub const RESIDUAL_MASS_REL: f64 = 1e-6;

/// Relative tolerance for half-plane distances against the closed form
/// arccosh(1 + r²/2).
pub const HORO_DIST_REL: f64 = 1e-12;

/// Absolute gap allowed in |d(r) − 2·ln r| at large radius (r = 10⁶),
/// for the asymptotic d(r) ~ 2·ln r.
pub const HORO_ASYMP_ABS: f64 = 1e-5;

/// Additive slack on the exact gap envelope |d(r) − 2 ln r| ≤ ln(1 + 4/r²).
pub const HORO_GAP_ENVELOPE_ABS: f64 = 1e-9;

/// Relative tolerance for the fitted exponential growth rate of T₃ ball
/// cardinalities against ln 2 (fit window r ∈ [6, 12]).
pub const GROWTH_RATE_REL: f64 = 0.05;

/// Absolute tolerance for log-log fitted filling exponents (2.0 for planar
/// rectangles, 1.0 for tree 0-cycles).
pub const SCALING_EXP_ABS: f64 = 0.05;

/// Absolute tolerance when matching a profiled control envelope against its
/// closed form.
pub const CONTROL_PROFILE_ABS: f64 = 1e-6;

/// Absolute slack for metric-axiom spot checks on float-valued metrics.
pub const METRIC_AXIOM_ABS: f64 = 1e-9;

/// Slack used when filtering enumerated points by a float radius, so exact
/// integer distances that tie the radius are never dropped.
pub const RADIUS_FILTER_ABS: f64 = 1e-9;
