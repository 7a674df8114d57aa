//! Exact rational scalars and the few float conversions the toolkit allows.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};

/// Exact rational scalar used for all coordinates, inner products, and
/// Gram determinants.
pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical `"p/q"` rendering with an explicit denominator (`"3/1"`, `"-2/5"`).
pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let d: BigInt = den.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(n, d))
}

/// Nearest-f64 value of an exact rational.
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range magnitudes; saturate with the right sign.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// √r as f64 for a nonnegative exact rational (tiny negatives from callers
/// are clamped; exact pipelines never produce them).
pub fn sqrt_f64(r: &Rat) -> f64 {
    let v = to_f64(r);
    if v <= 0.0 {
        0.0
    } else {
        v.sqrt()
    }
}
