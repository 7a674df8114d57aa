//! Small exact linear algebra over rationals: determinants and linear
//! solves for the Gram systems used by chain masses and sector generators.

use crate::rational::Rat;
use num::traits::{One, Zero};

/// Determinant by fraction-free-ish Gaussian elimination (exact rationals, so
/// plain elimination with pivoting is already exact). `m` must be square.
pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    if n == 0 {
        return Rat::one();
    }
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut sign = Rat::one();
    let mut acc = Rat::one();
    for col in 0..n {
        let pivot_row = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(r) => r,
            None => return Rat::zero(),
        };
        if pivot_row != col {
            a.swap(pivot_row, col);
            sign = -sign;
        }
        let pivot = a[col][col].clone();
        acc *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    sign * acc
}

/// Solves the square system `m x = b` exactly. Returns `None` when `m` is
/// singular.
pub fn solve(m: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n) && b.len() == n);
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, col);
        let pivot = a[col][col].clone();
        for c in col..=n {
            a[col][c] = &a[col][c] / &pivot;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn empty_determinant_is_one() {
        assert_eq!(det(&[]), int(1));
    }

    #[test]
    fn two_by_two_determinant() {
        let m = vec![vec![rat(1, 2), int(3)], vec![int(4), int(5)]];
        // 1/2·5 − 3·4 = 5/2 − 12 = −19/2
        assert_eq!(det(&m), rat(-19, 2));
    }

    #[test]
    fn singular_determinant_is_zero() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(det(&m), int(0));
    }

    #[test]
    fn solve_recovers_exact_solution() {
        // x + 2y = 5, 3x − y = 1  → x = 1, y = 2
        let m = vec![vec![int(1), int(2)], vec![int(3), int(-1)]];
        let b = vec![int(5), int(1)];
        assert_eq!(solve(&m, &b).unwrap(), vec![int(1), int(2)]);
    }

    #[test]
    fn solve_detects_singular() {
        let m = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve(&m, &[int(1), int(2)]).is_none());
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let m = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(det(&m), int(-1));
        assert_eq!(solve(&m, &[int(3), int(4)]).unwrap(), vec![int(4), int(3)]);
    }
}
