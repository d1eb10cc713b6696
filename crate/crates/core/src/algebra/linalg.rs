//! Exact linear algebra over the rationals.
//!
//! Rank uses fraction-free (Bareiss) elimination on an integer copy of the
//! matrix; each row is first cleared of denominators, which leaves the rank
//! unchanged. Kernel bases and linear solves use Gauss-Jordan elimination
//! over [`Rational`].

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{DenseMatrix, Rational};

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

/// Rank of an integer matrix, destroying it in the process.
pub(crate) fn bareiss_rank(a: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                // every division is exact: entries stay minors of the input
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Exact rank over the rationals.
pub fn rank(m: &DenseMatrix<Rational>) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| clear_denominators(m.row(i)))
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    bareiss_rank(&mut a, m.cols())
}

/// `cols - rank`.
pub fn nullspace_dim(m: &DenseMatrix<Rational>) -> usize {
    m.cols() - rank(m)
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(a: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut().skip(c) {
            *v *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..row.len() {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Fraction-free Gauss-Jordan elimination. On return every pivot entry
/// equals the returned determinant `D` and the matrix is `D · RREF`.
fn bareiss_jordan(a: &mut [Vec<BigInt>], cols: usize) -> (Vec<usize>, BigInt) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = a[r].clone();
        let pivot = &pivot_row[c];
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let factor = std::mem::take(&mut row[c]);
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, prev)
}

/// Basis of the right kernel `{x : M x = 0}`, one vector per free column,
/// normalized as read off the reduced row echelon form.
pub fn nullspace(m: &DenseMatrix<Rational>) -> Vec<Vec<Rational>> {
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| clear_denominators(m.row(i)))
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    let (pivots, det) = bareiss_jordan(&mut a, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = Rational::new(-a[r][free].clone(), det.clone());
        }
        basis.push(v);
    }
    basis
}

/// Same basis as [`nullspace`], by Gauss-Jordan elimination over the
/// rationals.
pub fn nullspace_rational(m: &DenseMatrix<Rational>) -> Vec<Vec<Rational>> {
    let cols = m.cols();
    let mut a: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let pivots = rref(&mut a, cols);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of `M x = b`, or `None` if the system is inconsistent.
pub fn solve(m: &DenseMatrix<Rational>, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length");
    let cols = m.cols();
    let mut a: Vec<Vec<Rational>> = (0..m.rows())
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref(&mut a, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][cols].clone();
    }
    Some(x)
}

/// Floating-point rank: singular values above `rel_tol · σ_max` count.
/// Only meant as a fast estimate for large instances.
pub fn float_rank(m: &DenseMatrix<Rational>, rel_tol: f64) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let a = DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        m.get(i, j).to_f64().unwrap_or(f64::NAN)
    });
    let sv = a.singular_values();
    let max = sv.iter().cloned().fold(0.0_f64, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}
