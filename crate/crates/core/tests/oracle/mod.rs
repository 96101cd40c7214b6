//! Brute-force reference computations used only by tests.
//!
//! Nothing here calls into the library's elimination, PSD or Jacobi code.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det(a: &[Vec<BigRational>]) -> BigRational {
    let n = a.len();
    if n == 0 {
        return BigRational::from_integer(1.into());
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut total = BigRational::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigRational>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &a[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Symmetric `a` is PSD iff every principal minor (not only the leading
/// ones) is nonnegative.
pub fn psd_by_principal_minors(a: &[Vec<BigRational>]) -> bool {
    let n = a.len();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<BigRational>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| a[i][j].clone()).collect())
            .collect();
        !cofactor_det(&sub).is_negative()
    })
}

/// Eigenvalues of a symmetric matrix, ascending, via nalgebra.
pub fn float_sym_eigs(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let m = DMatrix::from_fn(n, n, |i, j| a[i][j]);
    let mut eigs: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigs.sort_by(f64::total_cmp);
    eigs
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|&i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

/// Gram matrix of the selected columns, by hand.
pub fn float_gram(phi: &[Vec<f64>], cols: &[usize]) -> Vec<Vec<f64>> {
    cols.iter()
        .map(|&a| {
            cols.iter()
                .map(|&b| phi.iter().map(|row| row[a] * row[b]).sum())
                .collect()
        })
        .collect()
}

/// Smallest and largest eigenvalue over all `k`-column Gram matrices.
pub fn float_extremes(phi: &[Vec<f64>], k: usize) -> (f64, f64) {
    let n = phi[0].len();
    subsets(n, k)
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
            let e = float_sym_eigs(&float_gram(phi, s));
            (lo.min(e[0]), hi.max(e[e.len() - 1]))
        })
}

/// `δ_K = max over k-subsets of the largest deviation of a Gram eigenvalue from 1`.
pub fn float_delta_k(phi: &[Vec<f64>], k: usize) -> f64 {
    let (lo, hi) = float_extremes(phi, k);
    (1.0 - lo).max(hi - 1.0)
}

pub fn to_f64_rows(a: &[Vec<BigRational>]) -> Vec<Vec<f64>> {
    use num_traits::ToPrimitive;
    a.iter()
        .map(|r| r.iter().map(|v| v.to_f64().unwrap()).collect())
        .collect()
}
