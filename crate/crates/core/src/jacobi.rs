//! Floating-point eigenvalue estimates by cyclic Jacobi rotations.
//!
//! These are estimates for seeding searches and cross-checks. No exact
//! verdict in this crate depends on them.

use alloc::vec::Vec;

use crate::matrix::SymmetricMatrix;
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 100;

/// All eigenvalues of `s`, ascending, by cyclic Jacobi sweeps.
///
/// Rotations visit `(p, q)` pairs in row-major order, so the result is a
/// deterministic function of the input.
pub fn jacobi_eigenvalues<T: Scalar>(s: &SymmetricMatrix<T>) -> Vec<f64> {
    let n = s.order();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| s.get(i, j).to_f64_lossy()).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let diag: f64 = (0..n).map(|i| a[i][i] * a[i][i]).sum();
        if off == 0.0 || off <= f64::EPSILON * f64::EPSILON * diag {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigs.sort_by(f64::total_cmp);
    eigs
}

/// Applies the rotation that annihilates `a[p][q]`.
fn rotate(a: &mut [Vec<f64>], p: usize, q: usize) {
    let apq = a[p][q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    for row in a.iter_mut() {
        let (akp, akq) = (row[p], row[q]);
        row[p] = c * akp - s * akq;
        row[q] = s * akp + c * akq;
    }
    let (head, tail) = a.split_at_mut(q);
    for (x, y) in head[p].iter_mut().zip(tail[0].iter_mut()) {
        let (apk, aqk) = (*x, *y);
        *x = c * apk - s * aqk;
        *y = s * apk + c * aqk;
    }
    a[p][q] = 0.0;
    a[q][p] = 0.0;
}

/// Estimated `(λ_min, λ_max)` of `s`.
pub fn float_extreme_eigs<T: Scalar>(s: &SymmetricMatrix<T>) -> (f64, f64) {
    let eigs = jacobi_eigenvalues(s);
    (eigs[0], eigs[eigs.len() - 1])
}
