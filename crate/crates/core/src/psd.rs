//! Exact semidefiniteness decisions and Gershgorin eigenvalue enclosures.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::linalg::leading_minor_signs_positive;
use crate::matrix::SymmetricMatrix;
use crate::scalar::{BigRational, Scalar};

/// Closed interval containing every eigenvalue of a symmetric matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenInterval {
    pub lower: BigRational,
    pub upper: BigRational,
}

impl EigenInterval {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }
}

/// Decides `S ⪰ 0` exactly.
///
/// Repeatedly pivots on a positive diagonal entry and passes to its Schur
/// complement. A negative diagonal entry, or a zero diagonal entry whose row
/// is not zero, certifies that `S` is not positive semidefinite. When no
/// positive pivot is left, the remaining block must be zero.
pub fn decide_psd<T: Scalar>(s: &SymmetricMatrix<T>) -> bool {
    let mut a: Vec<Vec<BigRational>> = (0..s.order())
        .map(|i| (0..s.order()).map(|j| s.get(i, j).to_rational()).collect())
        .collect();

    loop {
        let mut pivot = None;
        for (i, row) in a.iter().enumerate() {
            let d = &row[i];
            if d.is_negative() {
                return false;
            }
            if d.is_zero() {
                if row.iter().any(|v| !v.is_zero()) {
                    return false;
                }
            } else if pivot.is_none() {
                pivot = Some(i);
            }
        }
        let Some(p) = pivot else {
            // every diagonal entry is zero and every row is zero
            return true;
        };

        let pivot_row = a.swap_remove(p);
        for row in a.iter_mut() {
            row.swap_remove(p);
        }
        let mut pivot_rest = pivot_row;
        let d = pivot_rest.swap_remove(p);
        for (i, row) in a.iter_mut().enumerate() {
            if pivot_rest[i].is_zero() {
                continue;
            }
            let factor = &pivot_rest[i] / &d;
            for (j, v) in row.iter_mut().enumerate() {
                *v -= &factor * &pivot_rest[j];
            }
        }
    }
}

/// Decides `S ≻ 0` exactly: every leading principal minor is positive.
pub fn decide_pd<T: Scalar>(s: &SymmetricMatrix<T>) -> bool {
    leading_minor_signs_positive(&s.to_dense())
}

/// `[min_i (S_ii - R_i), max_i (S_ii + R_i)]` with `R_i = Σ_{j≠i} |S_ij|`.
pub fn gershgorin_interval<T: Scalar>(s: &SymmetricMatrix<T>) -> EigenInterval {
    let n = s.order();
    let mut lower: Option<BigRational> = None;
    let mut upper: Option<BigRational> = None;
    for i in 0..n {
        let center = s.get(i, i).to_rational();
        let radius = (0..n)
            .filter(|&j| j != i)
            .fold(BigRational::zero(), |acc, j| {
                acc + s.get(i, j).abs().to_rational()
            });
        let lo = &center - &radius;
        let hi = center + radius;
        if lower.as_ref().is_none_or(|l| lo < *l) {
            lower = Some(lo);
        }
        if upper.as_ref().is_none_or(|u| hi > *u) {
            upper = Some(hi);
        }
    }
    EigenInterval {
        lower: lower.expect("order >= 1"),
        upper: upper.expect("order >= 1"),
    }
}
