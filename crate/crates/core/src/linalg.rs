//! Exact dense linear algebra: Gram matrices, fraction-free elimination,
//! rank and null vectors.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IntegerMatrix, Matrix, SymmetricMatrix};
use crate::scalar::{BigInt, BigRational, Scalar};

/// `A_S^T A_S` for the columns listed in `subset`.
///
/// Integer input gives an integer Gram matrix.
pub fn gram<T: Scalar>(a: &Matrix<T>, subset: &[usize]) -> Result<SymmetricMatrix<T>> {
    a.check_subset(subset)?;
    SymmetricMatrix::from_fn(subset.len(), |i, j| {
        let (ci, cj) = (subset[i], subset[j]);
        (0..a.rows()).fold(T::zero(), |acc, r| {
            acc + a.get(r, ci).clone() * a.get(r, cj).clone()
        })
    })
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det_bareiss(a: &IntegerMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(bareiss_det_rows(dense_rows(a)))
}

/// Determinant of a rational matrix, via row-wise denominator clearing.
pub fn det_rational<T: Scalar>(a: &Matrix<T>) -> Result<BigRational> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let (rows, scale) = integer_rows(a);
    Ok(BigRational::new(bareiss_det_rows(rows), scale))
}

fn bareiss_det_rows(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        eliminate_below(&mut a, k, &prev);
        prev = a[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

/// One Bareiss step with pivot `a[k][k]`: updates the trailing block and
/// clears column `k` below the pivot. Every division is exact.
fn eliminate_below(a: &mut [Vec<BigInt>], k: usize, prev: &BigInt) {
    let (head, tail) = a.split_at_mut(k + 1);
    let pivot_row = &head[k];
    let pivot = &pivot_row[k];
    for row in tail.iter_mut() {
        let lead = core::mem::take(&mut row[k]);
        for j in k + 1..pivot_row.len() {
            let num = &row[j] * pivot - &lead * &pivot_row[j];
            debug_assert!((&num % prev).is_zero());
            row[j] = num / prev;
        }
    }
}

/// Exact rank over the rationals (fraction-free elimination with full pivoting).
pub fn rank_exact<T: Scalar>(a: &Matrix<T>) -> usize {
    let (mut rows, _) = integer_rows(a);
    let (m, n) = (a.rows(), a.cols());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for k in 0..m.min(n) {
        let pivot = (k..n).find_map(|c| (k..m).find(|&r| !rows[r][c].is_zero()).map(|r| (r, c)));
        let Some((r, c)) = pivot else { break };
        rows.swap(k, r);
        if c != k {
            for row in rows.iter_mut() {
                row.swap(k, c);
            }
        }
        eliminate_below(&mut rows, k, &prev);
        prev = rows[k][k].clone();
        rank += 1;
    }
    rank
}

/// Leading principal minors of the row-rescaled matrix, stopping after the
/// first one that is not positive. Row rescaling by positive factors keeps
/// every minor's sign, which is all positive-definiteness needs.
pub(crate) fn leading_minor_signs_positive<T: Scalar>(a: &Matrix<T>) -> bool {
    let (mut rows, _) = integer_rows(a);
    let mut prev = BigInt::one();
    for k in 0..rows.len() {
        if !rows[k][k].is_positive() {
            return false;
        }
        eliminate_below(&mut rows, k, &prev);
        prev = rows[k][k].clone();
    }
    true
}

/// Nonzero `x` with `A_S x = 0`, normalized so its first nonzero entry is 1.
///
/// The free variable chosen is the first non-pivot column of the reduced row
/// echelon form of `A_S`.
pub fn nullspace_vector<T: Scalar>(a: &Matrix<T>, subset: &[usize]) -> Result<Vec<BigRational>> {
    let sub = a.select_columns(subset)?;
    let (m, s) = (sub.rows(), sub.cols());
    let mut r: Vec<Vec<BigRational>> = (0..m)
        .map(|i| sub.row(i).iter().map(T::to_rational).collect())
        .collect();

    let mut pivot_cols = Vec::new();
    for col in 0..s {
        let row = pivot_cols.len();
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&i| !r[i][col].is_zero()) else {
            continue;
        };
        r.swap(row, p);
        let inv = r[row][col].recip();
        for v in r[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = r[row].clone();
        for (i, target) in r.iter_mut().enumerate() {
            if i != row && !target[col].is_zero() {
                let factor = target[col].clone();
                for (v, p) in target[col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= &factor * p;
                }
            }
        }
        pivot_cols.push(col);
    }
    let free = (0..s)
        .find(|c| !pivot_cols.contains(c))
        .ok_or_else(|| Error::NoNullVector(subset.to_vec()))?;

    let mut x = vec![BigRational::zero(); s];
    x[free] = BigRational::one();
    for (pr, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = -r[pr][free].clone();
    }
    let lead = x
        .iter()
        .find(|v| !v.is_zero())
        .cloned()
        .expect("x[free] = 1");
    for v in x.iter_mut() {
        *v /= &lead;
    }
    Ok(x)
}

fn dense_rows(a: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    (0..a.rows()).map(|i| a.row(i).to_vec()).collect()
}

/// Rows scaled by the lcm of their denominators, plus the product of the
/// scale factors (positive).
fn integer_rows<T: Scalar>(a: &Matrix<T>) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut total = BigInt::one();
    let rows = (0..a.rows())
        .map(|i| {
            let row: Vec<BigRational> = a.row(i).iter().map(T::to_rational).collect();
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            total *= &lcm;
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    (rows, total)
}
