//! Dense and packed-symmetric matrices over exact scalars.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::{BigInt, BigRational, Scalar};

/// Dense row-major matrix with at least one row and one column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntegerMatrix = Matrix<BigInt>;
pub type RationalMatrix = Matrix<BigRational>;

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(m * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedRows {
                    row: i,
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Matrix::new(m, n, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Result<Self> {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = &T> + '_ {
        (0..self.rows).map(move |i| self.get(i, j))
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(T::abs).max().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_rational(&self) -> RationalMatrix {
        self.map(T::to_rational)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            data.extend(self.column(j).cloned());
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Checks that `subset` is strictly increasing and within `[0, cols)`.
    pub fn check_subset(&self, subset: &[usize]) -> Result<()> {
        if let Some(&bad) = subset.iter().find(|&&j| j >= self.cols) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                cols: self.cols,
            });
        }
        if subset.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedSubset(subset.to_vec()));
        }
        Ok(())
    }

    /// The column submatrix `A_S` for a strictly increasing, nonempty `subset`.
    pub fn select_columns(&self, subset: &[usize]) -> Result<Self> {
        self.check_subset(subset)?;
        Matrix::from_fn(self.rows, subset.len(), |i, j| {
            self.get(i, subset[j]).clone()
        })
    }

    /// `A x` for a vector with one entry per column.
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

impl IntegerMatrix {
    /// Convenience constructor from small integer literals.
    pub fn from_i64_rows<const N: usize>(rows: &[[i64; N]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    /// `A / c` as an exact rational matrix.
    pub fn div_scalar(&self, c: &BigInt) -> RationalMatrix {
        self.map(|v| BigRational::new(v.clone(), c.clone()))
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

/// Symmetric matrix stored as its packed upper triangle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymmetricMatrix<T> {
    order: usize,
    upper: Vec<T>,
}

impl<T: Scalar> SymmetricMatrix<T> {
    /// Builds from `f(i, j)` evaluated for `i <= j`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyMatrix { rows: 0, cols: 0 });
        }
        let mut upper = Vec::with_capacity(order * (order + 1) / 2);
        for i in 0..order {
            for j in i..order {
                upper.push(f(i, j));
            }
        }
        Ok(SymmetricMatrix { order, upper })
    }

    /// Reads the upper triangle of a square matrix; the lower triangle must mirror it.
    pub fn from_dense(a: &Matrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        SymmetricMatrix::from_fn(a.rows(), |i, j| a.get(i, j).clone())
    }

    pub fn identity(order: usize) -> Result<Self> {
        SymmetricMatrix::from_fn(order, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // rows 0..i hold n + (n-1) + ... + (n-i+1) entries
        i * self.order - i * i.saturating_sub(1) / 2 + (j - i)
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.upper[self.index(i, j)]
    }

    pub fn diagonal(&self) -> impl Iterator<Item = &T> + '_ {
        (0..self.order).map(move |i| self.get(i, i))
    }

    pub fn to_dense(&self) -> Matrix<T> {
        Matrix::from_fn(self.order, self.order, |i, j| self.get(i, j).clone()).expect("order >= 1")
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> SymmetricMatrix<U> {
        SymmetricMatrix {
            order: self.order,
            upper: self.upper.iter().map(f).collect(),
        }
    }

    pub fn to_rational(&self) -> SymmetricMatrix<BigRational> {
        self.map(T::to_rational)
    }

    /// `S + c I`.
    pub fn shift_diagonal(&self, c: &T) -> Self {
        let mut out = self.clone();
        for i in 0..self.order {
            let k = self.index(i, i);
            out.upper[k] = out.upper[k].clone() + c.clone();
        }
        out
    }

    /// `c I - S`.
    pub fn reflect_diagonal(&self, c: &T) -> Self {
        let mut out = self.map(|v| -v.clone());
        for i in 0..self.order {
            let k = self.index(i, i);
            out.upper[k] = out.upper[k].clone() + c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(T::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.order).all(|i| {
            (i..self.order).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
    }
}

impl<T: fmt::Display> fmt::Debug for SymmetricMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sym{}[", self.order)?;
        for (k, v) in self.upper.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}
