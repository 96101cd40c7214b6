//! Spark computation and `K`-column dependence testing.
//!
//! The spark of `Ψ` is the size of its smallest linearly dependent column
//! set. It is found by exhaustive enumeration of column subsets in
//! lexicographic order, so every reported witness is the lexicographically
//! smallest dependent set of its size.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{nullspace_vector, rank_exact};
use crate::matrix::Matrix;
use crate::scalar::{BigRational, Scalar};
use crate::subsets::{find_first, ScanOptions};

/// A dependent column set together with an exact null vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetWitness {
    pub indices: Vec<usize>,
    /// Coefficients aligned with `indices`.
    pub null_vector: Vec<BigRational>,
}

impl SubsetWitness {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SparkResult {
    /// The smallest dependent column set; its length is the spark.
    Dependent(SubsetWitness),
    /// All `cols` columns are independent. Reported as `cols + 1`.
    FullColumnRank { cols: usize },
}

impl SparkResult {
    pub fn value(&self) -> usize {
        match self {
            SparkResult::Dependent(w) => w.len(),
            SparkResult::FullColumnRank { cols } => cols + 1,
        }
    }

    pub fn witness(&self) -> Option<&SubsetWitness> {
        match self {
            SparkResult::Dependent(w) => Some(w),
            SparkResult::FullColumnRank { .. } => None,
        }
    }

    pub fn is_full_column_rank(&self) -> bool {
        matches!(self, SparkResult::FullColumnRank { .. })
    }

    /// `spark > k`, i.e. every `k` columns are independent.
    pub fn exceeds(&self, k: usize) -> bool {
        self.value() > k
    }
}

pub fn has_dependent_k_columns<T: Scalar>(
    psi: &Matrix<T>,
    k: usize,
) -> Result<Option<SubsetWitness>> {
    has_dependent_k_columns_with(psi, k, &ScanOptions::default())
}

/// The lexicographically first `k`-subset of dependent columns, if any.
pub fn has_dependent_k_columns_with<T: Scalar>(
    psi: &Matrix<T>,
    k: usize,
    opts: &ScanOptions,
) -> Result<Option<SubsetWitness>> {
    let n = psi.cols();
    if k == 0 || k > n {
        return Err(Error::SparsityOutOfRange { k, n });
    }
    opts.check(n, k)?;
    let hit = find_first(n, k, |subset| {
        let sub = psi.select_columns(subset).expect("subset in range");
        (rank_exact(&sub) < k).then(|| subset.to_vec())
    });
    hit.map(|indices| {
        let null_vector = nullspace_vector(psi, &indices)?;
        Ok(SubsetWitness {
            indices,
            null_vector,
        })
    })
    .transpose()
}

pub fn spark<T: Scalar>(psi: &Matrix<T>) -> Result<SparkResult> {
    spark_with(psi, &ScanOptions::default())
}

/// Exact spark of `psi`.
///
/// Fails with [`Error::BudgetExceeded`] when some subset size that has to be
/// scanned exceeds the budget.
pub fn spark_with<T: Scalar>(psi: &Matrix<T>, opts: &ScanOptions) -> Result<SparkResult> {
    let n = psi.cols();
    let rank = rank_exact(psi);
    if rank == n {
        return Ok(SparkResult::FullColumnRank { cols: n });
    }
    // some (rank + 1)-subset is always dependent
    for k in 1..=rank + 1 {
        if let Some(w) = has_dependent_k_columns_with(psi, k, opts)? {
            return Ok(SparkResult::Dependent(w));
        }
    }
    unreachable!("rank {rank} < {n} columns forces a dependent set of size rank + 1")
}

/// True iff `w.null_vector` is nonzero and `Ψ_w x = 0` exactly.
pub fn verify_witness<T: Scalar>(psi: &Matrix<T>, w: &SubsetWitness) -> bool {
    if w.indices.len() != w.null_vector.len() || w.null_vector.iter().all(Zero::is_zero) {
        return false;
    }
    let Ok(sub) = psi.select_columns(&w.indices) else {
        return false;
    };
    sub.to_rational()
        .mul_vec(&w.null_vector)
        .iter()
        .all(Zero::is_zero)
}
