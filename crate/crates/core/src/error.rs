use alloc::boxed::Box;
use alloc::vec::Vec;

use num_rational::BigRational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },
    #[error("expected {expected} entries for the given shape, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("column index {index} out of range for {cols} columns")]
    IndexOutOfRange { index: usize, cols: usize },
    #[error("column subset {0:?} is not strictly increasing")]
    UnsortedSubset(Vec<usize>),
    #[error("columns {0:?} are linearly independent, no null vector exists")]
    NoNullVector(Vec<usize>),
    #[error("sparsity level {k} outside [1, {n}]")]
    SparsityOutOfRange { k: usize, n: usize },
    #[error("delta {0} outside the open interval (0, 1)")]
    DeltaOutOfRange(Box<BigRational>),
    #[error("tolerance {0} must be positive")]
    InvalidTolerance(Box<BigRational>),
    #[error("scan needs {needed} subsets, above the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("matrix has no nonzero entry")]
    ZeroMatrix,
    #[error("columns {0:?} are linearly dependent")]
    DependentSubset(Vec<usize>),
    #[error("delta_sharp {sharp} exceeds delta_coarse {coarse}")]
    BoundChainBroken {
        sharp: Box<BigRational>,
        coarse: Box<BigRational>,
    },
}
