//! Exact certification of sparse-recovery matrix conditions.
//!
//! Everything in this crate works over arbitrary-precision integers and
//! rationals: spark computation with null-vector witnesses, exact
//! `(K, δ)` restricted isometry decisions, and the spark-to-RIP scaling
//! gadget together with an audit of its correctness claims.
//!
//! The crate is `no_std` (it needs `alloc`). The `parallel` feature fans
//! subset scans out over rayon; results are identical with or without it.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;
pub mod jacobi;
pub mod linalg;
pub mod matrix;
pub mod psd;
pub mod reduction;
pub mod rip;
pub mod scalar;
pub mod spark;
pub mod subsets;

pub use crate::error::{Error, Result};
pub use crate::jacobi::float_extreme_eigs;
pub use crate::linalg::{det_bareiss, gram, nullspace_vector, rank_exact};
pub use crate::matrix::{IntegerMatrix, Matrix, RationalMatrix, SymmetricMatrix};
pub use crate::psd::{decide_pd, decide_psd, gershgorin_interval, EigenInterval};
pub use crate::reduction::{
    audit_theorem, audit_theorem_with, build_reduction, det_chain_audit, det_chain_audit_with,
    lambda_min_audit, lambda_min_audit_with, AuditReport, DetAuditEntry, LambdaAuditEntry,
    ReductionInstance,
};
pub use crate::rip::{
    certify_operator_norm, coherence_bound, is_rip, is_rip_with, rip_constant_bracket,
    rip_constant_bracket_with, DeltaBracket, NormCertificate, RipDecision, RipViolation, Side,
};
pub use crate::scalar::{BigInt, BigRational, Scalar};
pub use crate::spark::{
    has_dependent_k_columns, has_dependent_k_columns_with, spark, spark_with, verify_witness,
    SparkResult, SubsetWitness,
};
pub use crate::subsets::{binomial, Combinations, ScanOptions};
