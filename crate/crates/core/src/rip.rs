//! Exact restricted isometry decisions.
//!
//! `Φ` is `(K, δ)`-RIP when every `K`-column Gram matrix `G` satisfies
//! `(1 - δ) I ⪯ G ⪯ (1 + δ) I`. Both sides are decided with the exact PSD
//! test, so boundary cases (an eigenvalue equal to `1 ± δ`) count as RIP.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::jacobi::jacobi_eigenvalues;
use crate::linalg::gram;
use crate::matrix::{Matrix, RationalMatrix, SymmetricMatrix};
use crate::psd::{decide_pd, decide_psd};
use crate::scalar::{BigInt, BigRational, Scalar};
use crate::subsets::{find_first, map_all, ScanOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `G - (1 - δ) I` is not PSD.
    Lower,
    /// `(1 + δ) I - G` is not PSD.
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RipViolation {
    pub subset: Vec<usize>,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RipDecision {
    /// The lexicographically first violating subset; `None` when RIP holds.
    pub violation: Option<RipViolation>,
}

impl RipDecision {
    pub fn is_rip(&self) -> bool {
        self.violation.is_none()
    }
}

/// Bracket `[lower, upper]` around the restricted isometry constant `δ_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaBracket {
    pub lower: BigRational,
    pub upper: BigRational,
    /// No `δ < 1` works: some `K`-subset is singular or has `λ_max ≥ 2`.
    /// Both ends are then 1.
    pub saturated: bool,
}

impl DeltaBracket {
    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }
}

/// Result of the operator-norm test `‖Φ‖₂ ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormCertificate {
    /// `I - ΦᵀΦ ⪰ 0`, decided exactly.
    pub exact: bool,
    /// `√(MN) · max|Φ_ij| ≤ 1`, a sufficient condition.
    pub cheap: bool,
}

pub fn is_rip<T: Scalar>(phi: &Matrix<T>, k: usize, delta: &BigRational) -> Result<RipDecision> {
    is_rip_with(phi, k, delta, &ScanOptions::default())
}

/// Exact `(k, δ)`-RIP verdict for `0 < δ < 1`.
///
/// Subsets are checked in lexicographic order and the lower side before the
/// upper side, so the reported violation is deterministic.
pub fn is_rip_with<T: Scalar>(
    phi: &Matrix<T>,
    k: usize,
    delta: &BigRational,
    opts: &ScanOptions,
) -> Result<RipDecision> {
    if !delta.is_positive() || delta >= &BigRational::one() {
        return Err(Error::DeltaOutOfRange(Box::new(delta.clone())));
    }
    rip_scan(&phi.to_rational(), k, delta, opts)
}

/// The RIP scan itself; accepts `δ = 0` (exact isometry on every subset),
/// which degenerate reduction instances can produce.
pub(crate) fn rip_scan(
    phi: &RationalMatrix,
    k: usize,
    delta: &BigRational,
    opts: &ScanOptions,
) -> Result<RipDecision> {
    let n = phi.cols();
    if k == 0 || k > n {
        return Err(Error::SparsityOutOfRange { k, n });
    }
    opts.check(n, k)?;
    let floor = BigRational::one() - delta;
    let ceiling = BigRational::one() + delta;
    let violation = find_first(n, k, |subset| {
        let g = gram(phi, subset).expect("subset in range");
        subset_violation(&g, &floor, &ceiling).map(|side| RipViolation {
            subset: subset.to_vec(),
            side,
        })
    });
    Ok(RipDecision { violation })
}

fn subset_violation(
    g: &SymmetricMatrix<BigRational>,
    floor: &BigRational,
    ceiling: &BigRational,
) -> Option<Side> {
    if !decide_psd(&g.shift_diagonal(&-floor.clone())) {
        Some(Side::Lower)
    } else if !decide_psd(&g.reflect_diagonal(ceiling)) {
        Some(Side::Upper)
    } else {
        None
    }
}

pub fn rip_constant_bracket<T: Scalar>(
    phi: &Matrix<T>,
    k: usize,
    tol: &BigRational,
) -> Result<DeltaBracket> {
    rip_constant_bracket_with(phi, k, tol, &ScanOptions::default())
}

/// Brackets `δ_K = inf{δ : Φ is (K, δ)-RIP}` to width at most `tol`.
///
/// Saturation (`δ_K ≥ 1`) is decided exactly first. Otherwise the bracket
/// starts at `[0, 1]`, is narrowed by two exact probes around the Jacobi
/// estimate of `δ_K`, then bisected with exact `is_rip` calls. Whenever
/// `lower > 0` the matrix is certified not `(K, lower)`-RIP, and whenever
/// `upper < 1` it is certified `(K, upper)`-RIP.
pub fn rip_constant_bracket_with<T: Scalar>(
    phi: &Matrix<T>,
    k: usize,
    tol: &BigRational,
    opts: &ScanOptions,
) -> Result<DeltaBracket> {
    if !tol.is_positive() {
        return Err(Error::InvalidTolerance(Box::new(tol.clone())));
    }
    let n = phi.cols();
    if k == 0 || k > n {
        return Err(Error::SparsityOutOfRange { k, n });
    }
    opts.check(n, k)?;
    let phi = phi.to_rational();
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));

    let per_subset: Vec<(bool, f64)> = map_all(n, k, |subset| {
        let g = gram(&phi, subset).expect("subset in range");
        let below_two = decide_pd(&g) && decide_pd(&g.reflect_diagonal(&two));
        let eigs = jacobi_eigenvalues(&g);
        let dev = (1.0 - eigs[0]).max(eigs[eigs.len() - 1] - 1.0);
        (below_two, dev)
    });
    if per_subset.iter().any(|(ok, _)| !ok) {
        return Ok(DeltaBracket {
            lower: one.clone(),
            upper: one,
            saturated: true,
        });
    }
    let estimate = per_subset
        .iter()
        .map(|&(_, d)| d)
        .fold(0.0f64, f64::max)
        .clamp(0.0, 1.0);
    let estimate = BigRational::from_float(estimate).unwrap_or_else(BigRational::zero);

    let mut lower = BigRational::zero();
    let mut upper = one;
    let probe =
        |delta: BigRational, lower: &mut BigRational, upper: &mut BigRational| -> Result<()> {
            if &delta > lower && &delta < upper {
                if rip_scan(&phi, k, &delta, opts)?.is_rip() {
                    *upper = delta;
                } else {
                    *lower = delta;
                }
            }
            Ok(())
        };

    let margin = tol / BigInt::from(4);
    probe(&estimate + &margin, &mut lower, &mut upper)?;
    probe(&estimate - &margin, &mut lower, &mut upper)?;
    while &upper - &lower > *tol {
        let mid = (&lower + &upper) / BigInt::from(2);
        probe(mid, &mut lower, &mut upper)?;
    }
    Ok(DeltaBracket {
        lower,
        upper,
        saturated: false,
    })
}

/// Decides `‖Φ‖₂ ≤ 1` exactly, and evaluates the entrywise sufficient
/// condition `√(MN) · ‖Φ‖_max ≤ 1`.
pub fn certify_operator_norm<T: Scalar>(phi: &Matrix<T>) -> NormCertificate {
    let phi = phi.to_rational();
    let (m, n) = (phi.rows(), phi.cols());
    // ΦᵀΦ and ΦΦᵀ share their largest eigenvalue; use the smaller one
    let g = if m < n {
        let t = phi.transpose();
        gram(&t, &(0..m).collect::<Vec<_>>())
    } else {
        gram(&phi, &(0..n).collect::<Vec<_>>())
    }
    .expect("full index range");
    let exact = decide_psd(&g.reflect_diagonal(&BigRational::one()));

    let max = phi.max_abs();
    let cheap = BigRational::from_integer(BigInt::from(m * n)) * &max * &max <= BigRational::one();
    NormCertificate { exact, cheap }
}

/// Gershgorin bound `max_i |G_ii - 1| + (K - 1) max_{i≠j} |G_ij|` on `δ_K`,
/// with `G = ΦᵀΦ`.
///
/// Every `K`-subset Gram has its spectrum within this distance of 1, so `Φ`
/// is `(K, δ)`-RIP for every `δ` in `[b, 1)` when `b < 1`.
pub fn coherence_bound<T: Scalar>(phi: &Matrix<T>, k: usize) -> Result<BigRational> {
    let n = phi.cols();
    if k == 0 || k > n {
        return Err(Error::SparsityOutOfRange { k, n });
    }
    let g = gram(&phi.to_rational(), &(0..n).collect::<Vec<_>>())?;
    let one = BigRational::one();
    let mut diag_dev = BigRational::zero();
    let mut off_max = BigRational::zero();
    for i in 0..n {
        diag_dev = diag_dev.max((g.get(i, i) - &one).abs());
        for j in i + 1..n {
            off_max = off_max.max(g.get(i, j).abs());
        }
    }
    Ok(diag_dev + off_max * BigInt::from(k - 1))
}
