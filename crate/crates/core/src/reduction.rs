//! The spark-to-RIP scaling gadget and an audit of its guarantees.
//!
//! Given an integer matrix `Ψ` with largest absolute entry `P`, the gadget
//! picks `C = 2^t` with `t` minimal such that `4^t ≥ M N P²`, sets
//! `Φ = Ψ / C`, and a threshold `δ < 1` such that
//!
//! ```text
//! spark(Ψ) > K  ⟺  Φ is (K, δ)-RIP
//! ```
//!
//! Two thresholds are produced. `delta_sharp = 1 - 1 / (C² (K M P²)^(K-1))`
//! comes straight from the determinant/eigenvalue bound chain, and
//! `delta_coarse = 1 - 2^(-5 M N b)` with `b` the bit length of `P`, which is
//! only claimed when `K ≤ M ≤ N`. The audit checks the equivalence at both
//! thresholds and every intermediate inequality on every `K`-subset.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det_bareiss, gram};
use crate::matrix::{IntegerMatrix, RationalMatrix};
use crate::psd::{decide_pd, decide_psd};
use crate::rip::{certify_operator_norm, rip_scan, NormCertificate, RipDecision};
use crate::scalar::{one_minus_pow2_neg, BigInt, BigRational};
use crate::spark::{spark_with, SparkResult, SubsetWitness};
use crate::subsets::{map_all, ScanOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub psi: IntegerMatrix,
    pub k: usize,
    /// `P`, the largest absolute entry of `psi`.
    pub p_max: BigInt,
    /// `t` with `C = 2^t`.
    pub scale_exp: u64,
    /// `C`.
    pub c_scale: BigInt,
    /// `Ψ / C`, exact.
    pub phi: RationalMatrix,
    pub delta_sharp: BigRational,
    /// Only present when `K ≤ M ≤ N`.
    pub delta_coarse: Option<BigRational>,
    /// Bit length of `P`, standing in for the polynomial `p(M, N)`.
    pub bitlen_p: u64,
}

impl ReductionInstance {
    pub fn rows(&self) -> usize {
        self.psi.rows()
    }

    pub fn cols(&self) -> usize {
        self.psi.cols()
    }

    /// `C² (K M P²)^(K-1)`, the reciprocal of the guaranteed `λ_min` floor.
    pub fn sharp_denominator(&self) -> BigInt {
        sharp_denominator(&self.c_scale, self.k, self.rows(), &self.p_max)
    }

    /// `1 - delta_sharp`: every `K`-subset Gram of `Φ` has `λ_min` at least
    /// this when the subset is independent.
    pub fn lambda_floor(&self) -> BigRational {
        BigRational::one() - &self.delta_sharp
    }

    /// Total bits across every integer stored in the instance.
    pub fn encoded_bits(&self) -> u64 {
        let ints = self.psi.entries().iter().map(int_bits).sum::<u64>();
        let rats = self.phi.entries().iter().map(rational_bits).sum::<u64>();
        let deltas =
            rational_bits(&self.delta_sharp) + self.delta_coarse.as_ref().map_or(0, rational_bits);
        ints + rats + deltas + int_bits(&self.p_max) + int_bits(&self.c_scale)
    }
}

fn int_bits(v: &BigInt) -> u64 {
    v.bits().max(1)
}

fn rational_bits(v: &BigRational) -> u64 {
    int_bits(v.numer()) + int_bits(v.denom())
}

fn sharp_denominator(c: &BigInt, k: usize, m: usize, p: &BigInt) -> BigInt {
    let kmp2 = BigInt::from(k * m) * p * p;
    c * c * num_traits::pow(kmp2, k - 1)
}

/// Smallest `t` with `4^t ≥ target`, by integer comparison.
fn ceil_log4(target: &BigInt) -> u64 {
    let mut t = 0;
    let mut pow = BigInt::one();
    while &pow < target {
        pow <<= 2u32;
        t += 1;
    }
    t
}

/// Builds the gadget `(P, C, Φ, δ_sharp, δ_coarse)` for `Ψ` and `K`.
pub fn build_reduction(psi: &IntegerMatrix, k: usize) -> Result<ReductionInstance> {
    let (m, n) = (psi.rows(), psi.cols());
    if psi.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    if k == 0 || k > n {
        return Err(Error::SparsityOutOfRange { k, n });
    }
    let p_max = psi.max_abs();
    let scale_exp = ceil_log4(&(BigInt::from(m * n) * &p_max * &p_max));
    let c_scale = BigInt::one() << scale_exp;
    let phi = psi.div_scalar(&c_scale);

    let denom = sharp_denominator(&c_scale, k, m, &p_max);
    let delta_sharp = BigRational::one() - BigRational::new(BigInt::one(), denom);
    let bitlen_p = p_max.bits();

    let delta_coarse = if k <= m && m <= n {
        let coarse = one_minus_pow2_neg(5 * (m * n) as u64 * bitlen_p);
        if delta_sharp > coarse {
            return Err(Error::BoundChainBroken {
                sharp: Box::new(delta_sharp),
                coarse: Box::new(coarse),
            });
        }
        Some(coarse)
    } else {
        None
    };

    Ok(ReductionInstance {
        psi: psi.clone(),
        k,
        p_max,
        scale_exp,
        c_scale,
        phi,
        delta_sharp,
        delta_coarse,
        bitlen_p,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetAuditEntry {
    pub subset: Vec<usize>,
    /// `det(Ψ_SᵀΨ_S)`.
    pub det: BigInt,
    /// `det ≥ 1`.
    pub det_ok: bool,
    /// Every Gram entry lies in `[-M P², M P²]`.
    pub entries_ok: bool,
}

impl DetAuditEntry {
    pub fn passed(&self) -> bool {
        self.det_ok && self.entries_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaAuditEntry {
    pub subset: Vec<usize>,
    /// `Φ_SᵀΦ_S - (1 - δ_sharp) I ⪰ 0`.
    pub passed: bool,
}

pub fn det_chain_audit(psi: &IntegerMatrix, k: usize) -> Result<Vec<DetAuditEntry>> {
    det_chain_audit_with(psi, k, &ScanOptions::default())
}

/// For every `K`-subset, `det(Ψ_SᵀΨ_S) ≥ 1` and the Gram entry bound `M P²`.
///
/// A singular Gram matrix means the subset is dependent, which violates the
/// precondition `spark(Ψ) > K`; the first such subset is reported.
pub fn det_chain_audit_with(
    psi: &IntegerMatrix,
    k: usize,
    opts: &ScanOptions,
) -> Result<Vec<DetAuditEntry>> {
    let n = psi.cols();
    if k == 0 || k > n {
        return Err(Error::SparsityOutOfRange { k, n });
    }
    opts.check(n, k)?;
    let p = psi.max_abs();
    let entry_bound = BigInt::from(psi.rows()) * &p * &p;
    map_all(n, k, |subset| {
        let g = gram(psi, subset).expect("subset in range");
        let det = det_bareiss(&g.to_dense()).expect("square");
        if det.is_zero() {
            return Err(Error::DependentSubset(subset.to_vec()));
        }
        let entries_ok = (0..k).all(|i| (i..k).all(|j| g.get(i, j).abs() <= entry_bound));
        Ok(DetAuditEntry {
            subset: subset.to_vec(),
            det_ok: det >= BigInt::one(),
            det,
            entries_ok,
        })
    })
    .into_iter()
    .collect()
}

pub fn lambda_min_audit(inst: &ReductionInstance) -> Result<Vec<LambdaAuditEntry>> {
    lambda_min_audit_with(inst, &ScanOptions::default())
}

/// For every `K`-subset, `λ_min(Φ_SᵀΦ_S) ≥ 1 / (C² (K M P²)^(K-1))`,
/// decided exactly (equality passes).
pub fn lambda_min_audit_with(
    inst: &ReductionInstance,
    opts: &ScanOptions,
) -> Result<Vec<LambdaAuditEntry>> {
    let (n, k) = (inst.cols(), inst.k);
    opts.check(n, k)?;
    let floor = inst.lambda_floor();
    map_all(n, k, |subset| {
        let g = gram(&inst.phi, subset).expect("subset in range");
        if !decide_pd(&g) {
            return Err(Error::DependentSubset(subset.to_vec()));
        }
        Ok(LambdaAuditEntry {
            subset: subset.to_vec(),
            passed: decide_psd(&g.shift_diagonal(&-floor.clone())),
        })
    })
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub instance: ReductionInstance,
    pub spark: SparkResult,
    pub rip_at_sharp: RipDecision,
    pub rip_at_coarse: Option<RipDecision>,
    /// `spark > K` agrees with the RIP verdict at every produced threshold.
    pub equivalence_holds: bool,
    /// When `spark ≤ K`: the dependent set and its null vector `x`.
    pub zero_norm_witness: Option<SubsetWitness>,
    /// `‖Φx‖²` for that witness, exactly.
    pub witness_norm_sq: Option<BigRational>,
    /// Empty when `spark ≤ K`.
    pub det_audit: Vec<DetAuditEntry>,
    /// Empty when `spark ≤ K`.
    pub lambda_min_audit: Vec<LambdaAuditEntry>,
    pub norm: NormCertificate,
}

impl AuditReport {
    pub fn spark_exceeds_k(&self) -> bool {
        self.spark.exceeds(self.instance.k)
    }

    /// Every claim checked: the equivalence, the bound chain, the norm
    /// certificate and, for dependent instances, a zero-norm witness.
    pub fn all_passed(&self) -> bool {
        self.equivalence_holds
            && self.norm.exact
            && self.det_audit.iter().all(DetAuditEntry::passed)
            && self.lambda_min_audit.iter().all(|e| e.passed)
            && (self.spark_exceeds_k() || self.witness_norm_sq.as_ref().is_some_and(Zero::is_zero))
    }
}

pub fn audit_theorem(psi: &IntegerMatrix, k: usize) -> Result<AuditReport> {
    audit_theorem_with(psi, k, &ScanOptions::default())
}

/// Builds the gadget and checks every claim it rests on against exact
/// spark and RIP computations.
pub fn audit_theorem_with(
    psi: &IntegerMatrix,
    k: usize,
    opts: &ScanOptions,
) -> Result<AuditReport> {
    let instance = build_reduction(psi, k)?;
    let spark = spark_with(psi, opts)?;
    let rip_at_sharp = rip_scan(&instance.phi, k, &instance.delta_sharp, opts)?;
    let rip_at_coarse = instance
        .delta_coarse
        .as_ref()
        .map(|d| rip_scan(&instance.phi, k, d, opts))
        .transpose()?;

    let independent = spark.exceeds(k);
    let equivalence_holds = rip_at_sharp.is_rip() == independent
        && rip_at_coarse
            .as_ref()
            .is_none_or(|d| d.is_rip() == independent);

    let (zero_norm_witness, witness_norm_sq, det_audit, lambda_min_audit) = if independent {
        (
            None,
            None,
            det_chain_audit_with(psi, k, opts)?,
            lambda_min_audit_with(&instance, opts)?,
        )
    } else {
        let w = spark.witness().expect("spark <= K has a witness").clone();
        let image = instance
            .phi
            .select_columns(&w.indices)?
            .mul_vec(&w.null_vector);
        let norm_sq = image.iter().fold(BigRational::zero(), |acc, v| acc + v * v);
        (Some(w), Some(norm_sq), Vec::new(), Vec::new())
    };

    let norm = certify_operator_norm(&instance.phi);
    Ok(AuditReport {
        instance,
        spark,
        rip_at_sharp,
        rip_at_coarse,
        equivalence_holds,
        zero_norm_witness,
        witness_norm_sq,
        det_audit,
        lambda_min_audit,
        norm,
    })
}
