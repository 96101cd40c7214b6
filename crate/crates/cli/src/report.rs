//! JSON report documents.
//!
//! Every exact number is a string: integers in decimal, rationals as `p/q`
//! or `p`. Reports round-trip through serde without loss.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use ripcert_core::{
    AuditReport, BigRational, DeltaBracket, ReductionInstance, RipDecision, RipViolation, Side,
    SparkResult, SubsetWitness,
};

use crate::format::format_rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: Vec<String>,
    pub input_sha256: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub deltas: BTreeMap<String, String>,
    pub timing_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    Spark {
        cols: usize,
        spark: usize,
        full_column_rank: bool,
    },
    RipCheck {
        k: usize,
        is_rip: bool,
    },
    RipConstant {
        k: usize,
        saturated: bool,
    },
    Reduce {
        k: usize,
        rows: usize,
        cols: usize,
        p_max: String,
        scale_exp: u64,
        c_scale: String,
        bitlen_p: u64,
        phi: Vec<Vec<String>>,
    },
    Audit(AuditVerdict),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditVerdict {
    pub k: usize,
    pub spark: usize,
    pub spark_exceeds_k: bool,
    pub rip_at_sharp: bool,
    pub rip_at_coarse: Option<bool>,
    pub equivalence_holds: bool,
    pub witness_norm_sq: Option<String>,
    pub norm_certified: bool,
    pub cheap_norm_certified: bool,
    pub det_audit: Vec<DetRow>,
    pub lambda_min_audit: Vec<LambdaRow>,
    pub all_passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetRow {
    pub subset: Vec<usize>,
    pub det: String,
    pub entries_ok: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaRow {
    pub subset: Vec<usize>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    NullVector {
        indices: Vec<usize>,
        null_vector: Vec<String>,
    },
    RipViolation {
        indices: Vec<usize>,
        side: ViolatedSide,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolatedSide {
    Lower,
    Upper,
}

impl From<Side> for ViolatedSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Lower => ViolatedSide::Lower,
            Side::Upper => ViolatedSide::Upper,
        }
    }
}

impl From<&SubsetWitness> for Witness {
    fn from(w: &SubsetWitness) -> Self {
        Witness::NullVector {
            indices: w.indices.clone(),
            null_vector: w.null_vector.iter().map(format_rational).collect(),
        }
    }
}

impl From<&RipViolation> for Witness {
    fn from(v: &RipViolation) -> Self {
        Witness::RipViolation {
            indices: v.subset.clone(),
            side: v.side.into(),
        }
    }
}

pub(crate) fn spark_parts(cols: usize, s: &SparkResult) -> (Verdict, Vec<Witness>) {
    let verdict = Verdict::Spark {
        cols,
        spark: s.value(),
        full_column_rank: s.is_full_column_rank(),
    };
    (
        verdict,
        s.witness().map(Witness::from).into_iter().collect(),
    )
}

pub(crate) fn rip_parts(k: usize, d: &RipDecision) -> (Verdict, Vec<Witness>) {
    (
        Verdict::RipCheck {
            k,
            is_rip: d.is_rip(),
        },
        d.violation.iter().map(Witness::from).collect(),
    )
}

pub(crate) fn bracket_deltas(b: &DeltaBracket, tol: &BigRational) -> BTreeMap<String, String> {
    BTreeMap::from([
        ("lower".to_string(), format_rational(&b.lower)),
        ("upper".to_string(), format_rational(&b.upper)),
        ("tol".to_string(), format_rational(tol)),
    ])
}

pub(crate) fn reduction_parts(inst: &ReductionInstance) -> (Verdict, BTreeMap<String, String>) {
    let phi = (0..inst.rows())
        .map(|i| inst.phi.row(i).iter().map(format_rational).collect())
        .collect();
    let verdict = Verdict::Reduce {
        k: inst.k,
        rows: inst.rows(),
        cols: inst.cols(),
        p_max: inst.p_max.to_string(),
        scale_exp: inst.scale_exp,
        c_scale: inst.c_scale.to_string(),
        bitlen_p: inst.bitlen_p,
        phi,
    };
    (verdict, instance_deltas(inst))
}

fn instance_deltas(inst: &ReductionInstance) -> BTreeMap<String, String> {
    let mut deltas = BTreeMap::from([(
        "delta_sharp".to_string(),
        format_rational(&inst.delta_sharp),
    )]);
    if let Some(c) = &inst.delta_coarse {
        deltas.insert("delta_coarse".to_string(), format_rational(c));
    }
    deltas
}

pub(crate) fn audit_parts(r: &AuditReport) -> (Verdict, Vec<Witness>, BTreeMap<String, String>) {
    let verdict = AuditVerdict {
        k: r.instance.k,
        spark: r.spark.value(),
        spark_exceeds_k: r.spark_exceeds_k(),
        rip_at_sharp: r.rip_at_sharp.is_rip(),
        rip_at_coarse: r.rip_at_coarse.as_ref().map(RipDecision::is_rip),
        equivalence_holds: r.equivalence_holds,
        witness_norm_sq: r.witness_norm_sq.as_ref().map(format_rational),
        norm_certified: r.norm.exact,
        cheap_norm_certified: r.norm.cheap,
        det_audit: r
            .det_audit
            .iter()
            .map(|e| DetRow {
                subset: e.subset.clone(),
                det: e.det.to_string(),
                entries_ok: e.entries_ok,
                passed: e.passed(),
            })
            .collect(),
        lambda_min_audit: r
            .lambda_min_audit
            .iter()
            .map(|e| LambdaRow {
                subset: e.subset.clone(),
                passed: e.passed,
            })
            .collect(),
        all_passed: r.all_passed(),
    };
    let mut witnesses: Vec<Witness> = r.zero_norm_witness.iter().map(Witness::from).collect();
    witnesses.extend(r.rip_at_sharp.violation.iter().map(Witness::from));
    (
        Verdict::Audit(verdict),
        witnesses,
        instance_deltas(&r.instance),
    )
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// The report with its wall-clock field cleared, for comparing runs.
    pub fn without_timing(&self) -> Self {
        ReportDocument {
            timing_ms: 0,
            ..self.clone()
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        let delta = |key: &str| self.deltas.get(key).map_or("-", String::as_str);
        match &self.verdict {
            Verdict::Spark {
                spark,
                full_column_rank,
                ..
            } => {
                if *full_column_rank {
                    line(format!("spark: {spark} (full column rank)"));
                } else {
                    line(format!("spark: {spark}"));
                }
            }
            Verdict::RipCheck { k, is_rip } => {
                line(format!(
                    "rip: {is_rip} (k = {k}, delta = {})",
                    delta("delta")
                ));
            }
            Verdict::RipConstant { k, saturated } => {
                line(format!(
                    "delta_{k} in [{}, {}]",
                    delta("lower"),
                    delta("upper")
                ));
                if *saturated {
                    line("saturated: some subset is singular or exceeds norm 2".to_string());
                }
            }
            Verdict::Reduce {
                k,
                rows,
                cols,
                p_max,
                scale_exp,
                c_scale,
                bitlen_p,
                phi,
            } => {
                line(format!("k: {k}"));
                line(format!("p_max: {p_max} ({bitlen_p} bits)"));
                line(format!("scale: {c_scale} = 2^{scale_exp}"));
                line(format!("delta_sharp: {}", delta("delta_sharp")));
                line(format!("delta_coarse: {}", delta("delta_coarse")));
                line(format!("phi: {rows} {cols}"));
                for row in phi {
                    line(row.join(" "));
                }
            }
            Verdict::Audit(a) => {
                let yes_no = |b: bool| if b { "pass" } else { "FAIL" };
                line(format!("k: {}", a.k));
                line(format!(
                    "spark: {} (exceeds k: {})",
                    a.spark, a.spark_exceeds_k
                ));
                line(format!("delta_sharp: {}", delta("delta_sharp")));
                line(format!("rip at delta_sharp: {}", a.rip_at_sharp));
                if let Some(c) = a.rip_at_coarse {
                    line(format!("rip at delta_coarse: {c}"));
                }
                line(format!("equivalence: {}", yes_no(a.equivalence_holds)));
                if let Some(n) = &a.witness_norm_sq {
                    line(format!("witness |phi x|^2: {n}"));
                }
                line(format!(
                    "norm certificate: {} (cheap: {})",
                    yes_no(a.norm_certified),
                    a.cheap_norm_certified
                ));
                let det_ok = a.det_audit.iter().filter(|r| r.passed).count();
                line(format!("det audit: {det_ok}/{} subsets", a.det_audit.len()));
                let lam_ok = a.lambda_min_audit.iter().filter(|r| r.passed).count();
                line(format!(
                    "lambda_min audit: {lam_ok}/{} subsets",
                    a.lambda_min_audit.len()
                ));
                line(format!("all checks: {}", yes_no(a.all_passed)));
            }
        }
        for w in &self.witnesses {
            match w {
                Witness::NullVector {
                    indices,
                    null_vector,
                } => line(format!(
                    "witness: columns {indices:?}, null vector [{}]",
                    null_vector.join(", ")
                )),
                Witness::RipViolation { indices, side } => {
                    let side = match side {
                        ViolatedSide::Lower => "lower",
                        ViolatedSide::Upper => "upper",
                    };
                    line(format!("violation: columns {indices:?}, {side} side"))
                }
            }
        }
        out
    }
}
