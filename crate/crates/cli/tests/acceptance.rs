//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::fmt::Write as _;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use ripcert::ReportDocument;
use ripcert::{gen_planted, gen_random, run, serialize_matrix, GeneratorKind, GeneratorSpec};
use ripcert_core::{
    audit_theorem, build_reduction, decide_psd, det_bareiss, gram, rip_constant_bracket,
    AuditReport, BigInt, BigRational, Combinations, IntegerMatrix, Matrix, RationalMatrix, Scalar,
    Side, SymmetricMatrix,
};

const SUITE_ONE_SIZE: u64 = 500;
const SUITE_ONE_SECONDS: u64 = 120;
const PLANTED_SIZE: u64 = 200;
const BRACKET_TOL: (i64, i64) = (1, 1_000_000_000);
const FLOAT_AGREEMENT: f64 = 1e-6;
const BRACKET_MATRICES: u64 = 100;
const PSD_MATRICES: u64 = 1000;
const STRESS_P: u64 = 1_000_000;
const STRESS_SECONDS: u64 = 10;
const STRESS_BIT_SLACK: u64 = 2;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn spec(kind: GeneratorKind, m: usize, n: usize, p_max: u64, k: usize, seed: u64) -> GeneratorSpec {
    GeneratorSpec {
        kind,
        m,
        n,
        p_max,
        k,
        seed,
    }
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn rows_of(a: &RationalMatrix) -> Vec<Vec<BigRational>> {
    (0..a.rows()).map(|i| a.row(i).to_vec()).collect()
}

fn dense<T: Scalar>(s: &SymmetricMatrix<T>) -> Vec<Vec<BigRational>> {
    (0..s.order())
        .map(|i| (0..s.order()).map(|j| s.get(i, j).to_rational()).collect())
        .collect()
}

/// Gram of the chosen columns by hand, without the library.
fn hand_gram(a: &RationalMatrix, cols: &[usize]) -> Vec<Vec<BigRational>> {
    cols.iter()
        .map(|&p| {
            cols.iter()
                .map(|&q| (0..a.rows()).map(|i| a.get(i, p) * a.get(i, q)).sum())
                .collect()
        })
        .collect()
}

/// Suite 1: M in [2,5], N in [M,8], entries in [-3,3], one fixed seed per
/// matrix. All-zero draws are skipped to the next seed.
fn suite_one() -> Vec<IntegerMatrix> {
    let mut out = Vec::new();
    let mut seed = 0x5eed_0000u64;
    for i in 0..SUITE_ONE_SIZE as usize {
        let m = 2 + i % 4;
        let n = m + (i / 4) % (9 - m);
        loop {
            seed += 1;
            let a = gen_random(&spec(GeneratorKind::Random, m, n, 3, 0, seed)).unwrap();
            if !a.is_zero() {
                out.push(a);
                break;
            }
        }
    }
    out
}

/// Suite 2: planted dependencies of size k in [2,4].
fn suite_two() -> Vec<(IntegerMatrix, usize)> {
    (0..PLANTED_SIZE as usize)
        .map(|i| {
            let k = 2 + i % 3;
            let m = 2 + (i / 3) % 3;
            let n = m.max(k) + (i / 9) % 3;
            let seed = 0x91a7_0000 + i as u64;
            (
                gen_planted(&spec(GeneratorKind::Planted, m, n, 3, k, seed)).unwrap(),
                k,
            )
        })
        .collect()
}

struct SuiteRun {
    cases: Vec<(IntegerMatrix, usize, AuditReport)>,
    elapsed: Duration,
}

fn audit_suite_one() -> &'static SuiteRun {
    static RUN: OnceLock<SuiteRun> = OnceLock::new();
    RUN.get_or_init(|| {
        let matrices = suite_one();
        let started = Instant::now();
        let mut cases = Vec::new();
        for psi in matrices {
            for k in 1..=psi.rows() {
                let report = audit_theorem(&psi, k).unwrap();
                cases.push((psi.clone(), k, report));
            }
        }
        SuiteRun {
            cases,
            elapsed: started.elapsed(),
        }
    })
}

fn audit_suite_two() -> &'static Vec<(IntegerMatrix, usize, AuditReport)> {
    static RUN: OnceLock<Vec<(IntegerMatrix, usize, AuditReport)>> = OnceLock::new();
    RUN.get_or_init(|| {
        suite_two()
            .into_iter()
            .map(|(psi, k)| {
                let r = audit_theorem(&psi, k).unwrap();
                (psi, k, r)
            })
            .collect()
    })
}

/// Whether some k-subset of columns is dependent, decided by cofactor
/// expansion of every k-column Gram determinant.
fn oracle_has_dependent_subset(psi: &IntegerMatrix, k: usize) -> bool {
    let r = psi.to_rational();
    Combinations::new(psi.cols(), k).any(|s| oracle::cofactor_det(&hand_gram(&r, &s)).is_zero())
}

fn theorem_equivalence() -> Verdict {
    let run = audit_suite_one();
    let mut failures = Vec::new();
    for (psi, k, r) in &run.cases {
        let independent = r.spark.value() > *k;
        let sharp = r.rip_at_sharp.is_rip();
        let coarse = match &r.rip_at_coarse {
            Some(d) => d.is_rip(),
            None => {
                failures.push(format!("{psi:?} k={k}: no coarse delta"));
                continue;
            }
        };
        let oracle_independent = !oracle_has_dependent_subset(psi, *k);
        if !(independent == sharp && sharp == coarse && independent == oracle_independent) {
            failures.push(format!(
                "{psi:?} k={k}: spark>k {independent}, oracle {oracle_independent}, sharp {sharp}, coarse {coarse}"
            ));
        }
    }
    let secs = run.elapsed.as_secs_f64();
    if secs >= SUITE_ONE_SECONDS as f64 {
        failures.push(format!("took {secs:.1} s"));
    }
    let yes = run.cases.iter().filter(|c| c.2.spark_exceeds_k()).count();
    summarize(
        failures,
        format!(
            "{} matrices, {} (matrix, K) cases, {yes} with spark > K, {secs:.1} s",
            SUITE_ONE_SIZE,
            run.cases.len()
        ),
    )
}

fn planted_suite() -> Verdict {
    let mut failures = Vec::new();
    for (psi, k, r) in audit_suite_two() {
        let phi = &r.instance.phi;
        let ok = match &r.zero_norm_witness {
            Some(w) => {
                // ‖Φx‖² recomputed by hand from the witness
                let norm_sq: BigRational = (0..phi.rows())
                    .map(|i| {
                        let dot: BigRational = w
                            .indices
                            .iter()
                            .zip(&w.null_vector)
                            .map(|(&j, x)| phi.get(i, j) * x)
                            .sum();
                        &dot * &dot
                    })
                    .sum();
                norm_sq.is_zero()
                    && r.witness_norm_sq.as_ref().is_some_and(Zero::is_zero)
                    && w.null_vector.iter().any(|x| !x.is_zero())
            }
            None => false,
        };
        if r.spark.value() > *k || r.rip_at_sharp.is_rip() || !ok {
            failures.push(format!("{psi:?} k={k}"));
        }
    }
    summarize(failures, format!("{PLANTED_SIZE} planted instances"))
}

fn bound_chain() -> Verdict {
    let mut failures = Vec::new();
    let mut audited = 0usize;
    for (psi, k, r) in &audit_suite_one().cases {
        let inst = &r.instance;
        let bound = BigInt::from(inst.rows()) * &inst.p_max * &inst.p_max;
        let floor = BigRational::one() - &inst.delta_sharp;
        let psi_r = psi.to_rational();
        for s in Combinations::new(psi.cols(), *k) {
            let g = gram(psi, &s).unwrap();
            if (0..*k).any(|i| (0..*k).any(|j| g.get(i, j).magnitude() > bound.magnitude())) {
                failures.push(format!("{psi:?} {s:?}: Gram entry above M P^2"));
            }
            let det = det_bareiss(&g.to_dense()).unwrap();
            let expected = oracle::cofactor_det(&hand_gram(&psi_r, &s));
            if BigRational::from_integer(det.clone()) != expected {
                failures.push(format!("{psi:?} {s:?}: det {det} vs cofactor {expected}"));
            }
            if det.is_zero() {
                continue;
            }
            audited += 1;
            let lambda_ok =
                decide_psd(&gram(&inst.phi, &s).unwrap().shift_diagonal(&-floor.clone()));
            if det < BigInt::one() || !lambda_ok {
                failures.push(format!(
                    "{psi:?} {s:?}: det {det}, lambda bound {lambda_ok}"
                ));
            }
        }
        if !r.det_audit.iter().all(|e| e.passed()) || !r.lambda_min_audit.iter().all(|e| e.passed) {
            failures.push(format!("{psi:?} k={k}: audit report failure"));
        }
    }
    summarize(failures, format!("{audited} independent subsets"))
}

fn norm_certificates() -> Verdict {
    let mut failures = Vec::new();
    let one = audit_suite_one().cases.iter().map(|(p, k, r)| (p, k, r));
    let two = audit_suite_two().iter().map(|(p, k, r)| (p, k, r));
    let mut count = 0;
    for (psi, k, r) in one.chain(two) {
        count += 1;
        if !r.norm.exact {
            failures.push(format!("{psi:?} k={k}"));
        }
    }
    summarize(failures, format!("{count} reduction instances"))
}

fn worked_golden() -> Verdict {
    let psi = IntegerMatrix::from_i64_rows(&[[1, 0, 1], [0, 1, 1]]).unwrap();
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };

    // P = 1 and M N P^2 = 6. 4^1 = 4 < 6 <= 16 = 4^2, so t = 2 and C = 4.
    // K = 2: C^2 (K M P^2)^(K-1) = 16 * 4 = 64, so delta_sharp = 63/64.
    // 5 M N bitlen(P) = 5 * 2 * 3 * 1 = 30, so delta_coarse = 1 - 2^-30.
    let inst = build_reduction(&psi, 2).unwrap();
    check(inst.p_max == BigInt::from(1), "P = 1");
    check(
        inst.scale_exp == 2 && inst.c_scale == BigInt::from(4),
        "C = 4",
    );
    check(inst.delta_sharp == ratio(63, 64), "delta_sharp = 63/64");
    check(
        inst.delta_coarse == Some(ratio((1 << 30) - 1, 1 << 30)),
        "delta_coarse = 1 - 2^-30",
    );
    check(
        inst.phi == psi.div_scalar(&BigInt::from(4)),
        "phi = psi / 4",
    );

    // Any two columns are independent, so spark = 3 > 2 and RIP holds.
    let two = audit_theorem(&psi, 2).unwrap();
    check(two.rip_at_sharp.is_rip(), "K = 2 RIP true");
    check(
        two.equivalence_holds && two.all_passed(),
        "K = 2 audit passes",
    );

    // col0 + col1 - col2 = 0, so x = (1, 1, -1) and K = 3 breaks the lower side.
    let three = audit_theorem(&psi, 3).unwrap();
    check(!three.rip_at_sharp.is_rip(), "K = 3 RIP false");
    let v = three.rip_at_sharp.violation.clone();
    check(
        v.is_some_and(|v| v.subset == [0, 1, 2] && v.side == Side::Lower),
        "K = 3 lower violation on {0, 1, 2}",
    );
    let w = three.zero_norm_witness.clone();
    check(
        w.is_some_and(|w| {
            w.indices == [0, 1, 2] && w.null_vector == [ratio(1, 1), ratio(1, 1), ratio(-1, 1)]
        }),
        "witness x = (1, 1, -1)",
    );
    check(
        three.witness_norm_sq == Some(BigRational::zero()),
        "|phi x|^2 = 0",
    );
    summarize(
        failures,
        "P=1 C=4 delta_sharp=63/64 delta_coarse=1-2^-30".into(),
    )
}

fn random_rational(m: usize, n: usize, seed: u64) -> RationalMatrix {
    let num = gen_random(&spec(GeneratorKind::Random, m, n, 3, 0, seed)).unwrap();
    let den = gen_random(&spec(GeneratorKind::Random, m, n, 2, 0, !seed)).unwrap();
    Matrix::from_fn(m, n, |i, j| {
        BigRational::new(num.get(i, j).clone(), den.get(i, j) + BigInt::from(6))
    })
    .unwrap()
}

fn bracket_cross_check() -> Verdict {
    let tol = ratio(BRACKET_TOL.0, BRACKET_TOL.1);
    let mut failures = Vec::new();
    let (mut saturated, mut worst) = (0, 0f64);
    for i in 0..BRACKET_MATRICES {
        let phi = random_rational(4, 6, 0xb4ac_0000 + i);
        let rows = oracle::to_f64_rows(&rows_of(&phi));
        for k in [2, 3] {
            let b = rip_constant_bracket(&phi, k, &tol).unwrap();
            // the bracket lives in [0, 1]; a constant at or above 1 reads as 1
            let reference = oracle::float_delta_k(&rows, k).min(1.0);
            let (lo, hi) = (b.lower.to_f64_lossy(), b.upper.to_f64_lossy());
            saturated += usize::from(b.saturated);
            let miss = (lo - reference).max(reference - hi).max(0.0);
            worst = worst.max(miss);
            if b.width() > tol || miss > FLOAT_AGREEMENT {
                failures.push(format!("{phi:?} K={k}: [{lo}, {hi}] vs {reference}"));
            }
        }
    }
    summarize(
        failures,
        format!(
            "{} brackets, {saturated} saturated, worst miss {worst:.2e}",
            2 * BRACKET_MATRICES
        ),
    )
}

fn random_symmetric(i: u64) -> SymmetricMatrix<BigRational> {
    let n = 1 + (i % 5) as usize;
    if i.is_multiple_of(3) {
        let r = 1 + (i / 3 % 4) as usize;
        let a = random_rational(r, n, 0x95d0_0000 + i);
        gram(&a, &(0..n).collect::<Vec<_>>()).unwrap()
    } else {
        let a = random_rational(n, n, 0x95d0_0000 + i);
        SymmetricMatrix::from_fn(n, |p, q| a.get(p, q).clone()).unwrap()
    }
}

fn psd_oracle() -> Verdict {
    let mut failures = Vec::new();
    let (mut psd, mut singular_psd) = (0, 0);
    for i in 0..PSD_MATRICES {
        let s = random_symmetric(i);
        let rows = dense(&s);
        let expected = oracle::psd_by_principal_minors(&rows);
        if decide_psd(&s) != expected {
            failures.push(format!("{s:?}: expected {expected}"));
        }
        if expected {
            psd += 1;
            singular_psd += usize::from(oracle::cofactor_det(&rows).is_zero());
        }
    }
    summarize(
        failures,
        format!("{PSD_MATRICES} matrices, {psd} PSD, {singular_psd} singular PSD"),
    )
}

fn ceil_log2(v: &BigInt) -> u64 {
    (v - 1u8).bits()
}

fn big_number_stress() -> Verdict {
    let (m, n, k) = (3usize, 6usize, 3usize);
    let base = gen_random(&spec(GeneratorKind::Random, m, n, STRESS_P, 0, 0x57e5)).unwrap();
    let psi = Matrix::from_fn(m, n, |i, j| {
        if (i, j) == (0, 0) {
            BigInt::from(STRESS_P)
        } else {
            base.get(i, j).clone()
        }
    })
    .unwrap();

    let started = Instant::now();
    let report = audit_theorem(&psi, k).unwrap();
    let secs = started.elapsed().as_secs_f64();

    let inst = &report.instance;
    let p = BigInt::from(STRESS_P);
    let kmp2 = BigInt::from(k * m) * &p * &p;
    let expected_den = &inst.c_scale * &inst.c_scale * num_traits::pow(kmp2.clone(), k - 1);
    let den_bits = inst.delta_sharp.denom().bits();
    let predicted = 2 * inst.scale_exp + (k as u64 - 1) * ceil_log2(&kmp2);

    let mut failures = Vec::new();
    if inst.p_max != p {
        failures.push(format!("P = {}", inst.p_max));
    }
    if *inst.delta_sharp.denom() != expected_den {
        failures.push("denominator differs from C^2 (KMP^2)^(K-1)".into());
    }
    if den_bits.abs_diff(predicted) > STRESS_BIT_SLACK {
        failures.push(format!("{den_bits} bits vs predicted {predicted}"));
    }
    if secs >= STRESS_SECONDS as f64 {
        failures.push(format!("took {secs:.2} s"));
    }
    if !report.equivalence_holds || !report.all_passed() {
        failures.push("audit failed".into());
    }
    summarize(
        failures,
        format!("denominator {den_bits} bits (predicted {predicted}), {secs:.2} s"),
    )
}

/// Runs every subcommand over a fixed set of inputs and returns the JSON
/// reports with timing cleared, concatenated.
fn cli_transcript(dir: &std::path::Path, threads: &str) -> String {
    let mut out = String::new();
    let mut invoke = |args: Vec<String>| {
        let mut argv = vec!["ripcert".to_string(), "--threads".into(), threads.into()];
        argv.extend(args);
        argv.extend(["--format".into(), "json".into()]);
        let o = run(&argv);
        let body = match ReportDocument::from_json(&o.stdout) {
            Ok(doc) => {
                // the echo records the thread count, which is the point of the comparison
                let mut doc = doc.without_timing();
                doc.command.drain(..2);
                doc.to_json()
            }
            Err(_) => o.stdout,
        };
        writeln!(
            out,
            "{} {}\n{body}{}",
            o.exit_code,
            argv[3..].join(" "),
            o.stderr
        )
        .unwrap();
    };

    let mut files = Vec::new();
    for (i, psi) in suite_one().iter().take(40).enumerate() {
        files.push((
            dir.join(format!("s1-{i}.txt")),
            serialize_matrix(psi),
            psi.rows(),
        ));
    }
    for (i, (psi, _)) in suite_two().iter().take(20).enumerate() {
        files.push((
            dir.join(format!("s2-{i}.txt")),
            serialize_matrix(psi),
            psi.rows(),
        ));
    }
    for (path, text, rows) in &files {
        std::fs::write(path, text).unwrap();
        let p = path.to_string_lossy().to_string();
        invoke(vec!["spark".into(), p.clone()]);
        for k in 1..=*rows {
            for cmd in ["reduce", "audit"] {
                invoke(vec![cmd.into(), p.clone(), "--k".into(), k.to_string()]);
            }
        }
    }
    for i in 0..10 {
        let phi = random_rational(4, 6, 0xb4ac_0000 + i);
        let path = dir.join(format!("phi-{i}.txt"));
        std::fs::write(&path, serialize_matrix(&phi)).unwrap();
        let p = path.to_string_lossy().to_string();
        for k in ["2", "3"] {
            invoke(vec![
                "rip-constant".into(),
                p.clone(),
                "--k".into(),
                k.into(),
            ]);
            let rip = ["rip-check", &p, "--k", k, "--delta", "1/2"];
            invoke(rip.iter().map(|s| s.to_string()).collect());
        }
    }
    out
}

fn library_transcript() -> String {
    let mut out = String::new();
    for (psi, k) in suite_two() {
        writeln!(out, "{:?}", audit_theorem(&psi, k).unwrap()).unwrap();
    }
    for psi in suite_one().iter().take(100) {
        for k in 1..=psi.rows() {
            writeln!(out, "{:?}", audit_theorem(psi, k).unwrap()).unwrap();
        }
    }
    out
}

fn determinism() -> Verdict {
    let dir = tempdir();
    let pool = |t| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .unwrap()
    };
    let first = cli_transcript(&dir, "8");
    let second = cli_transcript(&dir, "8");
    let single = cli_transcript(&dir, "1");
    let lib_one = pool(1).install(library_transcript);
    let lib_eight = pool(8).install(library_transcript);
    let _ = std::fs::remove_dir_all(&dir);

    let mut failures = Vec::new();
    if first != second {
        failures.push("two runs differ".into());
    }
    if first != single {
        failures.push("--threads 1 and --threads 8 differ".into());
    }
    if lib_one != lib_eight {
        failures.push("library results differ between 1 and 8 workers".into());
    }
    summarize(
        failures,
        format!(
            "{} CLI report bytes, {} library report bytes",
            first.len(),
            lib_one.len()
        ),
    )
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ripcert-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn summarize(failures: Vec<String>, detail: String) -> Verdict {
    if failures.is_empty() {
        Ok(detail)
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        Err(format!("{} failures: {}", failures.len(), shown.join("; ")))
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("spark/RIP equivalence on random suite", theorem_equivalence),
        ("planted dependencies", planted_suite),
        ("bound-chain audit", bound_chain),
        ("operator norm certificate", norm_certificates),
        ("worked golden", worked_golden),
        ("exact bracket vs float brute force", bracket_cross_check),
        ("PSD decision vs principal minors", psd_oracle),
        ("big-number stress", big_number_stress),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let verdict = check();
        let secs = started.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.1} s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({detail}) [{secs:.1} s]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
