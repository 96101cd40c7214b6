//! Command-line parsing and dispatch.
//!
//! Exit codes: `0` for a YES verdict or plain success, `1` for a NO verdict
//! (independent columns, RIP fails, an audit check fails), `2` for errors.

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use thiserror::Error;

use ripcert_core::{
    audit_theorem_with, build_reduction, is_rip_with, rip_constant_bracket_with, spark_with,
    BigRational, ScanOptions,
};

use crate::format::{
    format_rational, parse_exact, parse_matrix, serialize_matrix, ParseError, ParsedMatrix,
    ValueError,
};
use crate::gen::{generate, GenError, GeneratorKind, GeneratorSpec};
use crate::report::{self, ReportDocument};

#[derive(Debug, Parser)]
#[command(
    name = "ripcert",
    version,
    about = "Exact spark and restricted isometry certificates"
)]
pub struct Cli {
    /// Largest number of k-subsets a single scan may visit
    #[arg(long, global = true, default_value_t = ripcert_core::subsets::DEFAULT_BUDGET)]
    pub budget: u64,

    /// Worker threads for subset scans (defaults to all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smallest number of linearly dependent columns
    Spark { input: PathBuf },
    /// Decide the (k, delta) restricted isometry property exactly
    RipCheck {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Exact value: p/q, a decimal, or 1-2^-T
        #[arg(long)]
        delta: String,
    },
    /// Bracket the restricted isometry constant to within a tolerance
    RipConstant {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "1e-9")]
        tol: String,
    },
    /// Build the scaled RIP instance for an integer matrix
    Reduce {
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Build the instance and check every link between spark and RIP
    Audit {
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Write a seeded integer matrix
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pmax: u64,
        /// Planted dependency size
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Random,
    Planted,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error(transparent)]
    Core(#[from] ripcert_core::Error),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("{0}: this command needs an integer matrix")]
    NeedsInteger(String),
    #[error("cannot start thread pool: {0}")]
    Threads(String),
}

/// Result of one invocation, kept separate from the process so tests can
/// run the CLI in-process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<ReportDocument>,
}

impl Outcome {
    fn error(msg: String) -> Self {
        Outcome {
            exit_code: 2,
            stdout: String::new(),
            stderr: msg,
            report: None,
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return Outcome {
                exit_code: code,
                stdout: if code == 0 {
                    text.clone()
                } else {
                    String::new()
                },
                stderr: if code == 0 { String::new() } else { text },
                report: None,
            };
        }
    };
    let command: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();

    let result = match cli.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Threads(e.to_string()))
            .and_then(|pool| pool.install(|| execute(&cli, command))),
        None => execute(&cli, command),
    };
    match result {
        Ok(o) => o,
        Err(e) => Outcome::error(format!("error: {e}\n")),
    }
}

struct Input {
    label: String,
    sha256: String,
    matrix: ParsedMatrix,
}

fn read_input(path: &PathBuf) -> Result<Input, CliError> {
    let label = path.display().to_string();
    let io_err = |source| CliError::Io {
        path: label.clone(),
        source,
    };
    let bytes = if label == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(io_err)?;
        buf
    } else {
        std::fs::read(path).map_err(io_err)?
    };
    let text = String::from_utf8_lossy(&bytes);
    let matrix = parse_matrix(&text).map_err(|source| CliError::Parse {
        path: label.clone(),
        source,
    })?;
    Ok(Input {
        sha256: hex::encode(Sha256::digest(&bytes)),
        label,
        matrix,
    })
}

fn execute(cli: &Cli, command: Vec<String>) -> Result<Outcome, CliError> {
    let opts = ScanOptions { budget: cli.budget };
    let started = Instant::now();

    let (input, verdict, witnesses, deltas, exit_code) = match &cli.command {
        Command::Gen {
            kind,
            m,
            n,
            pmax,
            k,
            seed,
        } => {
            let spec = GeneratorSpec {
                kind: match kind {
                    KindArg::Random => GeneratorKind::Random,
                    KindArg::Planted => GeneratorKind::Planted,
                },
                m: *m,
                n: *n,
                p_max: *pmax,
                k: *k,
                seed: *seed,
            };
            let a = generate(&spec)?;
            return Ok(Outcome {
                exit_code: 0,
                stdout: serialize_matrix(&a),
                stderr: String::new(),
                report: None,
            });
        }
        Command::Spark { input } => {
            let input = read_input(input)?;
            let s = match &input.matrix {
                ParsedMatrix::Integer(a) => spark_with(a, &opts)?,
                ParsedMatrix::Rational(a) => spark_with(a, &opts)?,
            };
            let (verdict, witnesses) = report::spark_parts(input.matrix.cols(), &s);
            let code = if s.is_full_column_rank() { 1 } else { 0 };
            (input, verdict, witnesses, Default::default(), code)
        }
        Command::RipCheck { input, k, delta } => {
            let delta = parse_exact(delta)?;
            let input = read_input(input)?;
            let d = is_rip_with(&input.matrix.to_rational(), *k, &delta, &opts)?;
            let (verdict, witnesses) = report::rip_parts(*k, &d);
            let deltas = [("delta".to_string(), format_rational(&delta))].into();
            let code = if d.is_rip() { 0 } else { 1 };
            (input, verdict, witnesses, deltas, code)
        }
        Command::RipConstant { input, k, tol } => {
            let tol: BigRational = parse_exact(tol)?;
            let input = read_input(input)?;
            let b = rip_constant_bracket_with(&input.matrix.to_rational(), *k, &tol, &opts)?;
            let verdict = report::Verdict::RipConstant {
                k: *k,
                saturated: b.saturated,
            };
            (
                input,
                verdict,
                Vec::new(),
                report::bracket_deltas(&b, &tol),
                0,
            )
        }
        Command::Reduce { input, k } => {
            let input = read_input(input)?;
            let psi = input
                .matrix
                .as_integer()
                .ok_or_else(|| CliError::NeedsInteger(input.label.clone()))?;
            let inst = build_reduction(psi, *k)?;
            let (verdict, deltas) = report::reduction_parts(&inst);
            (input, verdict, Vec::new(), deltas, 0)
        }
        Command::Audit { input, k } => {
            let input = read_input(input)?;
            let psi = input
                .matrix
                .as_integer()
                .ok_or_else(|| CliError::NeedsInteger(input.label.clone()))?;
            let r = audit_theorem_with(psi, *k, &opts)?;
            let (verdict, witnesses, deltas) = report::audit_parts(&r);
            let code = if r.all_passed() { 0 } else { 1 };
            (input, verdict, witnesses, deltas, code)
        }
    };

    let doc = ReportDocument {
        command,
        input_sha256: input.sha256,
        verdict,
        witnesses,
        deltas,
        timing_ms: u64::try_from(started.elapsed().as_millis()).unwrap_or(u64::MAX),
    };
    let mut stdout = match cli.format {
        OutputFormat::Text => doc.to_text(),
        OutputFormat::Json => doc.to_json(),
    };
    if !stdout.ends_with('\n') {
        stdout.push('\n');
    }
    Ok(Outcome {
        exit_code,
        stdout,
        stderr: String::new(),
        report: Some(doc),
    })
}
