//! Plain-text matrix files and exact number syntax.
//!
//! A matrix file is a header line `M N` followed by `M` lines of `N`
//! whitespace-separated entries. An entry is an optional sign, decimal
//! digits, and an optional `/digits` denominator:
//!
//! ```text
//! 2 3
//! 1 0 1
//! 0 1 -3/4
//! ```
//!
//! Files without any `/` parse as integer matrices. Serialization writes
//! single spaces between entries, a newline after every row, and reduced
//! fractions `p/q` (or plain `p` when `q = 1`). Blank lines are ignored.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use ripcert_core::{BigInt, BigRational, IntegerMatrix, Matrix, RationalMatrix, Scalar};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedMatrix {
    Integer(IntegerMatrix),
    Rational(RationalMatrix),
}

impl ParsedMatrix {
    pub fn rows(&self) -> usize {
        match self {
            ParsedMatrix::Integer(a) => a.rows(),
            ParsedMatrix::Rational(a) => a.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            ParsedMatrix::Integer(a) => a.cols(),
            ParsedMatrix::Rational(a) => a.cols(),
        }
    }

    pub fn to_rational(&self) -> RationalMatrix {
        match self {
            ParsedMatrix::Integer(a) => a.to_rational(),
            ParsedMatrix::Rational(a) => a.clone(),
        }
    }

    pub fn as_integer(&self) -> Option<&IntegerMatrix> {
        match self {
            ParsedMatrix::Integer(a) => Some(a),
            ParsedMatrix::Rational(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    BadHeader,
    MalformedEntry(String),
    ZeroDenominator,
    RowLength { expected: usize, got: usize },
    MissingRows { expected: usize, got: usize },
    ExtraRow,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing `M N` header"),
            ParseErrorKind::BadHeader => {
                write!(f, "header must be two positive integers `M N`")
            }
            ParseErrorKind::MalformedEntry(tok) => write!(f, "malformed entry `{tok}`"),
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator"),
            ParseErrorKind::RowLength { expected, got } => {
                write!(f, "row has {got} entries, expected {expected}")
            }
            ParseErrorKind::MissingRows { expected, got } => {
                write!(f, "found {got} rows, expected {expected}")
            }
            ParseErrorKind::ExtraRow => write!(f, "more rows than the header declares"),
        }
    }
}

/// Whitespace-separated tokens with 1-based column positions.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let col = offset + start + 1;
        let tok = &tail[..len];
        offset += start + len;
        rest = &tail[len..];
        Some((col, tok))
    })
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses one matrix entry: `[+-]?digits(/digits)?`.
pub fn parse_entry(tok: &str) -> Result<BigRational, ParseErrorKind> {
    let malformed = || ParseErrorKind::MalformedEntry(tok.to_string());
    let unsigned = tok.strip_prefix(['+', '-']).unwrap_or(tok);
    let (num, den) = match unsigned.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (unsigned, None),
    };
    if !is_digits(num) || den.is_some_and(|d| !is_digits(d)) {
        return Err(malformed());
    }
    let mut numer = BigInt::from_str(num).map_err(|_| malformed())?;
    if tok.starts_with('-') {
        numer = -numer;
    }
    let denom = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| malformed())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(ParseErrorKind::ZeroDenominator);
    }
    Ok(BigRational::new(numer, denom))
}

pub fn parse_matrix(text: &str) -> Result<ParsedMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let at = |line, column, kind| ParseError { line, column, kind };

    let (hline, header) = lines
        .next()
        .ok_or(at(1, 1, ParseErrorKind::MissingHeader))?;
    let dims: Vec<(usize, &str)> = tokens(header).collect();
    let parse_dim = |(col, tok): (usize, &str)| -> Result<usize, ParseError> {
        match tok.parse::<usize>() {
            Ok(v) if v > 0 && is_digits(tok) => Ok(v),
            _ => Err(at(hline, col, ParseErrorKind::BadHeader)),
        }
    };
    if dims.len() != 2 {
        return Err(at(hline, 1, ParseErrorKind::BadHeader));
    }
    let (m, n) = (parse_dim(dims[0])?, parse_dim(dims[1])?);

    let mut entries = Vec::with_capacity(m * n);
    let mut rational = false;
    let mut rows = 0;
    let mut last_line = hline;
    for (lno, line) in lines {
        last_line = lno;
        if rows == m {
            return Err(at(lno, 1, ParseErrorKind::ExtraRow));
        }
        let toks: Vec<(usize, &str)> = tokens(line).collect();
        if toks.len() != n {
            let column = toks.get(n).map_or(line.len() + 1, |t| t.0);
            return Err(at(
                lno,
                column,
                ParseErrorKind::RowLength {
                    expected: n,
                    got: toks.len(),
                },
            ));
        }
        for (col, tok) in toks {
            rational |= tok.contains('/');
            entries.push(parse_entry(tok).map_err(|kind| at(lno, col, kind))?);
        }
        rows += 1;
    }
    if rows < m {
        return Err(at(
            last_line + 1,
            1,
            ParseErrorKind::MissingRows {
                expected: m,
                got: rows,
            },
        ));
    }

    let matrix = Matrix::new(m, n, entries).expect("shape checked");
    if rational {
        Ok(ParsedMatrix::Rational(matrix))
    } else {
        Ok(ParsedMatrix::Integer(matrix.map(|v| v.to_integer())))
    }
}

/// `p/q` in lowest terms, or `p` for integers. Never a decimal.
pub fn format_rational(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn serialize_matrix<T: Scalar>(a: &Matrix<T>) -> String {
    let mut out = format!("{} {}\n", a.rows(), a.cols());
    for i in 0..a.rows() {
        let row: Vec<String> = a
            .row(i)
            .iter()
            .map(|v| format_rational(&v.to_rational()))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn serialize_parsed(a: &ParsedMatrix) -> String {
    match a {
        ParsedMatrix::Integer(m) => serialize_matrix(m),
        ParsedMatrix::Rational(m) => serialize_matrix(m),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot read `{0}` as an exact number (use p/q, a decimal, or 1-2^-T)")]
pub struct ValueError(pub String);

/// Parses a flag value exactly: `p/q`, an integer, a decimal such as
/// `0.25` or `1e-9`, or `1-2^-T` for a nonnegative integer `T`.
pub fn parse_exact(s: &str) -> Result<BigRational, ValueError> {
    let err = || ValueError(s.to_string());
    let s = s.trim();
    if let Some(t) = s.strip_prefix("1-2^-") {
        if !is_digits(t) {
            return Err(err());
        }
        let exp: u64 = t.parse().map_err(|_| err())?;
        let den = BigInt::one() << exp;
        return Ok(BigRational::new(&den - 1u8, den));
    }
    if let Ok(v) = parse_entry(s) {
        return Ok(v);
    }
    parse_decimal(s).ok_or_else(err)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let negative = mantissa.starts_with('-');
    let unsigned = mantissa.strip_prefix(['+', '-']).unwrap_or(mantissa);
    let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !(int_part.is_empty() || is_digits(int_part))
        || !(frac_part.is_empty() || is_digits(frac_part))
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&digits).ok()?);
    let scale = exp - i32::try_from(frac_part.len()).ok()?;
    let ten = BigRational::from_integer(BigInt::from(10));
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= pow;
    } else {
        value /= pow;
    }
    Some(if negative { -value } else { value.abs() })
}
