//! Seeded instance generators.
//!
//! Both generators draw from a SplitMix64 stream whose state is the seed
//! itself, so a `(spec, seed)` pair names one matrix on every platform.
//! Entries are filled row-major and drawn uniformly from `[-p, p]` by
//! rejection: a draw `x` is discarded while `x < 2^64 mod (2p+1)`, and the
//! survivor is reduced modulo `2p+1`.
//!
//! The planted generator then makes `k` columns dependent:
//!
//! 1. draw the planted column `j` uniformly from `[0, n)`;
//! 2. draw `k-1` distinct other columns by a partial Fisher-Yates shuffle
//!    of the ascending list `[0, n) \ {j}`;
//! 3. draw one sign per chosen column from the low bit of the next word
//!    (`1` means negative);
//! 4. overwrite column `j` with the signed sum of the chosen columns.
//!
//! The result has a dependent set of size at most `k`, so its spark is at
//! most `k`.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use ripcert_core::{BigInt, IntegerMatrix, Matrix};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Random,
    Planted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub m: usize,
    pub n: usize,
    pub p_max: u64,
    /// Size of the planted dependency; ignored by the random generator.
    pub k: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("matrix dimensions must be positive (got {m}x{n})")]
    EmptyShape { m: usize, n: usize },
    #[error("entry bound {0} exceeds {max}", max = i64::MAX)]
    BoundTooLarge(u64),
    #[error("planted dependency size must satisfy 2 <= k <= n (k = {k}, n = {n})")]
    PlantedSize { k: usize, n: usize },
}

struct Stream(SplitMix64);

impl Stream {
    fn new(seed: u64) -> Self {
        Stream(SplitMix64::from_seed(seed.to_le_bytes()))
    }

    fn next(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, bound)` for `bound >= 1`.
    fn below(&mut self, bound: u64) -> u64 {
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next();
            if x >= threshold {
                return x % bound;
            }
        }
    }

    fn entry(&mut self, p: u64) -> BigInt {
        let v = self.below(2 * p + 1);
        BigInt::from(i128::from(v) - i128::from(p))
    }
}

fn check_shape(spec: &GeneratorSpec) -> Result<(), GenError> {
    if spec.m == 0 || spec.n == 0 {
        return Err(GenError::EmptyShape {
            m: spec.m,
            n: spec.n,
        });
    }
    if spec.p_max > i64::MAX as u64 {
        return Err(GenError::BoundTooLarge(spec.p_max));
    }
    Ok(())
}

fn fill(stream: &mut Stream, spec: &GeneratorSpec) -> IntegerMatrix {
    Matrix::from_fn(spec.m, spec.n, |_, _| stream.entry(spec.p_max)).expect("shape checked")
}

pub fn gen_random(spec: &GeneratorSpec) -> Result<IntegerMatrix, GenError> {
    check_shape(spec)?;
    Ok(fill(&mut Stream::new(spec.seed), spec))
}

pub fn gen_planted(spec: &GeneratorSpec) -> Result<IntegerMatrix, GenError> {
    check_shape(spec)?;
    let (n, k) = (spec.n, spec.k);
    if k < 2 || k > n {
        return Err(GenError::PlantedSize { k, n });
    }
    let mut stream = Stream::new(spec.seed);
    let base = fill(&mut stream, spec);

    let planted = stream.below(n as u64) as usize;
    let mut others: Vec<usize> = (0..n).filter(|&j| j != planted).collect();
    for i in 0..k - 1 {
        let j = i + stream.below((others.len() - i) as u64) as usize;
        others.swap(i, j);
    }
    let chosen: Vec<(usize, bool)> = others[..k - 1]
        .iter()
        .map(|&c| (c, stream.next() & 1 == 1))
        .collect();

    Ok(Matrix::from_fn(spec.m, n, |i, j| {
        if j != planted {
            return base.get(i, j).clone();
        }
        chosen.iter().fold(BigInt::from(0), |acc, &(c, negative)| {
            let v = base.get(i, c);
            if negative {
                acc - v
            } else {
                acc + v
            }
        })
    })
    .expect("shape checked"))
}

pub fn generate(spec: &GeneratorSpec) -> Result<IntegerMatrix, GenError> {
    match spec.kind {
        GeneratorKind::Random => gen_random(spec),
        GeneratorKind::Planted => gen_planted(spec),
    }
}
