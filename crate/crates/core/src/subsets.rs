//! Lexicographic enumeration of `k`-subsets and budgeted scans over them.
//!
//! Scans are split by leading index. With the `parallel` feature the blocks
//! run on the current rayon pool; the first hit in lexicographic order wins
//! regardless of scheduling, so sequential and parallel runs agree exactly.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default cap on the number of subsets a single scan may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    /// Largest `binomial(n, k)` a scan accepts before failing with
    /// [`Error::BudgetExceeded`].
    pub budget: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl ScanOptions {
    pub fn check(&self, n: usize, k: usize) -> Result<()> {
        let needed = binomial(n, k);
        if needed > u128::from(self.budget) {
            return Err(Error::BudgetExceeded {
                needed,
                budget: self.budget,
            });
        }
        Ok(())
    }
}

/// `n choose k`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1; split the division so the
        // product only overflows when the result does
        let (num, den) = ((n - i) as u128, (i + 1) as u128);
        let g = gcd(acc, den);
        match (acc / g).checked_mul(num / (den / g)) {
            Some(v) => acc = v,
            None => return u128::MAX,
        }
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
/// Returns `false` once `idx` was the last subset.
pub fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Iterator over the `k`-subsets of `0..n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }

    /// Subsets whose smallest element is `lead`.
    fn with_lead(n: usize, k: usize, lead: usize) -> impl Iterator<Item = Vec<usize>> {
        Combinations {
            n,
            current: (k >= 1 && lead + k <= n).then(|| (lead..lead + k).collect()),
        }
        .take_while(move |s| s[0] == lead)
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if !next.is_empty() && next_subset(&mut next, self.n) {
            self.current = Some(next);
        }
        Some(out)
    }
}

/// First `f(subset)` that is `Some`, in lexicographic subset order.
pub(crate) fn find_first<R, F>(n: usize, k: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(&[usize]) -> Option<R> + Sync + Send,
{
    if k == 0 || k > n {
        return None;
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..=n - k)
            .into_par_iter()
            .find_map_first(|lead| Combinations::with_lead(n, k, lead).find_map(|s| f(&s)))
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..=n - k).find_map(|lead| Combinations::with_lead(n, k, lead).find_map(|s| f(&s)))
    }
}

/// `f` applied to every `k`-subset, collected in lexicographic order.
pub(crate) fn map_all<R, F>(n: usize, k: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&[usize]) -> R + Sync + Send,
{
    if k == 0 || k > n {
        return Vec::new();
    }
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let blocks: Vec<Vec<R>> = (0..=n - k)
            .into_par_iter()
            .map(|lead| Combinations::with_lead(n, k, lead).map(|s| f(&s)).collect())
            .collect();
        blocks.into_iter().flatten().collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        Combinations::new(n, k).map(|s| f(&s)).collect()
    }
}
