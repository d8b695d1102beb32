//! Degree statistics: mean, median, expected minimum of two distinct
//! degrees and the `f_min` move-count scale.

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Summary of one degree sequence (one side, one role).
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeStats<F> {
    pub count: usize,
    pub mean: F,
    pub median: F,
    /// `E[min{d1, d2}]` over unordered pairs of distinct items. `None` when
    /// fewer than two items exist.
    pub expected_min_pair: Option<F>,
    /// `count * mean / (2 * expected_min_pair)`. `None` when the expected
    /// minimum is missing or zero.
    pub f_min: Option<F>,
}

/// Statistics for one side (nodes or hyperedges): a single role when
/// undirected, tail and head when directed.
#[derive(Clone, Debug, PartialEq)]
pub struct SideStats<F> {
    pub roles: Vec<DegreeStats<F>>,
    /// `f_min` averaged over roles; `None` if any role lacks one.
    pub f_min: Option<F>,
}

/// `(sum over unordered distinct pairs of min(d_i, d_j), number of pairs)`,
/// exact.
pub fn min_pair_sum(degrees: &[u32]) -> (u128, u128) {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let n = sorted.len() as u128;
    // The i-th smallest is the minimum of its pairs with every later item.
    let sum = sorted
        .iter()
        .enumerate()
        .map(|(i, &d)| d as u128 * (n - 1 - i as u128))
        .sum();
    (sum, n * n.saturating_sub(1) / 2)
}

/// `E[min{d1, d2}]` for two distinct items drawn uniformly without
/// replacement.
pub fn expected_min_pair<F: Real>(degrees: &[u32]) -> Result<F> {
    if degrees.len() < 2 {
        return Err(Error::TooFew { what: "degrees", needed: 2, found: degrees.len() });
    }
    let (s, p) = min_pair_sum(degrees);
    Ok(real::<F>(s as f64) / real::<F>(p as f64))
}

/// Median; the mean of the two middle elements for even lengths.
pub fn median<F: Real>(degrees: &[u32]) -> Result<F> {
    if degrees.is_empty() {
        return Err(Error::TooFew { what: "degrees", needed: 1, found: 0 });
    }
    let mut s = degrees.to_vec();
    s.sort_unstable();
    let n = s.len();
    if n % 2 == 1 {
        Ok(real(s[n / 2] as f64))
    } else {
        Ok(real((s[n / 2 - 1] as f64 + s[n / 2] as f64) / 2.0))
    }
}

pub fn degree_stats<F: Real>(degrees: &[u32]) -> Result<DegreeStats<F>> {
    if degrees.is_empty() {
        return Err(Error::TooFew { what: "degrees", needed: 1, found: 0 });
    }
    let n = degrees.len();
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    let mean = real::<F>(total as f64) / real::<F>(n as f64);
    let median = median(degrees)?;
    let expected_min_pair = expected_min_pair::<F>(degrees).ok();
    let f_min = expected_min_pair
        .filter(|e| *e > F::zero())
        .map(|e| real::<F>(n as f64) * mean / (real::<F>(2.0) * e));
    Ok(DegreeStats { count: n, mean, median, expected_min_pair, f_min })
}

/// Per-role statistics with the role-averaged `f_min`.
pub fn side_stats<F: Real>(per_role: &[Vec<u32>]) -> Result<SideStats<F>> {
    let roles = per_role.iter().map(|d| degree_stats::<F>(d)).collect::<Result<Vec<_>>>()?;
    let f_min = roles
        .iter()
        .map(|r| r.f_min)
        .collect::<Option<Vec<F>>>()
        .map(|v| v.iter().fold(F::zero(), |a, &b| a + b) / real::<F>(v.len() as f64));
    Ok(SideStats { roles, f_min })
}
