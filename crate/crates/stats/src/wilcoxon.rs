use serde::{Deserialize, Serialize};

use crate::ranks::{average_ranks, tie_correction_term};
use crate::special::normal_two_sided;
use crate::StatsError;

/// Largest number of nonzero differences handled by exact enumeration.
pub const EXACT_MAX_N: usize = 20;
pub const MIN_NONZERO: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WilcoxonMode {
    /// Exact up to [`EXACT_MAX_N`], normal approximation beyond.
    #[default]
    Auto,
    Exact,
    Normal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WilcoxonResult {
    /// Nonzero differences used.
    pub n: usize,
    pub zeros_dropped: usize,
    pub w_plus: f64,
    pub w_minus: f64,
    /// Normal score with continuity correction, signed by `w_plus - mean`.
    pub z: f64,
    pub p_value: f64,
    pub exact: bool,
}

struct SignedRanks {
    ranks: Vec<f64>,
    positive: Vec<bool>,
    zeros: usize,
}

fn signed_ranks(a: &[f64], b: &[f64]) -> Result<SignedRanks, StatsError> {
    if a.len() != b.len() {
        return Err(StatsError::LengthMismatch(a.len(), b.len()));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    if diffs.iter().any(|d| d.is_nan()) {
        return Err(StatsError::NonFiniteSample);
    }
    let nonzero: Vec<f64> = diffs.iter().copied().filter(|&d| d != 0.0).collect();
    let zeros = diffs.len() - nonzero.len();
    if nonzero.len() < MIN_NONZERO {
        return Err(StatsError::Underpowered { nonzero: nonzero.len(), zeros });
    }
    let abs: Vec<f64> = nonzero.iter().map(|d| d.abs()).collect();
    Ok(SignedRanks {
        ranks: average_ranks(&abs),
        positive: nonzero.iter().map(|&d| d > 0.0).collect(),
        zeros,
    })
}

fn normal_z(w_plus: f64, ranks: &[f64]) -> f64 {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_correction_term(ranks) / 48.0;
    let dev = w_plus - mean;
    if var <= 0.0 || dev == 0.0 {
        return 0.0;
    }
    dev.signum() * (dev.abs() - 0.5).max(0.0) / var.sqrt()
}

/// Counts of sign assignments per doubled positive rank sum.
fn doubled_sum_counts(doubled: &[usize]) -> Vec<u64> {
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0u64; total + 1];
    counts[0] = 1;
    let mut reach = 0;
    for &r in doubled {
        for s in (0..=reach).rev() {
            if counts[s] > 0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    counts
}

fn two_sided_from_tails(le: u64, ge: u64, n: usize) -> f64 {
    let total = (1u64 << n) as f64;
    (2.0 * le.min(ge) as f64 / total).min(1.0)
}

fn exact_p(ranks: &[f64], w_plus: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let observed = (2.0 * w_plus).round() as usize;
    let counts = doubled_sum_counts(&doubled);
    let le: u64 = counts[..=observed].iter().sum();
    let ge: u64 = counts[observed..].iter().sum();
    two_sided_from_tails(le, ge, ranks.len())
}

/// Wilcoxon signed-rank test on `a - b` in [`WilcoxonMode::Auto`].
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<WilcoxonResult, StatsError> {
    wilcoxon_signed_rank_with(a, b, WilcoxonMode::Auto)
}

pub fn wilcoxon_signed_rank_with(a: &[f64], b: &[f64], mode: WilcoxonMode) -> Result<WilcoxonResult, StatsError> {
    let sr = signed_ranks(a, b)?;
    let n = sr.ranks.len();
    let w_plus: f64 = sr.ranks.iter().zip(&sr.positive).filter(|(_, &p)| p).map(|(r, _)| r).sum();
    let w_minus = n as f64 * (n as f64 + 1.0) / 2.0 - w_plus;
    let z = normal_z(w_plus, &sr.ranks);
    let exact = match mode {
        WilcoxonMode::Auto => n <= EXACT_MAX_N,
        WilcoxonMode::Exact if n > EXACT_MAX_N => {
            return Err(StatsError::ExactTooLarge { n, max: EXACT_MAX_N })
        }
        WilcoxonMode::Exact => true,
        WilcoxonMode::Normal => false,
    };
    let p_value = if exact { exact_p(&sr.ranks, w_plus) } else { normal_two_sided(z) };
    Ok(WilcoxonResult { n, zeros_dropped: sr.zeros, w_plus, w_minus, z, p_value, exact })
}

/// Exact two-sided p by walking all `2^n` sign assignments. Reference
/// implementation for small `n`.
pub fn wilcoxon_exact_enumeration(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    let sr = signed_ranks(a, b)?;
    let n = sr.ranks.len();
    if n > EXACT_MAX_N {
        return Err(StatsError::ExactTooLarge { n, max: EXACT_MAX_N });
    }
    let doubled: Vec<u64> = sr.ranks.iter().map(|r| (2.0 * r).round() as u64).collect();
    let observed: u64 = doubled.iter().zip(&sr.positive).filter(|(_, &p)| p).map(|(r, _)| r).sum();
    let (mut le, mut ge) = (0u64, 0u64);
    for mask in 0u64..(1 << n) {
        let s: u64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| doubled[i]).sum();
        le += u64::from(s <= observed);
        ge += u64::from(s >= observed);
    }
    Ok(two_sided_from_tails(le, ge, n))
}
