use serde::Serialize;

use crate::ranks::{average_ranks, tie_correction_term};
use crate::special::chi_square_upper_tail;
use crate::BlockMatrix;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FriedmanReport {
    pub algorithm_names: Vec<String>,
    pub n_blocks: usize,
    /// Tie-corrected statistic.
    pub chi2: f64,
    /// Statistic without the tie correction; equal to `chi2` when no block has ties.
    pub chi2_uncorrected: f64,
    pub df: usize,
    pub p_value: f64,
    pub kendalls_w: f64,
    pub avg_ranks: Vec<f64>,
    pub quartile_tags: Vec<u8>,
}

pub fn friedman_test(data: &BlockMatrix) -> FriedmanReport {
    let n = data.n_blocks();
    let k = data.n_algorithms();
    let (nf, kf) = (n as f64, k as f64);

    let mut rank_sums = vec![0.0; k];
    let mut ties = 0.0;
    for row in data.rows() {
        for (sum, r) in rank_sums.iter_mut().zip(average_ranks(row)) {
            *sum += r;
        }
        ties += tie_correction_term(row);
    }

    let sum_sq: f64 = rank_sums.iter().map(|r| r * r).sum();
    let uncorrected = (12.0 / (nf * kf * (kf + 1.0)) * sum_sq - 3.0 * nf * (kf + 1.0)).max(0.0);
    let correction = 1.0 - ties / (nf * (kf * kf * kf - kf));
    let chi2 = if correction <= f64::EPSILON { 0.0 } else { uncorrected / correction };
    let df = k - 1;
    let avg_ranks: Vec<f64> = rank_sums.iter().map(|r| r / nf).collect();

    FriedmanReport {
        algorithm_names: data.algorithm_names().to_vec(),
        n_blocks: n,
        chi2,
        chi2_uncorrected: uncorrected,
        df,
        p_value: if chi2 == 0.0 { 1.0 } else { chi_square_upper_tail(chi2, df) },
        kendalls_w: chi2 / (nf * df as f64),
        quartile_tags: quartile_tags(&avg_ranks),
        avg_ranks,
    }
}

/// Tag `ceil(4p/k)` for sorted position `p` (1-based, best first). Equal
/// ranks take the tag of their first position.
pub fn quartile_tags(avg_ranks: &[f64]) -> Vec<u8> {
    let k = avg_ranks.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| avg_ranks[i].total_cmp(&avg_ranks[j]));
    let mut tags = vec![0u8; k];
    let mut group_tag = 0u8;
    for (pos, &i) in order.iter().enumerate() {
        let tied = pos > 0 && avg_ranks[order[pos - 1]] == avg_ranks[i];
        if !tied {
            let p = pos + 1;
            group_tag = (4 * p).div_ceil(k) as u8;
        }
        tags[i] = group_tag;
    }
    tags
}
