use serde::Serialize;

use crate::effect::{cliffs_delta, effect_size_r, median_difference};
use crate::friedman::{friedman_test, FriedmanReport};
use crate::wilcoxon::{wilcoxon_signed_rank_with, WilcoxonMode};
use crate::{BlockMatrix, StatsError};

/// `1 - (1 - p)^m`, clamped to `[0, 1]`.
pub fn dunn_sidak_adjust(p_raw: f64, m: usize) -> f64 {
    assert!(m >= 1, "need at least one comparison");
    let p = p_raw.clamp(0.0, 1.0);
    // -expm1(m * ln1p(-p)) keeps precision for tiny p
    (-(m as f64 * (-p).ln_1p()).exp_m1()).clamp(0.0, 1.0).max(p)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowStatus {
    Tested,
    /// Too few nonzero differences; p-values are reported as 1 and z as 0.
    Underpowered { nonzero: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseRow {
    pub group1: String,
    pub group2: String,
    pub n_pairs: usize,
    pub zeros_dropped: usize,
    pub p_raw: f64,
    pub p_adjusted: f64,
    pub z: f64,
    pub effect_r: f64,
    pub cliffs_delta: f64,
    pub median_diff: f64,
    pub exact: bool,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub friedman: FriedmanReport,
    pub reference: String,
    pub alpha: f64,
    /// Family size used in the adjustment.
    pub comparisons: usize,
    pub rows: Vec<PairwiseRow>,
}

impl ComparisonReport {
    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn row(&self, other: &str) -> Option<&PairwiseRow> {
        self.rows.iter().find(|r| r.group2 == other)
    }
}

fn pairwise(reference: &str, other: &str, a: &[f64], b: &[f64], m: usize) -> Result<PairwiseRow, StatsError> {
    let cliffs = cliffs_delta(a, b)?;
    let median_diff = median_difference(a, b)?;
    let base = PairwiseRow {
        group1: reference.to_string(),
        group2: other.to_string(),
        n_pairs: a.len(),
        zeros_dropped: 0,
        p_raw: 1.0,
        p_adjusted: 1.0,
        z: 0.0,
        effect_r: 0.0,
        cliffs_delta: cliffs,
        median_diff,
        exact: false,
        status: RowStatus::Tested,
    };
    Ok(match wilcoxon_signed_rank_with(a, b, WilcoxonMode::Auto) {
        Ok(w) => PairwiseRow {
            zeros_dropped: w.zeros_dropped,
            p_raw: w.p_value,
            p_adjusted: dunn_sidak_adjust(w.p_value, m),
            z: w.z,
            effect_r: effect_size_r(w.z, w.n),
            exact: w.exact,
            ..base
        },
        Err(StatsError::Underpowered { nonzero, zeros }) => PairwiseRow {
            zeros_dropped: zeros,
            status: RowStatus::Underpowered { nonzero },
            ..base
        },
        Err(e) => return Err(e),
    })
}

/// Friedman test plus one reference-vs-other row per remaining algorithm,
/// adjusted for `k - 1` comparisons.
pub fn compare_all(data: &BlockMatrix, reference: &str) -> Result<ComparisonReport, StatsError> {
    let r = data
        .index_of(reference)
        .ok_or_else(|| StatsError::UnknownReference(reference.to_string()))?;
    let m = data.n_algorithms() - 1;
    let ref_col = data.column(r);
    let rows = data
        .algorithm_names()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != r)
        .map(|(j, name)| pairwise(reference, name, &ref_col, &data.column(j), m))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ComparisonReport {
        friedman: friedman_test(data),
        reference: reference.to_string(),
        alpha: 0.05,
        comparisons: m,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sidak_examples() {
        assert!((dunn_sidak_adjust(0.05, 1) - 0.05).abs() < 1e-15);
        assert!((dunn_sidak_adjust(0.05, 9) - (1.0 - 0.95f64.powi(9))).abs() < 1e-12);
        assert!((dunn_sidak_adjust(0.05, 9) - 0.3698).abs() < 1e-4);
        assert_eq!(dunn_sidak_adjust(0.0, 7), 0.0);
        assert_eq!(dunn_sidak_adjust(1.0, 7), 1.0);
    }

    proptest! {
        #[test]
        fn sidak_is_monotone(p in 0.0f64..=1.0, q in 0.0f64..=1.0, m in 1usize..50, extra in 0usize..50) {
            let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
            prop_assert!(dunn_sidak_adjust(lo, m) <= dunn_sidak_adjust(hi, m));
            prop_assert!(dunn_sidak_adjust(p, m) <= dunn_sidak_adjust(p, m + extra));
            prop_assert!(dunn_sidak_adjust(p, m) >= p);
            prop_assert!((dunn_sidak_adjust(p, m) - (1.0 - (1.0 - p).powi(m as i32))).abs() < 1e-12);
        }
    }

    fn synthetic(k: usize, n: usize, seed: u64) -> BlockMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let names: Vec<String> = (0..k).map(|j| format!("A{j}")).collect();
        let rows = (0..n)
            .map(|_| (0..k).map(|j| j as f64 + rng.random::<f64>() * 3.0).collect())
            .collect();
        BlockMatrix::new(rows, names, (0..n).map(|i| i.to_string()).collect()).unwrap()
    }

    #[test]
    fn dominant_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 250;
        let names = ["REF", "B", "C", "D"];
        let cols: Vec<Vec<f64>> = (0..4)
            .map(|j| (0..n).map(|_| if j == 0 { rng.random::<f64>() } else { 2.0 + rng.random::<f64>() }).collect())
            .collect();
        let data = BlockMatrix::from_columns(&names, &cols).unwrap();
        let report = compare_all(&data, "REF").unwrap();
        assert_eq!(report.rows.len(), 3);
        assert_eq!(report.comparisons, 3);
        for row in &report.rows {
            assert_eq!(row.cliffs_delta, -1.0);
            assert!(row.median_diff < 0.0);
            assert!(row.p_adjusted <= 0.05 && row.p_adjusted >= row.p_raw);
            assert!((row.effect_r - 0.867).abs() < 1e-3);
        }
        assert_eq!(report.friedman.quartile_tags[0], 1);
    }

    #[test]
    fn ten_algorithms_give_nine_rows() {
        let report = compare_all(&synthetic(10, 50, 1), "A0").unwrap();
        assert_eq!(report.rows.len(), 9);
        assert!(report.rows.iter().all(|r| r.group1 == "A0"));
        assert!(matches!(compare_all(&synthetic(3, 5, 1), "nope"), Err(StatsError::UnknownReference(_))));
    }

    #[test]
    fn underpowered_rows_are_flagged() {
        let data = BlockMatrix::from_columns(&["R", "S"], &[vec![1.0; 6], vec![1.0, 1.0, 1.0, 1.0, 2.0, 1.0]]).unwrap();
        let report = compare_all(&data, "R").unwrap();
        assert_eq!(report.rows[0].status, RowStatus::Underpowered { nonzero: 1 });
        assert_eq!(report.rows[0].p_adjusted, 1.0);
    }

    #[test]
    fn column_order_does_not_matter() {
        let data = synthetic(6, 40, 9);
        let base = compare_all(&data, "A2").unwrap();
        let order = [4, 2, 0, 5, 1, 3];
        let perm = compare_all(&data.permute_columns(&order), "A2").unwrap();
        assert!((base.friedman.chi2 - perm.friedman.chi2).abs() < 1e-9);
        assert_eq!(base.friedman.p_value, perm.friedman.p_value);
        for (new_j, &old_j) in order.iter().enumerate() {
            assert_eq!(base.friedman.avg_ranks[old_j], perm.friedman.avg_ranks[new_j]);
            assert_eq!(base.friedman.quartile_tags[old_j], perm.friedman.quartile_tags[new_j]);
        }
        for row in &base.rows {
            assert_eq!(Some(row), perm.row(&row.group2));
        }
    }
}
