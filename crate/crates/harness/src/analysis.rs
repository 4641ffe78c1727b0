use std::fmt::Write as _;
use std::path::Path;

use etoscope_stats::{compare_all, ComparisonReport, RowStatus};

use crate::blocks::to_block_matrix;
use crate::runner::ExperimentResult;
use crate::HarnessError;

/// Comparison of one suite at one dimensionality, or why it was refused.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupComparison {
    pub suite: String,
    pub dim: usize,
    pub outcome: Result<ComparisonReport, String>,
}

impl GroupComparison {
    pub fn title(&self) -> String {
        format!("{}, {}D", self.suite, self.dim)
    }
}

pub fn compare_groups(result: &ExperimentResult, reference: &str, alpha: f64) -> Result<Vec<GroupComparison>, HarnessError> {
    if !result.algorithms.iter().any(|a| a == reference) {
        return Err(HarnessError::UnknownReference(reference.to_string()));
    }
    Ok(result
        .groups()
        .into_iter()
        .map(|(suite, dim)| {
            let outcome = to_block_matrix(result, &suite, dim, &result.algorithms)
                .and_then(|m| Ok(compare_all(&m, reference)?.with_alpha(alpha)))
                .map_err(|e| e.to_string());
            GroupComparison { suite, dim, outcome }
        })
        .collect())
}

/// `friedman.csv`, `ranks.csv` and `pairwise.csv` for every comparable group.
pub fn write_comparison_csvs(groups: &[GroupComparison], dir: &Path) -> Result<(), HarnessError> {
    let mut friedman = String::from("suite,dim,n_blocks,chi2,chi2_uncorrected,df,p_value,kendalls_w\n");
    let mut ranks = String::from("suite,dim,algorithm,avg_rank,quartile\n");
    let mut pairwise = String::from(
        "suite,dim,group1,group2,n_pairs,zeros_dropped,p_raw,p_adjusted,z,effect_r,cliffs_delta,median_diff,exact,status\n",
    );
    for g in groups {
        let Ok(r) = &g.outcome else { continue };
        let f = &r.friedman;
        let _ = writeln!(
            friedman,
            "{},{},{},{},{},{},{},{}",
            g.suite, g.dim, f.n_blocks, f.chi2, f.chi2_uncorrected, f.df, f.p_value, f.kendalls_w
        );
        for ((name, rank), tag) in f.algorithm_names.iter().zip(&f.avg_ranks).zip(&f.quartile_tags) {
            let _ = writeln!(ranks, "{},{},{name},{rank},{tag}", g.suite, g.dim);
        }
        for p in &r.rows {
            let status = match p.status {
                RowStatus::Tested => "tested",
                RowStatus::Underpowered { .. } => "underpowered",
            };
            let _ = writeln!(
                pairwise,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{status}",
                g.suite,
                g.dim,
                p.group1,
                p.group2,
                p.n_pairs,
                p.zeros_dropped,
                p.p_raw,
                p.p_adjusted,
                p.z,
                p.effect_r,
                p.cliffs_delta,
                p.median_diff,
                p.exact
            );
        }
    }
    for (name, text) in [("friedman.csv", friedman), ("ranks.csv", ranks), ("pairwise.csv", pairwise)] {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| HarnessError::io(&path, e))?;
    }
    Ok(())
}
