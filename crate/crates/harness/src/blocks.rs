use std::collections::{BTreeMap, BTreeSet};

use etoscope_stats::BlockMatrix;

use crate::runner::{suite_of, ExperimentResult};
use crate::HarnessError;

const MAX_LISTED_GAPS: usize = 20;

/// One block per (function, run) of `suite` at `dim`, one column per
/// algorithm in `algorithms` order. Missing cells are refused, not imputed.
pub fn to_block_matrix(
    result: &ExperimentResult,
    suite: &str,
    dim: usize,
    algorithms: &[String],
) -> Result<BlockMatrix, HarnessError> {
    let mut cells: BTreeMap<(&str, usize), BTreeMap<&str, f64>> = BTreeMap::new();
    for r in result.rows.iter().filter(|r| r.dim == dim && suite_of(&r.function) == suite) {
        cells.entry((r.function.as_str(), r.run)).or_default().entry(r.algorithm.as_str()).or_insert(r.final_fitness);
    }
    // failed runs still define blocks
    let failed: BTreeSet<(&str, usize)> = result
        .failures
        .iter()
        .filter(|f| f.dim == dim && suite_of(&f.function) == suite)
        .map(|f| (f.function.as_str(), f.run))
        .collect();
    for key in failed {
        cells.entry(key).or_default();
    }

    let mut gaps = Vec::new();
    let mut values = Vec::with_capacity(cells.len());
    let mut ids = Vec::with_capacity(cells.len());
    for ((function, run), row) in &cells {
        let mut out = Vec::with_capacity(algorithms.len());
        for a in algorithms {
            match row.get(a.as_str()) {
                Some(&v) => out.push(v),
                None => gaps.push(format!("{a} / {function} / {dim}D / run {run}")),
            }
        }
        values.push(out);
        ids.push(format!("{function}#{run}"));
    }
    if !gaps.is_empty() {
        let total = gaps.len();
        gaps.truncate(MAX_LISTED_GAPS);
        return Err(HarnessError::MissingCells { group: format!("{suite} {dim}D"), gaps, total });
    }
    Ok(BlockMatrix::new(values, algorithms.to_vec(), ids)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::ResultRow;

    fn synthetic(n_fn: usize, n_runs: usize, algs: &[&str]) -> ExperimentResult {
        let mut rows = Vec::new();
        for (a, alg) in algs.iter().enumerate() {
            for f in 0..n_fn {
                for run in 0..n_runs {
                    rows.push(ResultRow {
                        algorithm: alg.to_string(),
                        function: format!("s.F{:02}_x", f + 1),
                        dim: 10,
                        run,
                        seed: 0,
                        final_fitness: (a * 1000 + f * 10 + run) as f64,
                    });
                }
            }
        }
        ExperimentResult { algorithms: algs.iter().map(|s| s.to_string()).collect(), rows, ..Default::default() }
    }

    #[test]
    fn block_counts() {
        let names: Vec<String> = (0..10).map(|j| format!("A{j}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let m = to_block_matrix(&synthetic(10, 25, &refs), "s", 10, &names).unwrap();
        assert_eq!((m.n_blocks(), m.n_algorithms()), (250, 10));
        let m = to_block_matrix(&synthetic(29, 25, &refs[..3]), "s", 10, &names[..3]).unwrap();
        assert_eq!(m.n_blocks(), 725);
    }

    #[test]
    fn every_row_lands_in_one_cell() {
        let names = vec!["P".to_string(), "Q".to_string()];
        let res = synthetic(3, 4, &["P", "Q"]);
        let m = to_block_matrix(&res, "s", 10, &names).unwrap();
        let mut all: Vec<f64> = m.rows().iter().flatten().copied().collect();
        let mut want: Vec<f64> = res.rows.iter().map(|r| r.final_fitness).collect();
        all.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        assert_eq!(all, want);
    }

    #[test]
    fn missing_run_is_named() {
        let names = vec!["P".to_string(), "Q".to_string()];
        let mut res = synthetic(2, 3, &["P", "Q"]);
        res.rows.retain(|r| !(r.algorithm == "Q" && r.run == 1 && r.function == "s.F02_x"));
        match to_block_matrix(&res, "s", 10, &names) {
            Err(HarnessError::MissingCells { gaps, total, .. }) => {
                assert_eq!(total, 1);
                assert_eq!(gaps[0], "Q / s.F02_x / 10D / run 1");
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }
}
