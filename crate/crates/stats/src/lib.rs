//! Rank-based comparison of optimizers over (function, run) blocks.
//!
//! Fitness is minimized throughout: rank 1 is the smallest value, and a
//! negative effect (`cliffs_delta`, `median_difference`) means the first
//! sample is better.

mod compare;
mod effect;
mod friedman;
mod ranks;
mod report;
pub mod special;
mod wilcoxon;

use thiserror::Error;

pub use compare::{compare_all, dunn_sidak_adjust, ComparisonReport, PairwiseRow, RowStatus};
pub use effect::{cliffs_delta, cliffs_delta_brute_force, effect_size_r, median, median_difference};
pub use friedman::{friedman_test, quartile_tags, FriedmanReport};
pub use ranks::{average_ranks, tie_correction_term};
pub use report::{format_p, render_markdown};
pub use special::chi_square_upper_tail;
pub use wilcoxon::{
    wilcoxon_exact_enumeration, wilcoxon_signed_rank, wilcoxon_signed_rank_with, WilcoxonMode, WilcoxonResult,
    EXACT_MAX_N, MIN_NONZERO,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("need at least 2 blocks, got {0}")]
    TooFewBlocks(usize),
    #[error("need at least 2 algorithms, got {0}")]
    TooFewAlgorithms(usize),
    #[error("block {block} has {len} values, expected {expected}")]
    Ragged { block: usize, len: usize, expected: usize },
    #[error("non-finite value in block {block}, algorithm {algorithm}")]
    NonFinite { block: usize, algorithm: usize },
    #[error("{what}: expected {expected} labels, got {got}")]
    LabelCount { what: &'static str, expected: usize, got: usize },
    #[error("duplicate algorithm name '{0}'")]
    DuplicateAlgorithm(String),
    #[error("reference '{0}' is not among the algorithms")]
    UnknownReference(String),
    #[error("paired samples differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("underpowered: {nonzero} nonzero differences ({zeros} zeros dropped), need at least 5")]
    Underpowered { nonzero: usize, zeros: usize },
    #[error("exact mode supports at most {max} nonzero differences, got {n}")]
    ExactTooLarge { n: usize, max: usize },
    #[error("empty sample")]
    Empty,
    #[error("non-finite sample value")]
    NonFiniteSample,
}

/// Fitness values arranged as N blocks (rows) by k algorithms (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix {
    values: Vec<Vec<f64>>,
    algorithm_names: Vec<String>,
    block_ids: Vec<String>,
}

impl BlockMatrix {
    pub fn new(
        values: Vec<Vec<f64>>,
        algorithm_names: Vec<String>,
        block_ids: Vec<String>,
    ) -> Result<Self, StatsError> {
        let k = algorithm_names.len();
        if k < 2 {
            return Err(StatsError::TooFewAlgorithms(k));
        }
        if values.len() < 2 {
            return Err(StatsError::TooFewBlocks(values.len()));
        }
        if block_ids.len() != values.len() {
            return Err(StatsError::LabelCount { what: "block ids", expected: values.len(), got: block_ids.len() });
        }
        for (i, name) in algorithm_names.iter().enumerate() {
            if algorithm_names[..i].contains(name) {
                return Err(StatsError::DuplicateAlgorithm(name.clone()));
            }
        }
        for (block, row) in values.iter().enumerate() {
            if row.len() != k {
                return Err(StatsError::Ragged { block, len: row.len(), expected: k });
            }
            if let Some(algorithm) = row.iter().position(|v| !v.is_finite()) {
                return Err(StatsError::NonFinite { block, algorithm });
            }
        }
        Ok(Self { values, algorithm_names, block_ids })
    }

    /// Build from one column per algorithm; block ids are `0..N`.
    pub fn from_columns(names: &[&str], columns: &[Vec<f64>]) -> Result<Self, StatsError> {
        if names.len() != columns.len() {
            return Err(StatsError::LabelCount { what: "algorithm names", expected: columns.len(), got: names.len() });
        }
        let n = columns.first().map_or(0, Vec::len);
        if let Some(bad) = columns.iter().find(|c| c.len() != n) {
            return Err(StatsError::Ragged { block: n.min(bad.len()), len: bad.len(), expected: n });
        }
        let values = (0..n).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        Self::new(
            values,
            names.iter().map(|s| s.to_string()).collect(),
            (0..n).map(|i| i.to_string()).collect(),
        )
    }

    pub fn n_blocks(&self) -> usize {
        self.values.len()
    }

    pub fn n_algorithms(&self) -> usize {
        self.algorithm_names.len()
    }

    pub fn algorithm_names(&self) -> &[String] {
        &self.algorithm_names
    }

    pub fn block_ids(&self) -> &[String] {
        &self.block_ids
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.values.iter().map(|row| row[j]).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.algorithm_names.iter().position(|n| n == name)
    }

    /// Same data with the columns reordered; `order[j]` is the old index of new column `j`.
    pub fn permute_columns(&self, order: &[usize]) -> Self {
        Self {
            values: self.values.iter().map(|row| order.iter().map(|&j| row[j]).collect()).collect(),
            algorithm_names: order.iter().map(|&j| self.algorithm_names[j].clone()).collect(),
            block_ids: self.block_ids.clone(),
        }
    }
}
