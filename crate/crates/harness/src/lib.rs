//! Experiment orchestration: configuration, run-matrix execution with
//! resumable persistence, convergence bands, block matrices and reports.

pub mod analysis;
pub mod bands;
pub mod blocks;
pub mod commands;
pub mod config;
pub mod report;
pub mod runner;
pub mod seeding;

use std::path::{Path, PathBuf};

use etoscope_core::benchmarks::BenchmarkError;
use etoscope_stats::StatsError;
use thiserror::Error;

pub use analysis::{compare_groups, write_comparison_csvs, GroupComparison};
pub use bands::{convergence_bands, BandRow, ConvergenceBands, BANDS_CSV_HEADER};
pub use blocks::to_block_matrix;
pub use config::{load_config, AlgorithmConfig, AlgorithmKind, ExperimentConfig, SuiteConfig};
pub use report::{render_report, ReportArtifacts};
pub use runner::{load_results, run_experiment, CurveRecord, ExperimentResult, FailureRow, ResultRow, RunSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration:\n  - {}", .0.join("\n  - "))]
    Config(Vec<String>),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid results: {0}")]
    InvalidResults(String),
    #[error(transparent)]
    Benchmark(#[from] BenchmarkError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("{group}: {total} missing cells, e.g. {}", .gaps.join("; "))]
    MissingCells { group: String, gaps: Vec<String>, total: usize },
    #[error("reference algorithm '{0}' not found in results")]
    UnknownReference(String),
    #[error("convergence bands: {0}")]
    Bands(String),
}

impl HarnessError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.to_path_buf(), source }
    }
}
