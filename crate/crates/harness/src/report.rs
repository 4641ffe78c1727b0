use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use etoscope_diagnostics::FlawReport;
use etoscope_stats::render_markdown;

use crate::analysis::GroupComparison;
use crate::bands::{convergence_bands, MIN_BAND_RUNS};
use crate::runner::ExperimentResult;
use crate::HarnessError;

pub const REPORT_FILE: &str = "report.md";
pub const BANDS_DIR: &str = "bands";

#[derive(Debug, Clone, PartialEq)]
pub struct ReportArtifacts {
    pub report: PathBuf,
    pub band_files: Vec<PathBuf>,
}

pub fn band_file_name(algorithm: &str, function: &str, dim: usize) -> String {
    format!("{algorithm}__{function}__{dim}d.csv")
}

/// Markdown report (three blocks per group), a band CSV per
/// (algorithm, function, dim) with at least four runs, and the flaw report
/// when one is given.
pub fn render_report(
    result: &ExperimentResult,
    groups: &[GroupComparison],
    flaws: Option<&FlawReport>,
    out_dir: &Path,
) -> Result<ReportArtifacts, HarnessError> {
    let bands_dir = out_dir.join(BANDS_DIR);
    fs::create_dir_all(&bands_dir).map_err(|e| HarnessError::io(&bands_dir, e))?;

    let mut band_files = Vec::new();
    let mut skipped = Vec::new();
    for (alg, function, dim) in result.curve_cells() {
        let curves: Vec<Vec<f64>> = result.curves_for(&alg, &function, dim).into_iter().map(|c| c.curve.clone()).collect();
        match convergence_bands(&curves) {
            Ok(bands) => {
                let path = bands_dir.join(band_file_name(&alg, &function, dim));
                let mut buf = Vec::new();
                bands.write_csv(&mut buf).map_err(|e| HarnessError::io(&path, e))?;
                fs::write(&path, buf).map_err(|e| HarnessError::io(&path, e))?;
                band_files.push(path);
            }
            Err(e) => skipped.push(format!("{alg} / {function} / {dim}D: {e}")),
        }
    }

    let mut md = String::from("# Experiment report\n\n");
    let _ = writeln!(
        md,
        "{} algorithms ({}), {} completed runs, {} failed runs.\n",
        result.algorithms.len(),
        result.algorithms.join(", "),
        result.rows.len(),
        result.failures.len()
    );
    for g in groups {
        match &g.outcome {
            Ok(r) => md.push_str(&render_markdown(r, &g.title())),
            Err(reason) => {
                let _ = writeln!(md, "## {}\n\nNot compared: {reason}", g.title());
            }
        }
        md.push('\n');
    }

    let _ = writeln!(md, "## Convergence bands\n");
    let _ = writeln!(
        md,
        "{} band files in `{BANDS_DIR}/` (columns min,q1,median,q3,max; one row per iteration).",
        band_files.len()
    );
    if !skipped.is_empty() {
        let _ = writeln!(md, "\nSkipped (fewer than {MIN_BAND_RUNS} runs or ragged curves):\n");
        for s in &skipped {
            let _ = writeln!(md, "- {s}");
        }
    }
    if !result.failures.is_empty() {
        let _ = writeln!(md, "\n## Failed runs\n\n| Algorithm | Function | Dim | Run | Reason |\n|---|---|---|---|---|");
        for f in &result.failures {
            let _ = writeln!(md, "| {} | {} | {} | {} | {} |", f.algorithm, f.function, f.dim, f.run, f.reason);
        }
    }
    if let Some(flaws) = flaws {
        md.push('\n');
        md.push_str(&flaws.to_markdown());
    }

    let report = out_dir.join(REPORT_FILE);
    fs::write(&report, md).map_err(|e| HarnessError::io(&report, e))?;
    Ok(ReportArtifacts { report, band_files })
}
