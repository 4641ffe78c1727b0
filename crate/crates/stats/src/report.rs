use std::fmt::Write;

use crate::compare::{ComparisonReport, RowStatus};

/// Three decimals; anything below `5e-4` prints as `0.000`.
pub fn format_p(p: f64) -> String {
    if p < 5e-4 {
        "0.000".to_string()
    } else {
        format!("{p:.3}")
    }
}

/// Markdown with a Friedman block, a ranks/quartiles block and a post-hoc block.
pub fn render_markdown(report: &ComparisonReport, title: &str) -> String {
    let f = &report.friedman;
    let mut out = String::new();
    let _ = writeln!(out, "## {title}\n");
    let _ = writeln!(out, "### Friedman test\n");
    let _ = writeln!(out, "| Chi-square | df | N | p-value | Kendall's W |");
    let _ = writeln!(out, "|---|---|---|---|---|");
    let _ = writeln!(
        out,
        "| {:.3} | {} | {} | {} | {:.3} |\n",
        f.chi2,
        f.df,
        f.n_blocks,
        format_p(f.p_value),
        f.kendalls_w
    );
    if (f.chi2 - f.chi2_uncorrected).abs() > 1e-6 {
        let _ = writeln!(out, "Without tie correction: chi-square {:.3}.\n", f.chi2_uncorrected);
    }

    let _ = writeln!(out, "### Average ranks and quartiles\n");
    let _ = writeln!(out, "| Algorithm | Average rank | Quartile |");
    let _ = writeln!(out, "|---|---|---|");
    for ((name, rank), tag) in f.algorithm_names.iter().zip(&f.avg_ranks).zip(&f.quartile_tags) {
        let _ = writeln!(out, "| {name} | {rank:.3} | {tag} |");
    }

    let _ = writeln!(
        out,
        "\n### Post hoc pairwise comparison (Dunn-Sidak, m = {}, alpha = {})\n",
        report.comparisons, report.alpha
    );
    let _ = writeln!(out, "| Group 1 | Group 2 | Adjusted p | Wilcoxon p | z | Effect size r | Cliff's delta | Median diff. | Note |");
    let _ = writeln!(out, "|---|---|---|---|---|---|---|---|---|");
    for r in &report.rows {
        let note = match r.status {
            RowStatus::Tested if r.p_adjusted < report.alpha => "significant".to_string(),
            RowStatus::Tested => String::new(),
            RowStatus::Underpowered { nonzero } => format!("underpowered ({nonzero} nonzero)"),
        };
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {:.3} | {:.3} | {:.3} | {:.3} | {} |",
            r.group1,
            r.group2,
            format_p(r.p_adjusted),
            format_p(r.p_raw),
            r.z,
            r.effect_r,
            r.cliffs_delta,
            r.median_diff,
            note
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{compare_all, BlockMatrix};

    #[test]
    fn p_formatting() {
        assert_eq!(format_p(1e-300), "0.000");
        assert_eq!(format_p(0.0004999), "0.000");
        assert_eq!(format_p(0.0005), "0.001");
        assert_eq!(format_p(0.36975), "0.370");
    }

    #[test]
    fn three_blocks() {
        let cols = vec![
            (0..30).map(|i| i as f64).collect(),
            (0..30).map(|i| i as f64 * 1.5 + 1.0).collect(),
            (0..30).map(|i| (i * 7 % 30) as f64).collect::<Vec<f64>>(),
        ];
        let data = BlockMatrix::from_columns(&["X", "Y", "Z"], &cols).unwrap();
        let md = render_markdown(&compare_all(&data, "X").unwrap(), "demo");
        assert_eq!(md.matches("### ").count(), 3);
        assert!(md.contains("| X | Y | 0.000 |"));
        assert_eq!(md.lines().filter(|l| l.starts_with("| X |")).count(), 3);
    }
}
