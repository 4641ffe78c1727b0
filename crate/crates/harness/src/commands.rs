//! Command-line entry points. Each returns a process exit code.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use etoscope_core::eto::{EtoParams, GammaChoice, Rule};
use etoscope_diagnostics::{
    flaw_report, probe_update_distribution, switch_probability_curve, trace_controls, FlawReport, ProbeConfig,
};
use etoscope_stats::render_markdown;

use crate::analysis::{compare_groups, write_comparison_csvs};
use crate::config::ExperimentConfig;
use crate::report::render_report;
use crate::runner::{load_results, run_experiment, FLAWS_FILE};
use crate::{HarnessError, EXIT_INVALID, EXIT_OK, EXIT_PARTIAL};

#[derive(Debug, Parser)]
#[command(name = "etoscope", version, about = "Benchmark, compare and audit population-based optimizers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Execute (or resume) the run matrix of a configuration.
    Run(RunArgs),
    /// Friedman, post hoc Wilcoxon and effect sizes over a results directory.
    Stats(StatsArgs),
    /// Closed-form audits and Monte-Carlo probes of the ETO update rules.
    Diagnose(DiagnoseArgs),
    /// Markdown report, convergence bands and flaw report.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value_t = default_workers())]
    pub workers: usize,
    /// Defaults to `output_dir` from the configuration.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "ETO")]
    pub reference: String,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value = "ETO")]
    pub reference: String,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    #[arg(long, default_value_t = 500)]
    pub budget: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    /// 1, 2, 3, 4 or all.
    #[arg(long, default_value = "all", value_parser = parse_rules)]
    pub rule: RuleSelection,
    #[arg(long, default_value = "-5:10", value_parser = parse_domain, allow_hyphen_values = true)]
    pub domain: (f64, f64),
    /// Histogram bin width as a fraction of the domain width.
    #[arg(long, default_value_t = 0.01)]
    pub resolution: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Probe iteration as a fraction of the budget.
    #[arg(long, default_value_t = 0.5)]
    pub t_fraction: f64,
    /// Gamma used by rule 4: formula or claimed.
    #[arg(long, default_value = "claimed")]
    pub gamma: GammaChoice,
    #[arg(long, default_value_t = 1)]
    pub partitions: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleSelection(pub Vec<Rule>);

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn parse_rules(s: &str) -> Result<RuleSelection, String> {
    if s == "all" {
        return Ok(RuleSelection(Rule::ALL.to_vec()));
    }
    s.parse::<u8>()
        .ok()
        .and_then(Rule::from_number)
        .map(|r| RuleSelection(vec![r]))
        .ok_or_else(|| format!("expected 1, 2, 3, 4 or all, got '{s}'"))
}

fn parse_domain(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got '{s}'"))?;
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound '{lo}'"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound '{hi}'"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("need finite LO < HI, got {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn report_error(e: &HarnessError) -> i32 {
    eprintln!("error: {e}");
    EXIT_INVALID
}

fn ensure_dir(dir: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))
}

pub fn dispatch(cli: Cli) -> i32 {
    match cli.command {
        Command::Run(a) => cmd_run(&a),
        Command::Stats(a) => cmd_stats(&a),
        Command::Diagnose(a) => cmd_diagnose(&a),
        Command::Report(a) => cmd_report(&a),
    }
}

pub fn cmd_run(args: &RunArgs) -> i32 {
    let config = match ExperimentConfig::load(&args.config) {
        Ok(c) => c,
        Err(e) => return report_error(&e),
    };
    let Some(out) = args.out.clone().or_else(|| config.output_dir.clone()) else {
        eprintln!("error: no --out given and no output_dir in the configuration");
        return EXIT_INVALID;
    };
    match run_experiment(&config, &out, args.workers) {
        Ok((_, s)) => {
            eprintln!(
                "{} planned, {} already done, {} executed, {} failed -> {}",
                s.planned,
                s.skipped,
                s.executed,
                s.failed,
                out.display()
            );
            if s.failed > 0 {
                EXIT_PARTIAL
            } else {
                EXIT_OK
            }
        }
        Err(e) => report_error(&e),
    }
}

pub fn cmd_stats(args: &StatsArgs) -> i32 {
    let run = || -> Result<bool, HarnessError> {
        let result = load_results(&args.input)?;
        let groups = compare_groups(&result, &args.reference, args.alpha)?;
        ensure_dir(&args.out)?;
        let mut md = String::from("# Statistical comparison\n\n");
        let mut complete = true;
        for g in &groups {
            match &g.outcome {
                Ok(r) => md.push_str(&render_markdown(r, &g.title())),
                Err(reason) => {
                    complete = false;
                    let _ = writeln!(md, "## {}\n\nNot compared: {reason}", g.title());
                }
            }
            md.push('\n');
        }
        let path = args.out.join("stats.md");
        fs::write(&path, md).map_err(|e| HarnessError::io(&path, e))?;
        write_comparison_csvs(&groups, &args.out)?;
        Ok(complete)
    };
    match run() {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_PARTIAL,
        Err(e) => report_error(&e),
    }
}

pub fn cmd_report(args: &ReportArgs) -> i32 {
    let run = || -> Result<bool, HarnessError> {
        let result = load_results(&args.input)?;
        let groups = compare_groups(&result, &args.reference, args.alpha)?;
        let flaws_path = args.input.join(FLAWS_FILE);
        let flaws: Option<FlawReport> = if flaws_path.exists() {
            let text = fs::read_to_string(&flaws_path).map_err(|e| HarnessError::io(&flaws_path, e))?;
            Some(serde_json::from_str(&text).map_err(|e| HarnessError::InvalidResults(format!("{FLAWS_FILE}: {e}")))?)
        } else {
            None
        };
        ensure_dir(&args.out)?;
        render_report(&result, &groups, flaws.as_ref(), &args.out)?;
        write_comparison_csvs(&groups, &args.out)?;
        Ok(result.failures.is_empty() && groups.iter().all(|g| g.outcome.is_ok()))
    };
    match run() {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_PARTIAL,
        Err(e) => report_error(&e),
    }
}

pub fn cmd_diagnose(args: &DiagnoseArgs) -> i32 {
    match diagnose(args) {
        Ok(()) => EXIT_OK,
        Err(e) => report_error(&e),
    }
}

fn diagnose(args: &DiagnoseArgs) -> Result<(), HarnessError> {
    if args.budget == 0 {
        return Err(HarnessError::Config(vec!["--budget must be at least 1".into()]));
    }
    ensure_dir(&args.out)?;
    let write = |name: &str, bytes: &[u8]| {
        let path = args.out.join(name);
        fs::write(&path, bytes).map_err(|e| HarnessError::io(&path, e))
    };

    let report = flaw_report(&EtoParams::default().with_budget(args.budget));

    let mut md = report.to_markdown();
    let _ = writeln!(
        md,
        "\n## Update-rule probes\n\nDomain [{}, {}], {} samples, resolution {}, t = {} of {}, rule-4 gamma: {} ({:.4}).\n",
        args.domain.0,
        args.domain.1,
        args.samples,
        args.resolution,
        ProbeConfig { t_fraction: args.t_fraction, budget: args.budget, ..ProbeConfig::new(Rule::One) }.iteration(),
        args.budget,
        args.gamma.as_str(),
        args.gamma.value(1, args.budget),
    );
    let _ = writeln!(md, "| Rule | Mean | Median | Out of bounds | Mass above 0 | Mass above midpoint | Mean - median |");
    let _ = writeln!(md, "|---|---|---|---|---|---|---|");
    let mut metrics_csv = String::from("rule,gamma,mean,median,oob_fraction,positive_mass,midpoint_mass,skew_proxy,n_in_range\n");
    for &rule in &args.rule.0 {
        let cfg = ProbeConfig {
            n_samples: args.samples,
            lower: args.domain.0,
            upper: args.domain.1,
            resolution: args.resolution,
            t_fraction: args.t_fraction,
            budget: args.budget,
            seed: args.seed,
            gamma: args.gamma,
            partitions: args.partitions,
            ..ProbeConfig::new(rule)
        };
        let probe = probe_update_distribution(&cfg).map_err(|e| HarnessError::Config(vec![e.to_string()]))?;
        let m = probe.metrics;
        let _ = writeln!(
            md,
            "| {} | {:.4} | {:.4} | {:.4} | {:.4} | {:.4} | {:.4} |",
            rule.number(),
            m.mean,
            m.median,
            m.oob_fraction,
            m.positive_mass,
            m.midpoint_mass,
            m.skew_proxy
        );
        let _ = writeln!(
            metrics_csv,
            "{},{},{},{},{},{},{},{},{}",
            rule.number(),
            args.gamma.as_str(),
            m.mean,
            m.median,
            m.oob_fraction,
            m.positive_mass,
            m.midpoint_mass,
            m.skew_proxy,
            m.n_in_range
        );
        let mut hist = Vec::new();
        probe.pdf.write_csv(&mut hist).map_err(|e| HarnessError::io(&args.out, e))?;
        write(&format!("histogram_rule{}.csv", rule.number()), &hist)?;
    }

    let mut curve = String::from("t,probability\n");
    for (t, p) in switch_probability_curve(args.budget) {
        let _ = writeln!(curve, "{t},{p}");
    }
    let mut controls = Vec::new();
    trace_controls(args.budget, 200, args.seed)
        .write_csv(&mut controls)
        .map_err(|e| HarnessError::io(&args.out, e))?;

    write("flaws.md", md.as_bytes())?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| HarnessError::InvalidResults(e.to_string()))?;
    write(FLAWS_FILE, (json + "\n").as_bytes())?;
    write("probe_metrics.csv", metrics_csv.as_bytes())?;
    write("switch_probability.csv", curve.as_bytes())?;
    write("controls.csv", &controls)?;
    Ok(())
}
