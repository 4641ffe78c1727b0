//! Experiment configuration (TOML).

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use etoscope_core::baselines::{Pso, PsoParams, RandomSearch};
use etoscope_core::benchmarks::{SuiteKind, MAX_VARIANTS};
use etoscope_core::eto::{EtoConfig, EtoOptimizer};
use etoscope_core::{BoundaryPolicy, Optimizer};
use serde::Deserialize;

use crate::HarnessError;

pub const DEFAULT_N_RUNS: usize = 25;
pub const DEFAULT_N_AGENTS: usize = 30;
pub const DEFAULT_BUDGET: usize = 500;
pub const KNOWN_ALGORITHMS: [&str; 3] = ["ETO", "random_search", "pso"];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    master_seed: Option<u64>,
    n_runs: Option<i64>,
    n_agents: Option<i64>,
    budget: Option<i64>,
    boundary: Option<BoundaryPolicy>,
    output_dir: Option<PathBuf>,
    #[serde(default)]
    suites: Vec<RawSuite>,
    #[serde(default)]
    algorithms: Vec<RawAlgorithm>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSuite {
    name: String,
    kind: SuiteKind,
    n_functions: i64,
    dims: Vec<i64>,
    lower: Option<f64>,
    upper: Option<f64>,
    seed: Option<u64>,
    budget: Option<i64>,
    n_agents: Option<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgorithm {
    name: String,
    label: Option<String>,
    #[serde(default)]
    params: toml::Table,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub name: String,
    pub kind: SuiteKind,
    pub n_functions: usize,
    pub dims: Vec<usize>,
    pub lower: f64,
    pub upper: f64,
    pub seed: u64,
    pub budget: usize,
    pub n_agents: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmKind {
    Eto(EtoConfig),
    RandomSearch,
    Pso(PsoParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmConfig {
    /// Column name in results; defaults to the algorithm name.
    pub label: String,
    pub kind: AlgorithmKind,
}

impl AlgorithmConfig {
    pub fn instantiate(&self) -> Box<dyn Optimizer> {
        match &self.kind {
            AlgorithmKind::Eto(cfg) => Box::new(EtoOptimizer::new(*cfg)),
            AlgorithmKind::RandomSearch => Box::new(RandomSearch),
            AlgorithmKind::Pso(p) => Box::new(Pso::new(*p)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    pub n_runs: usize,
    pub n_agents: usize,
    pub budget: usize,
    pub boundary: BoundaryPolicy,
    pub output_dir: Option<PathBuf>,
    pub suites: Vec<SuiteConfig>,
    pub algorithms: Vec<AlgorithmConfig>,
}

fn positive(issues: &mut Vec<String>, what: &str, v: Option<i64>, default: usize) -> usize {
    match v {
        None => default,
        Some(v) if v >= 1 => v as usize,
        Some(v) => {
            issues.push(format!("{what} must be a positive integer, got {v}"));
            default
        }
    }
}

fn algorithm(issues: &mut Vec<String>, raw: RawAlgorithm) -> Option<AlgorithmConfig> {
    let label = raw.label.clone().unwrap_or_else(|| raw.name.clone());
    let params = toml::Value::Table(raw.params);
    let kind = match raw.name.as_str() {
        "ETO" => params.try_into().map(AlgorithmKind::Eto),
        "pso" => params.try_into().map(AlgorithmKind::Pso),
        "random_search" => match params.as_table().is_some_and(|t| t.is_empty()) {
            true => Ok(AlgorithmKind::RandomSearch),
            false => {
                issues.push(format!("algorithm '{label}': random_search takes no parameters"));
                return None;
            }
        },
        other => {
            issues.push(format!(
                "unknown algorithm '{other}' (known: {})",
                KNOWN_ALGORITHMS.join(", ")
            ));
            return None;
        }
    };
    match kind {
        Ok(kind) => Some(AlgorithmConfig { label, kind }),
        Err(e) => {
            issues.push(format!("algorithm '{label}': invalid params: {}", e.message().trim()));
            None
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, HarnessError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| HarnessError::Config(vec![e.message().to_string()]))?;
        let mut issues = Vec::new();
        let n_runs = positive(&mut issues, "n_runs", raw.n_runs, DEFAULT_N_RUNS);
        let n_agents = positive(&mut issues, "n_agents", raw.n_agents, DEFAULT_N_AGENTS);
        let budget = positive(&mut issues, "budget", raw.budget, DEFAULT_BUDGET);
        let master_seed = raw.master_seed.unwrap_or(0);

        if raw.suites.is_empty() {
            issues.push("at least one [[suites]] entry is required".into());
        }
        if raw.algorithms.is_empty() {
            issues.push("at least one [[algorithms]] entry is required".into());
        }

        let mut names = BTreeSet::new();
        let mut suites = Vec::new();
        for (i, s) in raw.suites.into_iter().enumerate() {
            let ctx = format!("suite '{}'", s.name);
            if s.name.is_empty() || s.name.contains('.') || s.name.contains(',') {
                issues.push(format!("{ctx}: name must be nonempty and contain no '.' or ','"));
            }
            if !names.insert(s.name.clone()) {
                issues.push(format!("duplicate suite name '{}'", s.name));
            }
            let max = 10 * MAX_VARIANTS;
            if s.n_functions < 1 || s.n_functions as usize > max {
                issues.push(format!("{ctx}: n_functions must be in 1..={max}, got {}", s.n_functions));
            }
            if s.dims.is_empty() {
                issues.push(format!("{ctx}: dims must not be empty"));
            }
            let mut dims = Vec::new();
            for d in &s.dims {
                if *d < 1 {
                    issues.push(format!("{ctx}: dimension must be positive, got {d}"));
                } else if dims.contains(&(*d as usize)) {
                    issues.push(format!("{ctx}: dimension {d} listed twice"));
                } else {
                    dims.push(*d as usize);
                }
            }
            let (lower, upper) = (s.lower.unwrap_or(-100.0), s.upper.unwrap_or(100.0));
            if !(lower.is_finite() && upper.is_finite() && lower < upper) {
                issues.push(format!("{ctx}: need finite lower < upper, got [{lower}, {upper}]"));
            }
            suites.push(SuiteConfig {
                budget: positive(&mut issues, &format!("{ctx}: budget"), s.budget, budget),
                n_agents: positive(&mut issues, &format!("{ctx}: n_agents"), s.n_agents, n_agents),
                name: s.name,
                kind: s.kind,
                n_functions: s.n_functions.max(0) as usize,
                dims,
                lower,
                upper,
                seed: s.seed.unwrap_or_else(|| crate::seeding::suite_seed(master_seed, i)),
            });
        }

        let mut labels = BTreeSet::new();
        let mut algorithms = Vec::new();
        for a in raw.algorithms {
            if let Some(a) = algorithm(&mut issues, a) {
                if a.label.is_empty() || a.label.contains(',') {
                    issues.push(format!("algorithm label '{}' must be nonempty and contain no ','", a.label));
                }
                if !labels.insert(a.label.clone()) {
                    issues.push(format!("duplicate algorithm label '{}'", a.label));
                }
                algorithms.push(a);
            }
        }

        if !issues.is_empty() {
            return Err(HarnessError::Config(issues));
        }
        Ok(Self {
            master_seed,
            n_runs,
            n_agents,
            budget,
            boundary: raw.boundary.unwrap_or_default(),
            output_dir: raw.output_dir,
            suites,
            algorithms,
        })
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn algorithm_labels(&self) -> Vec<String> {
        self.algorithms.iter().map(|a| a.label.clone()).collect()
    }
}

/// Convenience alias matching the operation name.
pub fn load_config(path: &Path) -> Result<ExperimentConfig, HarnessError> {
    ExperimentConfig::load(path)
}
