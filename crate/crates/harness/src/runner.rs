//! Run-matrix execution with append-only, resumable persistence.
//!
//! Runs execute on a rayon pool; a single writer thread appends each finished
//! run to `curves.jsonl` and then `results.csv`, flushing after every run. A
//! result row therefore always has a curve. When the matrix is done both files
//! are rewritten in plan order, so the final bytes do not depend on the worker
//! count or on interruptions.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::Instant;

use etoscope_core::benchmarks::{build_suite, Suite};
use etoscope_core::eto::EtoParams;
use etoscope_core::{run_optimizer, RunSettings, SearchSpace};
use etoscope_diagnostics::flaw_report;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{AlgorithmKind, ExperimentConfig};
use crate::seeding::{run_seed, suite_dim_seed};
use crate::HarnessError;

pub const RESULTS_FILE: &str = "results.csv";
pub const CURVES_FILE: &str = "curves.jsonl";
pub const FAILURES_FILE: &str = "failures.csv";
pub const TIMINGS_FILE: &str = "timings.csv";
pub const META_FILE: &str = "experiment.json";
pub const FLAWS_FILE: &str = "flaws.json";
pub const RESULTS_HEADER: &str = "algorithm,function,dim,run,seed,final_fitness";
const FAILURES_HEADER: &str = "algorithm,function,dim,run,seed,reason";
const TIMINGS_HEADER: &str = "algorithm,function,dim,run,wall_ms";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RunKey {
    pub algorithm: String,
    pub function: String,
    pub dim: usize,
    pub run: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub algorithm: String,
    pub function: String,
    pub dim: usize,
    pub run: usize,
    pub seed: u64,
    pub final_fitness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub algorithm: String,
    pub function: String,
    pub dim: usize,
    pub run: usize,
    pub seed: u64,
    /// Best-so-far fitness after iterations `1..=budget`.
    pub curve: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRow {
    pub algorithm: String,
    pub function: String,
    pub dim: usize,
    pub run: usize,
    pub seed: u64,
    pub reason: String,
}

macro_rules! keyed {
    ($t:ty) => {
        impl $t {
            pub fn key(&self) -> RunKey {
                RunKey { algorithm: self.algorithm.clone(), function: self.function.clone(), dim: self.dim, run: self.run }
            }
        }
    };
}
keyed!(ResultRow);
keyed!(CurveRecord);
keyed!(FailureRow);

/// Everything persisted for an experiment directory.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentResult {
    /// Algorithm labels in declared order.
    pub algorithms: Vec<String>,
    pub rows: Vec<ResultRow>,
    pub curves: Vec<CurveRecord>,
    pub failures: Vec<FailureRow>,
}

impl ExperimentResult {
    /// Curves of one (algorithm, function, dim) cell ordered by run.
    pub fn curves_for(&self, algorithm: &str, function: &str, dim: usize) -> Vec<&CurveRecord> {
        let mut v: Vec<&CurveRecord> = self
            .curves
            .iter()
            .filter(|c| c.algorithm == algorithm && c.function == function && c.dim == dim)
            .collect();
        v.sort_by_key(|c| c.run);
        v
    }

    /// `(suite, dim)` groups in order of first appearance.
    pub fn groups(&self) -> Vec<(String, usize)> {
        let mut seen = Vec::new();
        for r in &self.rows {
            let g = (suite_of(&r.function).to_string(), r.dim);
            if !seen.contains(&g) {
                seen.push(g);
            }
        }
        seen
    }

    /// `(algorithm, function, dim)` cells that have curves, in order of first appearance.
    pub fn curve_cells(&self) -> Vec<(String, String, usize)> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for c in &self.curves {
            let cell = (c.algorithm.clone(), c.function.clone(), c.dim);
            if seen.insert(cell.clone()) {
                out.push(cell);
            }
        }
        out
    }
}

/// Suite part of a `"{suite}.{function}"` id.
pub fn suite_of(function_id: &str) -> &str {
    function_id.split_once('.').map_or(function_id, |(s, _)| s)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExperimentMeta {
    pub algorithms: Vec<String>,
    pub master_seed: u64,
    pub n_runs: usize,
    pub budget: usize,
    pub n_agents: usize,
    pub suites: Vec<MetaSuite>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MetaSuite {
    pub name: String,
    pub kind: String,
    pub dims: Vec<usize>,
    pub n_functions: usize,
    pub seed: u64,
    pub budget: usize,
    pub n_agents: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub planned: usize,
    pub skipped: usize,
    pub executed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone)]
struct Task {
    order: usize,
    algorithm: usize,
    instance: usize,
    function: usize,
    seed: u64,
    key: RunKey,
}

struct Instance {
    suite: Suite,
    budget: usize,
    n_agents: usize,
}

enum Outcome {
    Done(ResultRow, CurveRecord, u128),
    Failed(FailureRow),
}

fn function_id(suite: &str, name: &str) -> String {
    format!("{suite}.{name}")
}

fn build_instances(config: &ExperimentConfig) -> Result<Vec<Instance>, HarnessError> {
    let mut out = Vec::new();
    for s in &config.suites {
        for &dim in &s.dims {
            let space = SearchSpace::new(dim, s.lower, s.upper).map_err(|e| HarnessError::Config(vec![e.to_string()]))?;
            let suite = build_suite(&s.name, s.kind, s.n_functions, space, suite_dim_seed(s.seed, dim))?;
            out.push(Instance { suite, budget: s.budget, n_agents: s.n_agents });
        }
    }
    Ok(out)
}

fn plan(config: &ExperimentConfig, instances: &[Instance]) -> Vec<Task> {
    let mut tasks = Vec::new();
    for (a, alg) in config.algorithms.iter().enumerate() {
        let mut global_fn = 0;
        for (i, inst) in instances.iter().enumerate() {
            for (j, (name, _)) in inst.suite.functions.iter().enumerate() {
                for run in 0..config.n_runs {
                    tasks.push(Task {
                        order: tasks.len(),
                        algorithm: a,
                        instance: i,
                        function: j,
                        seed: run_seed(config.master_seed, a, global_fn, run),
                        key: RunKey {
                            algorithm: alg.label.clone(),
                            function: function_id(&inst.suite.name, name),
                            dim: inst.suite.dim(),
                            run,
                        },
                    });
                }
                global_fn += 1;
            }
        }
    }
    tasks
}

fn execute(config: &ExperimentConfig, instances: &[Instance], task: &Task) -> Outcome {
    let alg = &config.algorithms[task.algorithm];
    let inst = &instances[task.instance];
    let (_, spec) = &inst.suite.functions[task.function];
    let settings = RunSettings::new(inst.n_agents, inst.budget, task.seed).with_boundary(config.boundary);
    let mut optimizer = alg.instantiate();
    let started = Instant::now();
    let k = &task.key;
    let fail = |reason: String| {
        Outcome::Failed(FailureRow {
            algorithm: k.algorithm.clone(),
            function: k.function.clone(),
            dim: k.dim,
            run: k.run,
            seed: task.seed,
            reason,
        })
    };
    match run_optimizer(optimizer.as_mut(), spec, &inst.suite.space, &settings) {
        Ok(rec) if rec.curve.iter().all(|v| v.is_finite()) => {
            let wall = started.elapsed().as_millis();
            Outcome::Done(
                ResultRow {
                    algorithm: k.algorithm.clone(),
                    function: k.function.clone(),
                    dim: k.dim,
                    run: k.run,
                    seed: task.seed,
                    final_fitness: rec.final_fitness,
                },
                CurveRecord {
                    algorithm: k.algorithm.clone(),
                    function: k.function.clone(),
                    dim: k.dim,
                    run: k.run,
                    seed: task.seed,
                    curve: rec.curve,
                },
                wall,
            )
        }
        Ok(_) => fail("best-so-far fitness is not finite".into()),
        Err(e) => fail(e.to_string()),
    }
}

/// Drop a trailing line without its newline (the remains of a crash).
fn repair_tail(path: &Path) -> Result<(), HarnessError> {
    if !path.exists() {
        return Ok(());
    }
    let bytes = fs::read(path).map_err(|e| HarnessError::io(path, e))?;
    if bytes.last().is_some_and(|&b| b != b'\n') {
        let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
        let f = OpenOptions::new().write(true).open(path).map_err(|e| HarnessError::io(path, e))?;
        f.set_len(keep as u64).map_err(|e| HarnessError::io(path, e))?;
    }
    Ok(())
}

fn read_results(path: &Path) -> Result<Vec<ResultRow>, HarnessError> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if text.lines().next() != Some(RESULTS_HEADER) {
        return Err(HarnessError::InvalidResults(format!("{} does not start with '{RESULTS_HEADER}'", path.display())));
    }
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize()
        .collect::<Result<Vec<ResultRow>, _>>()
        .map_err(|e| HarnessError::InvalidResults(format!("{}: {e}", path.display())))
}

fn read_curves(path: &Path) -> Result<Vec<CurveRecord>, HarnessError> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let file = File::open(path).map_err(|e| HarnessError::io(path, e))?;
    BufReader::new(file)
        .lines()
        .enumerate()
        .filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|(i, line)| {
            let line = line.map_err(|e| HarnessError::io(path, e))?;
            serde_json::from_str(&line)
                .map_err(|e| HarnessError::InvalidResults(format!("{} line {}: {e}", path.display(), i + 1)))
        })
        .collect()
}

fn read_failures(path: &Path) -> Result<Vec<FailureRow>, HarnessError> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let mut reader = csv::Reader::from_path(path).map_err(|e| HarnessError::InvalidResults(e.to_string()))?;
    reader
        .deserialize()
        .collect::<Result<Vec<FailureRow>, _>>()
        .map_err(|e| HarnessError::InvalidResults(format!("{}: {e}", path.display())))
}

fn csv_line<T: Serialize>(row: &T) -> Result<String, HarnessError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.serialize(row).map_err(|e| HarnessError::InvalidResults(e.to_string()))?;
    let bytes = w.into_inner().map_err(|e| HarnessError::InvalidResults(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn write_atomic(path: &Path, content: &str) -> Result<(), HarnessError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, content).map_err(|e| HarnessError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| HarnessError::io(path, e))
}

/// Rewrite results and curves so both hold exactly the runs present in both,
/// once each, in plan order (unplanned runs last, by key).
fn canonicalize(dir: &Path, order: &HashMap<RunKey, usize>) -> Result<(Vec<ResultRow>, Vec<CurveRecord>), HarnessError> {
    let results_path = dir.join(RESULTS_FILE);
    let curves_path = dir.join(CURVES_FILE);
    repair_tail(&results_path)?;
    repair_tail(&curves_path)?;
    let mut curves: BTreeMap<RunKey, CurveRecord> = BTreeMap::new();
    for c in read_curves(&curves_path)? {
        curves.entry(c.key()).or_insert(c);
    }
    let mut rows: BTreeMap<RunKey, ResultRow> = BTreeMap::new();
    for r in read_results(&results_path)? {
        if curves.contains_key(&r.key()) {
            rows.entry(r.key()).or_insert(r);
        }
    }
    curves.retain(|k, _| rows.contains_key(k));

    let rank = |k: &RunKey| order.get(k).copied().unwrap_or(usize::MAX);
    let mut rows: Vec<ResultRow> = rows.into_values().collect();
    rows.sort_by(|a, b| rank(&a.key()).cmp(&rank(&b.key())).then_with(|| a.key().cmp(&b.key())));
    let mut curves: Vec<CurveRecord> = curves.into_values().collect();
    curves.sort_by(|a, b| rank(&a.key()).cmp(&rank(&b.key())).then_with(|| a.key().cmp(&b.key())));

    let mut text = format!("{RESULTS_HEADER}\n");
    for r in &rows {
        text.push_str(&csv_line(r)?);
    }
    write_atomic(&results_path, &text)?;
    let mut text = String::new();
    for c in &curves {
        text.push_str(&serde_json::to_string(c).map_err(|e| HarnessError::InvalidResults(e.to_string()))?);
        text.push('\n');
    }
    write_atomic(&curves_path, &text)?;
    Ok((rows, curves))
}

fn open_append(path: &Path, header: Option<&str>) -> Result<BufWriter<File>, HarnessError> {
    let fresh = !path.exists() || fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = OpenOptions::new().create(true).append(true).open(path).map_err(|e| HarnessError::io(path, e))?;
    let mut w = BufWriter::new(file);
    if let (true, Some(h)) = (fresh, header) {
        writeln!(w, "{h}").map_err(|e| HarnessError::io(path, e))?;
    }
    Ok(w)
}

fn write_meta(config: &ExperimentConfig, dir: &Path) -> Result<(), HarnessError> {
    let meta = ExperimentMeta {
        algorithms: config.algorithm_labels(),
        master_seed: config.master_seed,
        n_runs: config.n_runs,
        budget: config.budget,
        n_agents: config.n_agents,
        suites: config
            .suites
            .iter()
            .map(|s| MetaSuite {
                name: s.name.clone(),
                kind: s.kind.to_string(),
                dims: s.dims.clone(),
                n_functions: s.n_functions,
                seed: s.seed,
                budget: s.budget,
                n_agents: s.n_agents,
            })
            .collect(),
    };
    let text = serde_json::to_string_pretty(&meta).map_err(|e| HarnessError::InvalidResults(e.to_string()))?;
    write_atomic(&dir.join(META_FILE), &(text + "\n"))
}

fn write_flaws(config: &ExperimentConfig, dir: &Path) -> Result<(), HarnessError> {
    let Some(eto) = config.algorithms.iter().find_map(|a| match &a.kind {
        AlgorithmKind::Eto(c) => Some(c.params),
        _ => None,
    }) else {
        return Ok(());
    };
    let report = flaw_report(&EtoParams { budget: config.budget, ..eto });
    let text = serde_json::to_string_pretty(&report).map_err(|e| HarnessError::InvalidResults(e.to_string()))?;
    write_atomic(&dir.join(FLAWS_FILE), &(text + "\n"))
}

/// Execute every run of `config` not already persisted in `out_dir`.
pub fn run_experiment(
    config: &ExperimentConfig,
    out_dir: &Path,
    workers: usize,
) -> Result<(ExperimentResult, RunSummary), HarnessError> {
    if workers == 0 {
        return Err(HarnessError::Config(vec!["workers must be at least 1".into()]));
    }
    fs::create_dir_all(out_dir).map_err(|e| HarnessError::io(out_dir, e))?;
    let instances = build_instances(config)?;
    let manifests = out_dir.join("manifests");
    fs::create_dir_all(&manifests).map_err(|e| HarnessError::io(&manifests, e))?;
    for inst in &instances {
        let path = manifests.join(format!("{}_{}d.json", inst.suite.name, inst.suite.dim()));
        inst.suite.write_manifest(&path)?;
    }
    write_meta(config, out_dir)?;
    write_flaws(config, out_dir)?;

    let tasks = plan(config, &instances);
    let order: HashMap<RunKey, usize> = tasks.iter().map(|t| (t.key.clone(), t.order)).collect();
    let (done_rows, _) = canonicalize(out_dir, &order)?;
    let done: HashSet<RunKey> = done_rows.iter().map(ResultRow::key).collect();
    let pending: Vec<&Task> = tasks.iter().filter(|t| !done.contains(&t.key)).collect();

    let failures_path = out_dir.join(FAILURES_FILE);
    let _ = fs::remove_file(&failures_path);
    let timings_path = out_dir.join(TIMINGS_FILE);
    repair_tail(&timings_path)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| HarnessError::Config(vec![format!("cannot start {workers} workers: {e}")]))?;
    let (tx, rx) = mpsc::channel::<Outcome>();
    let results_path = out_dir.join(RESULTS_FILE);
    let curves_path = out_dir.join(CURVES_FILE);

    let (executed, failed) = std::thread::scope(|scope| -> Result<(usize, usize), HarnessError> {
        let (results_path, curves_path, timings_path, failures_path) =
            (&results_path, &curves_path, &timings_path, &failures_path);
        let writer = scope.spawn(move || -> Result<(usize, usize), HarnessError> {
            let mut results = open_append(results_path, Some(RESULTS_HEADER))?;
            let mut curves = open_append(curves_path, None)?;
            let mut timings = open_append(timings_path, Some(TIMINGS_HEADER))?;
            let mut failures: Option<BufWriter<File>> = None;
            let (mut ok, mut bad) = (0, 0);
            for outcome in rx {
                match outcome {
                    Outcome::Done(row, curve, wall) => {
                        let line = serde_json::to_string(&curve).map_err(|e| HarnessError::InvalidResults(e.to_string()))?;
                        writeln!(curves, "{line}").and_then(|_| curves.flush()).map_err(|e| HarnessError::io(curves_path, e))?;
                        results
                            .write_all(csv_line(&row)?.as_bytes())
                            .and_then(|_| results.flush())
                            .map_err(|e| HarnessError::io(results_path, e))?;
                        writeln!(timings, "{},{},{},{},{wall}", row.algorithm, row.function, row.dim, row.run)
                            .and_then(|_| timings.flush())
                            .map_err(|e| HarnessError::io(timings_path, e))?;
                        ok += 1;
                    }
                    Outcome::Failed(f) => {
                        if failures.is_none() {
                            failures = Some(open_append(failures_path, Some(FAILURES_HEADER))?);
                        }
                        let w = failures.as_mut().expect("opened above");
                        w.write_all(csv_line(&f)?.as_bytes())
                            .and_then(|_| w.flush())
                            .map_err(|e| HarnessError::io(failures_path, e))?;
                        bad += 1;
                    }
                }
            }
            Ok((ok, bad))
        });
        pool.install(|| {
            pending.par_iter().for_each_with(tx, |tx, task| {
                // a closed channel means the writer failed; its error is reported below
                let _ = tx.send(execute(config, &instances, task));
            })
        });
        writer.join().expect("writer thread panicked")
    })?;

    let (rows, curves) = canonicalize(out_dir, &order)?;
    let mut failures = read_failures(&failures_path)?;
    failures.sort_by_key(|f| order.get(&f.key()).copied().unwrap_or(usize::MAX));
    if !failures.is_empty() {
        let mut text = format!("{FAILURES_HEADER}\n");
        for f in &failures {
            text.push_str(&csv_line(f)?);
        }
        write_atomic(&failures_path, &text)?;
    }
    let summary = RunSummary { planned: tasks.len(), skipped: tasks.len() - pending.len(), executed, failed };
    let result = ExperimentResult { algorithms: config.algorithm_labels(), rows, curves, failures };
    Ok((result, summary))
}

/// Load a finished (or partial) experiment directory.
pub fn load_results(dir: &Path) -> Result<ExperimentResult, HarnessError> {
    let results_path = dir.join(RESULTS_FILE);
    if !results_path.exists() {
        return Err(HarnessError::InvalidResults(format!("no {RESULTS_FILE} in {}", dir.display())));
    }
    let rows = read_results(&results_path)?;
    let curves = read_curves(&dir.join(CURVES_FILE))?;
    let failures = read_failures(&dir.join(FAILURES_FILE))?;
    let meta_path = dir.join(META_FILE);
    let algorithms = if meta_path.exists() {
        let text = fs::read_to_string(&meta_path).map_err(|e| HarnessError::io(&meta_path, e))?;
        let meta: ExperimentMeta =
            serde_json::from_str(&text).map_err(|e| HarnessError::InvalidResults(format!("{META_FILE}: {e}")))?;
        meta.algorithms
    } else {
        let mut seen = Vec::new();
        for r in &rows {
            if !seen.contains(&r.algorithm) {
                seen.push(r.algorithm.clone());
            }
        }
        seen
    };
    Ok(ExperimentResult { algorithms, rows, curves, failures })
}

pub fn results_path(dir: &Path) -> PathBuf {
    dir.join(RESULTS_FILE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n_runs: usize, budget: usize) -> ExperimentConfig {
        ExperimentConfig::from_toml_str(&format!(
            r#"
            master_seed = 9
            n_runs = {n_runs}
            n_agents = 6
            budget = {budget}
            [[suites]]
            name = "mini"
            kind = "shifted"
            n_functions = 3
            dims = [2]
            [[algorithms]]
            name = "ETO"
            [[algorithms]]
            name = "random_search"
            "#
        ))
        .unwrap()
    }

    #[test]
    fn cardinality_and_idempotence() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config(5, 20);
        let (res, summary) = run_experiment(&cfg, dir.path(), 3).unwrap();
        assert_eq!(res.rows.len(), 2 * 3 * 5);
        assert_eq!(summary, RunSummary { planned: 30, skipped: 0, executed: 30, failed: 0 });
        let before = fs::read(dir.path().join(RESULTS_FILE)).unwrap();
        let (again, summary) = run_experiment(&cfg, dir.path(), 2).unwrap();
        assert_eq!(summary.executed, 0);
        assert_eq!(summary.skipped, 30);
        assert_eq!(again.rows, res.rows);
        assert_eq!(fs::read(dir.path().join(RESULTS_FILE)).unwrap(), before);
        let text = String::from_utf8(before).unwrap();
        assert_eq!(text.lines().next(), Some(RESULTS_HEADER));
        assert!(text.lines().nth(1).unwrap().starts_with("ETO,mini.F01_sphere,2,0,"));
    }

    #[test]
    fn partial_lines_are_dropped_on_resume() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = config(2, 10);
        run_experiment(&cfg, dir.path(), 1).unwrap();
        let full = fs::read(dir.path().join(RESULTS_FILE)).unwrap();
        // cut the last row in half and lose two curves
        let results = dir.path().join(RESULTS_FILE);
        fs::write(&results, &full[..full.len() - 7]).unwrap();
        let curves_path = dir.path().join(CURVES_FILE);
        let curves = fs::read_to_string(&curves_path).unwrap();
        let kept: Vec<&str> = curves.lines().collect();
        fs::write(&curves_path, kept[..kept.len() - 2].join("\n") + "\n{\"algorithm\":").unwrap();
        let (_, summary) = run_experiment(&cfg, dir.path(), 2).unwrap();
        assert_eq!(summary.executed, 2);
        assert_eq!(fs::read(&results).unwrap(), full);
        assert_eq!(fs::read_to_string(&curves_path).unwrap(), curves);
    }

    #[test]
    fn zero_workers_rejected() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(run_experiment(&config(1, 5), dir.path(), 0), Err(HarnessError::Config(_))));
    }
}
