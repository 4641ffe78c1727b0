//! The optimizer plug-in contract and the shared evaluation loop.
//!
//! Every algorithm, ETO included, is driven by [`run_optimizer`]: the loop
//! owns the population, the random stream, boundary handling and fitness
//! evaluation, while the plug-in only proposes new positions.
//!
//! Per iteration the random stream is consumed in this order:
//! `begin_iteration`, then for each agent in index order its `propose` draws
//! followed by its boundary-policy draws. Evaluation never draws.

use rand::RngCore;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundary::{apply_boundary, BoundaryPolicy};
use crate::population::{evaluate, init_population, sanitize_fitness, Population};
use crate::rng::run_rng;
use crate::space::SearchSpace;

/// Function to be minimized.
pub trait Objective: Sync {
    fn value(&self, x: &[f64]) -> f64;
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn value(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{0}")]
pub struct OptimizerError(pub String);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RunError {
    #[error("invalid run settings: {0}")]
    InvalidSettings(String),
    #[error("optimizer '{name}' failed at iteration {t}: {source}")]
    Optimizer {
        name: String,
        t: usize,
        source: OptimizerError,
    },
    #[error("optimizer '{name}' produced a malformed proposal at iteration {t}, agent {agent}: {reason}")]
    Malformed {
        name: String,
        t: usize,
        agent: usize,
        reason: String,
    },
}

/// When the best-so-far record becomes visible to later agents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BestUpdate {
    /// All agents of iteration `t` see the population as it was at the start
    /// of the iteration; results are committed together at the end.
    #[default]
    Synchronous,
    /// Each agent is evaluated and committed before the next one proposes.
    PerAgent,
}

/// A population-based search algorithm.
pub trait Optimizer: Send {
    fn name(&self) -> &str;

    /// Called once before initialization.
    fn start(&mut self, _space: &SearchSpace, _n_agents: usize, _budget: usize) -> Result<(), OptimizerError> {
        Ok(())
    }

    /// Per-iteration work (shared draws, schedules). `t` is 1-based.
    fn begin_iteration(
        &mut self,
        _t: usize,
        _pop: &Population,
        _space: &SearchSpace,
        _rng: &mut dyn RngCore,
    ) -> Result<(), OptimizerError> {
        Ok(())
    }

    /// New position for `agent`.
    fn propose(
        &mut self,
        t: usize,
        agent: usize,
        pop: &Population,
        space: &SearchSpace,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<f64>, OptimizerError>;

    fn end_iteration(&mut self, _t: usize, _pop: &Population) {}
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    pub n_agents: usize,
    pub budget: usize,
    pub seed: u64,
    pub boundary: BoundaryPolicy,
    pub best_update: BestUpdate,
}

impl RunSettings {
    pub fn new(n_agents: usize, budget: usize, seed: u64) -> Self {
        Self {
            n_agents,
            budget,
            seed,
            boundary: BoundaryPolicy::Clamp,
            best_update: BestUpdate::Synchronous,
        }
    }

    pub fn with_boundary(mut self, boundary: BoundaryPolicy) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn with_best_update(mut self, best_update: BestUpdate) -> Self {
        self.best_update = best_update;
        self
    }
}

/// Outcome of one run: the best-so-far value after each iteration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub curve: Vec<f64>,
    pub final_fitness: f64,
    pub seed: u64,
    pub evaluations: u64,
}

/// Run `optimizer` on `objective` for `settings.budget` iterations.
///
/// Deterministic in `settings.seed`. Evaluations are
/// `n_agents * (budget + 1)` since every agent is evaluated once at
/// initialization and once per iteration.
pub fn run_optimizer(
    optimizer: &mut dyn Optimizer,
    objective: &dyn Objective,
    space: &SearchSpace,
    settings: &RunSettings,
) -> Result<RunRecord, RunError> {
    if settings.budget == 0 {
        return Err(RunError::InvalidSettings("iteration budget must be at least 1".into()));
    }
    if settings.n_agents == 0 {
        return Err(RunError::InvalidSettings("population needs at least one agent".into()));
    }
    let mut rng = run_rng(settings.seed);
    optimizer
        .start(space, settings.n_agents, settings.budget)
        .map_err(|source| RunError::Optimizer {
            name: optimizer.name().to_string(),
            t: 0,
            source,
        })?;

    let mut pop = init_population(space, settings.n_agents, &mut rng);
    let mut evaluations = evaluate(objective, &mut pop) as u64;
    let mut curve = Vec::with_capacity(settings.budget);
    for t in 1..=settings.budget {
        evaluations += iterate(
            optimizer,
            objective,
            space,
            &mut pop,
            t,
            settings.boundary,
            settings.best_update,
            &mut rng,
        )? as u64;
        curve.push(pop.best_fitness);
    }
    Ok(RunRecord {
        final_fitness: pop.best_fitness,
        curve,
        seed: settings.seed,
        evaluations,
    })
}

/// One iteration of the shared loop. Returns the number of evaluations.
#[allow(clippy::too_many_arguments)]
pub fn iterate(
    optimizer: &mut dyn Optimizer,
    objective: &dyn Objective,
    space: &SearchSpace,
    pop: &mut Population,
    t: usize,
    boundary: BoundaryPolicy,
    best_update: BestUpdate,
    rng: &mut dyn RngCore,
) -> Result<usize, RunError> {
    let fail = |optimizer: &dyn Optimizer, source| RunError::Optimizer {
        name: optimizer.name().to_string(),
        t,
        source,
    };
    optimizer
        .begin_iteration(t, pop, space, rng)
        .map_err(|e| fail(optimizer, e))?;

    let n = pop.n_agents();
    match best_update {
        BestUpdate::Synchronous => {
            let mut proposals = Vec::with_capacity(n);
            for agent in 0..n {
                let x = next_position(optimizer, t, agent, pop, space, boundary, rng)?;
                proposals.push(x);
            }
            for (agent, x) in proposals.into_iter().enumerate() {
                let f = sanitize_fitness(objective.value(&x));
                pop.commit(agent, x, f);
            }
        }
        BestUpdate::PerAgent => {
            for agent in 0..n {
                let x = next_position(optimizer, t, agent, pop, space, boundary, rng)?;
                let f = sanitize_fitness(objective.value(&x));
                pop.commit(agent, x, f);
            }
        }
    }
    optimizer.end_iteration(t, pop);
    Ok(n)
}

fn next_position(
    optimizer: &mut dyn Optimizer,
    t: usize,
    agent: usize,
    pop: &Population,
    space: &SearchSpace,
    boundary: BoundaryPolicy,
    rng: &mut dyn RngCore,
) -> Result<Vec<f64>, RunError> {
    let mut x = optimizer
        .propose(t, agent, pop, space, rng)
        .map_err(|source| RunError::Optimizer {
            name: optimizer.name().to_string(),
            t,
            source,
        })?;
    if x.len() != space.dim() {
        return Err(RunError::Malformed {
            name: optimizer.name().to_string(),
            t,
            agent,
            reason: format!("expected {} coordinates, got {}", space.dim(), x.len()),
        });
    }
    apply_boundary(&mut x, space, boundary, rng);
    if let Some(j) = x.iter().position(|v| !v.is_finite()) {
        return Err(RunError::Malformed {
            name: optimizer.name().to_string(),
            t,
            agent,
            reason: format!("coordinate {j} is {} after boundary handling", x[j]),
        });
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::RandomSearch;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    struct Broken {
        len: usize,
        value: f64,
    }

    impl Optimizer for Broken {
        fn name(&self) -> &str {
            "broken"
        }

        fn propose(
            &mut self,
            _t: usize,
            _agent: usize,
            _pop: &Population,
            _space: &SearchSpace,
            _rng: &mut dyn RngCore,
        ) -> Result<Vec<f64>, OptimizerError> {
            Ok(vec![self.value; self.len])
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let space = SearchSpace::new(2, -5.0, 10.0).unwrap();
        let settings = RunSettings::new(30, 50, 99);
        let a = run_optimizer(&mut RandomSearch, &sphere, &space, &settings).unwrap();
        let b = run_optimizer(&mut RandomSearch, &sphere, &space, &settings).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.curve.len(), 50);
        assert_eq!(a.final_fitness, *a.curve.last().unwrap());
        assert_eq!(a.evaluations, 30 * 51);
    }

    #[test]
    fn single_iteration_budget() {
        let space = SearchSpace::new(2, -1.0, 1.0).unwrap();
        let r = run_optimizer(&mut RandomSearch, &sphere, &space, &RunSettings::new(4, 1, 1)).unwrap();
        assert_eq!(r.curve.len(), 1);
    }

    #[test]
    fn zero_budget_rejected() {
        let space = SearchSpace::new(2, -1.0, 1.0).unwrap();
        let err = run_optimizer(&mut RandomSearch, &sphere, &space, &RunSettings::new(4, 0, 1));
        assert!(matches!(err, Err(RunError::InvalidSettings(_))));
    }

    #[test]
    fn wrong_shape_aborts() {
        let space = SearchSpace::new(3, -1.0, 1.0).unwrap();
        let err = run_optimizer(
            &mut Broken { len: 2, value: 0.0 },
            &sphere,
            &space,
            &RunSettings::new(4, 5, 1),
        )
        .unwrap_err();
        assert!(matches!(err, RunError::Malformed { t: 1, agent: 0, .. }), "{err}");
    }

    #[test]
    fn non_finite_proposal_aborts_without_correction() {
        let space = SearchSpace::new(1, -1.0, 1.0).unwrap();
        let settings = RunSettings::new(2, 3, 1).with_boundary(BoundaryPolicy::None);
        let err = run_optimizer(&mut Broken { len: 1, value: f64::NAN }, &sphere, &space, &settings);
        assert!(matches!(err, Err(RunError::Malformed { .. })));
        // clamping cannot repair NaN either
        let settings = settings.with_boundary(BoundaryPolicy::Clamp);
        let err = run_optimizer(&mut Broken { len: 1, value: f64::NAN }, &sphere, &space, &settings);
        assert!(matches!(err, Err(RunError::Malformed { .. })));
    }

    #[test]
    fn infinite_proposal_is_repaired_by_clamp() {
        let space = SearchSpace::new(1, -1.0, 1.0).unwrap();
        let settings = RunSettings::new(2, 3, 1);
        let r = run_optimizer(&mut Broken { len: 1, value: f64::INFINITY }, &sphere, &space, &settings).unwrap();
        assert!(r.final_fitness <= 1.0);
    }

    #[test]
    fn random_search_finds_the_1d_optimum() {
        // 15030 uniform draws on [-5, 10]; P(|x| < 0.1) = 0.2/15 per draw
        let space = SearchSpace::new(1, -5.0, 10.0).unwrap();
        let hits = (0..100u64)
            .filter(|&seed| {
                let r = run_optimizer(&mut RandomSearch, &sphere, &space, &RunSettings::new(30, 500, seed)).unwrap();
                r.final_fitness < 0.01
            })
            .count();
        assert!(hits >= 90, "{hits}");
    }

    #[test]
    fn per_agent_mode_is_also_deterministic() {
        let space = SearchSpace::new(2, -5.0, 10.0).unwrap();
        let settings = RunSettings::new(10, 20, 5).with_best_update(BestUpdate::PerAgent);
        let a = run_optimizer(&mut RandomSearch, &sphere, &space, &settings).unwrap();
        let b = run_optimizer(&mut RandomSearch, &sphere, &space, &settings).unwrap();
        assert_eq!(a, b);
    }
}
