use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use super::coefficients::{
    coeff_alpha1, coeff_alpha2, coeff_alpha3, contracted_bounds_with, mode_coefficient, oscillation_pair,
    phase_boundary, GammaChoice,
};
use super::rules::{
    select_rule, update_rule_1, update_rule_2_with, update_rule_3_with, update_rule_4_with, DrawGranularity, Rule,
};
use super::schedule::{
    trigger_schedule, trigger_schedule_saturating, ScheduleEvaluation, ScheduleIndexing, TriggerSchedule,
};
use super::trace::{ControlTrace, TraceEntry};
use super::EtoParams;
use crate::boundary::BoundaryPolicy;
use crate::optimizer::{iterate, BestUpdate, Objective, Optimizer, OptimizerError, RunError};
use crate::population::Population;
use crate::space::SearchSpace;

/// Algorithm constants plus the switches used for counterfactual runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EtoConfig {
    pub params: EtoParams,
    pub granularity: DrawGranularity,
    /// Project each triggered agent into its contracted bounds. Off by
    /// default: the bounds are computed and recorded only.
    pub enforce_contraction: bool,
    pub schedule_evaluation: ScheduleEvaluation,
    pub schedule_indexing: ScheduleIndexing,
    pub gamma: GammaChoice,
    /// Number of schedule entries materialized in the global indexing.
    pub schedule_depth: usize,
}

impl Default for EtoConfig {
    fn default() -> Self {
        Self {
            params: EtoParams::default(),
            granularity: DrawGranularity::Scalar,
            enforce_contraction: false,
            schedule_evaluation: ScheduleEvaluation::Fixed,
            schedule_indexing: ScheduleIndexing::Global,
            gamma: GammaChoice::Formula,
            schedule_depth: 8,
        }
    }
}

#[derive(Debug, Clone)]
struct IterationState {
    t: usize,
    d1: f64,
    d2: f64,
    mu: f64,
    gamma: f64,
    rule: Rule,
    trigger_fired: bool,
    alpha_sum: [f64; 3],
    alpha_count: [usize; 3],
}

impl IterationState {
    fn record_alpha(&mut self, slot: usize, value: f64) {
        self.alpha_sum[slot] += value;
        self.alpha_count[slot] += 1;
    }

    fn alpha_mean(&self, slot: usize) -> Option<f64> {
        (self.alpha_count[slot] > 0).then(|| self.alpha_sum[slot] / self.alpha_count[slot] as f64)
    }
}

/// ETO as an [`Optimizer`] plug-in, recording a [`ControlTrace`].
#[derive(Debug, Clone)]
pub struct EtoOptimizer {
    config: EtoConfig,
    params: EtoParams,
    n_agents: usize,
    phase_boundary: usize,
    schedule: TriggerSchedule,
    trace: ControlTrace,
    current: Option<IterationState>,
}

impl Default for EtoOptimizer {
    fn default() -> Self {
        Self::new(EtoConfig::default())
    }
}

fn uniform(rng: &mut dyn RngCore) -> f64 {
    rng.random::<f64>()
}

fn multiplier(rng: &mut dyn RngCore, granularity: DrawGranularity, dim: usize) -> Vec<f64> {
    match granularity {
        DrawGranularity::Scalar => vec![uniform(rng)],
        DrawGranularity::PerCoordinate => (0..dim).map(|_| uniform(rng)).collect(),
    }
}

impl EtoOptimizer {
    pub fn new(config: EtoConfig) -> Self {
        Self {
            params: config.params,
            config,
            n_agents: 0,
            phase_boundary: phase_boundary(config.params.budget),
            schedule: TriggerSchedule {
                epsilon: Vec::new(),
                horizon: config.params.budget,
                evaluated_at: 1,
                truncated_at: None,
            },
            trace: ControlTrace::default(),
            current: None,
        }
    }

    pub fn config(&self) -> &EtoConfig {
        &self.config
    }

    pub fn trace(&self) -> &ControlTrace {
        &self.trace
    }

    pub fn into_trace(self) -> ControlTrace {
        self.trace
    }

    pub fn schedule(&self) -> &TriggerSchedule {
        &self.schedule
    }

    pub fn phase_boundary(&self) -> usize {
        self.phase_boundary
    }

    fn schedule_len(&self) -> usize {
        match self.config.schedule_indexing {
            ScheduleIndexing::Global => self.config.schedule_depth.max(2),
            ScheduleIndexing::PerAgent => self.config.schedule_depth.max(self.n_agents),
        }
    }

    fn materialize(&mut self, t: usize) -> Result<(), OptimizerError> {
        let len = self.schedule_len();
        self.schedule = match (self.config.schedule_evaluation, self.config.schedule_indexing) {
            (ScheduleEvaluation::Fixed, ScheduleIndexing::Global) => {
                trigger_schedule(&self.params, len).map_err(|e| OptimizerError(e.to_string()))?
            }
            _ => trigger_schedule_saturating(&self.params, len, t),
        };
        Ok(())
    }
}

impl Optimizer for EtoOptimizer {
    fn name(&self) -> &str {
        "ETO"
    }

    fn start(&mut self, _space: &SearchSpace, n_agents: usize, budget: usize) -> Result<(), OptimizerError> {
        self.params = self.config.params.with_budget(budget);
        self.params.validate().map_err(|e| OptimizerError(e.to_string()))?;
        self.n_agents = n_agents;
        self.phase_boundary = phase_boundary(budget);
        self.trace = ControlTrace::default();
        self.current = None;
        self.materialize(1)
    }

    fn begin_iteration(
        &mut self,
        t: usize,
        _pop: &Population,
        _space: &SearchSpace,
        rng: &mut dyn RngCore,
    ) -> Result<(), OptimizerError> {
        let horizon = self.params.budget;
        if self.config.schedule_evaluation == ScheduleEvaluation::Dynamic {
            self.materialize(t)?;
        }
        let (d1, d2) = oscillation_pair(t, horizon);
        let r1 = uniform(rng);
        let mu = mode_coefficient(t, horizon, r1).map_err(|e| OptimizerError(e.to_string()))?;
        let rule = select_rule(t, self.phase_boundary, mu, self.params.switch_threshold);
        self.current = Some(IterationState {
            t,
            d1,
            d2,
            mu,
            gamma: self.config.gamma.value(t, horizon),
            rule,
            trigger_fired: false,
            alpha_sum: [0.0; 3],
            alpha_count: [0; 3],
        });
        Ok(())
    }

    fn propose(
        &mut self,
        t: usize,
        agent: usize,
        pop: &Population,
        space: &SearchSpace,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<f64>, OptimizerError> {
        let horizon = self.params.budget;
        let granularity = self.config.granularity;
        let dim = space.dim();
        let triggered = self.schedule.fires(t, agent, self.config.schedule_indexing);
        let state = self
            .current
            .as_mut()
            .filter(|s| s.t == t)
            .ok_or_else(|| OptimizerError(format!("iteration {t} was not begun")))?;
        let x = &pop.positions[agent];
        let best = &pop.best_position;

        let bounds = if triggered {
            state.trigger_fired = true;
            let r2 = multiplier(rng, granularity, dim);
            let r3 = multiplier(rng, granularity, dim);
            Some(contracted_bounds_with(best, x, t, horizon, &r2, &r3))
        } else {
            None
        };

        let mut next = match state.rule {
            Rule::One => {
                let alpha1 = coeff_alpha1(t, horizon, uniform(rng));
                state.record_alpha(0, alpha1);
                let r5 = uniform(rng);
                update_rule_1(x, best, alpha1, r5)
            }
            Rule::Two => {
                let alpha2 = coeff_alpha2(t, horizon, uniform(rng));
                state.record_alpha(1, alpha2);
                let r7 = multiplier(rng, granularity, dim);
                let r8 = multiplier(rng, granularity, dim);
                let r9 = uniform(rng);
                update_rule_2_with(x, best, alpha2, &r7, &r8, r9)
            }
            Rule::Three => {
                let r10 = uniform(rng);
                let r11 = uniform(rng);
                let alpha3 = coeff_alpha3(t, horizon, r10, r11);
                state.record_alpha(2, alpha3);
                let r12 = multiplier(rng, granularity, dim);
                let r13 = uniform(rng);
                update_rule_3_with(x, best, alpha3, &r12, r13)
            }
            Rule::Four => {
                let r10 = uniform(rng);
                let r11 = uniform(rng);
                let alpha3 = coeff_alpha3(t, horizon, r10, r11);
                state.record_alpha(2, alpha3);
                let r14 = multiplier(rng, granularity, dim);
                update_rule_4_with(x, best, alpha3, state.gamma, &r14)
            }
        };

        if let (Some((lower, upper)), true) = (bounds, self.config.enforce_contraction) {
            for (j, v) in next.iter_mut().enumerate() {
                *v = v.clamp(lower[j], upper[j]);
            }
        }
        Ok(next)
    }

    fn end_iteration(&mut self, _t: usize, _pop: &Population) {
        if let Some(state) = self.current.take() {
            self.trace.entries.push(TraceEntry {
                t: state.t,
                d1: state.d1,
                d2: state.d2,
                mu: state.mu,
                alpha1: state.alpha_mean(0),
                alpha2: state.alpha_mean(1),
                alpha3: state.alpha_mean(2),
                gamma: state.gamma,
                phase: if state.t <= self.phase_boundary { 1 } else { 2 },
                rule: state.rule,
                trigger_fired: state.trigger_fired,
            });
        }
    }
}

/// One synchronous ETO iteration on an evaluated population: propose, apply
/// `policy`, re-evaluate, update the best-so-far. `optimizer` must have been
/// started for the population's size and the horizon.
pub fn eto_step(
    optimizer: &mut EtoOptimizer,
    pop: &mut Population,
    t: usize,
    objective: &dyn Objective,
    space: &SearchSpace,
    policy: BoundaryPolicy,
    rng: &mut dyn RngCore,
) -> Result<TraceEntry, RunError> {
    iterate(optimizer, objective, space, pop, t, policy, BestUpdate::Synchronous, rng)?;
    Ok(optimizer
        .trace
        .entries
        .last()
        .cloned()
        .expect("end_iteration pushes an entry"))
}
