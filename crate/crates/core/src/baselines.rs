//! Reference baselines used to exercise the comparison pipeline.

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::optimizer::{Optimizer, OptimizerError};
use crate::population::Population;
use crate::space::SearchSpace;

/// Every agent is redrawn uniformly each iteration.
#[derive(Debug, Clone, Copy, Default)]
pub struct RandomSearch;

impl Optimizer for RandomSearch {
    fn name(&self) -> &str {
        "random_search"
    }

    fn propose(
        &mut self,
        _t: usize,
        _agent: usize,
        _pop: &Population,
        space: &SearchSpace,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<f64>, OptimizerError> {
        Ok((0..space.dim())
            .map(|_| rng.random::<f64>() * space.width() + space.lower())
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoParams {
    pub inertia_start: f64,
    pub inertia_end: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Velocity limit as a fraction of the domain width.
    pub max_velocity_fraction: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            inertia_start: 0.9,
            inertia_end: 0.4,
            cognitive: 2.0,
            social: 2.0,
            max_velocity_fraction: 0.2,
        }
    }
}

/// Global-best particle swarm with linearly decreasing inertia weight.
#[derive(Debug, Clone)]
pub struct Pso {
    params: PsoParams,
    budget: usize,
    velocities: Vec<Vec<f64>>,
    personal_best: Vec<Vec<f64>>,
    personal_best_fitness: Vec<f64>,
    inertia: f64,
}

impl Pso {
    pub fn new(params: PsoParams) -> Self {
        Self {
            params,
            budget: 1,
            velocities: Vec::new(),
            personal_best: Vec::new(),
            personal_best_fitness: Vec::new(),
            inertia: params.inertia_start,
        }
    }
}

impl Default for Pso {
    fn default() -> Self {
        Self::new(PsoParams::default())
    }
}

impl Optimizer for Pso {
    fn name(&self) -> &str {
        "pso"
    }

    fn start(&mut self, space: &SearchSpace, n_agents: usize, budget: usize) -> Result<(), OptimizerError> {
        self.budget = budget.max(1);
        self.velocities = vec![vec![0.0; space.dim()]; n_agents];
        self.personal_best.clear();
        self.personal_best_fitness = vec![f64::INFINITY; n_agents];
        Ok(())
    }

    fn begin_iteration(
        &mut self,
        t: usize,
        pop: &Population,
        _space: &SearchSpace,
        _rng: &mut dyn RngCore,
    ) -> Result<(), OptimizerError> {
        if self.personal_best.is_empty() {
            self.personal_best = pop.positions.clone();
        }
        for (i, &f) in pop.fitness.iter().enumerate() {
            if f < self.personal_best_fitness[i] {
                self.personal_best_fitness[i] = f;
                self.personal_best[i].clone_from(&pop.positions[i]);
            }
        }
        let progress = (t - 1) as f64 / self.budget as f64;
        self.inertia = self.params.inertia_start - (self.params.inertia_start - self.params.inertia_end) * progress;
        Ok(())
    }

    fn propose(
        &mut self,
        _t: usize,
        agent: usize,
        pop: &Population,
        space: &SearchSpace,
        rng: &mut dyn RngCore,
    ) -> Result<Vec<f64>, OptimizerError> {
        let v_max = self.params.max_velocity_fraction * space.width();
        let x = &pop.positions[agent];
        let velocity = &mut self.velocities[agent];
        let pbest = &self.personal_best[agent];
        let mut next = Vec::with_capacity(x.len());
        for j in 0..x.len() {
            let r1: f64 = rng.random();
            let r2: f64 = rng.random();
            let v = self.inertia * velocity[j]
                + self.params.cognitive * r1 * (pbest[j] - x[j])
                + self.params.social * r2 * (pop.best_position[j] - x[j]);
            velocity[j] = v.clamp(-v_max, v_max);
            next.push(x[j] + velocity[j]);
        }
        Ok(next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizer::{run_optimizer, RunSettings};

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    #[test]
    fn pso_beats_random_search_on_sphere() {
        let space = SearchSpace::new(10, -100.0, 100.0).unwrap();
        let settings = RunSettings::new(30, 300, 11);
        let pso = run_optimizer(&mut Pso::default(), &sphere, &space, &settings).unwrap();
        let rs = run_optimizer(&mut RandomSearch, &sphere, &space, &settings).unwrap();
        assert!(pso.final_fitness < rs.final_fitness, "{} vs {}", pso.final_fitness, rs.final_fitness);
        assert!(pso.final_fitness < 1.0);
    }

    #[test]
    fn pso_is_restartable() {
        let space = SearchSpace::new(3, -5.0, 5.0).unwrap();
        let settings = RunSettings::new(8, 30, 4);
        let mut pso = Pso::default();
        let a = run_optimizer(&mut pso, &sphere, &space, &settings).unwrap();
        let b = run_optimizer(&mut pso, &sphere, &space, &settings).unwrap();
        assert_eq!(a, b);
    }
}
