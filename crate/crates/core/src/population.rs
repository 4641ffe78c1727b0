use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::optimizer::Objective;
use crate::space::SearchSpace;

/// Agent positions plus the best-so-far record (minimization).
///
/// Fitness entries are `+inf` until the first evaluation pass; so is
/// `best_fitness`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Population {
    pub positions: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
}

impl Population {
    /// Wrap explicit positions; fitness starts unset.
    pub fn from_positions(positions: Vec<Vec<f64>>) -> Self {
        let n = positions.len();
        let best_position = positions.first().cloned().unwrap_or_default();
        Self {
            positions,
            fitness: vec![f64::INFINITY; n],
            best_position,
            best_fitness: f64::INFINITY,
        }
    }

    pub fn n_agents(&self) -> usize {
        self.positions.len()
    }

    pub fn dim(&self) -> usize {
        self.positions.first().map_or(0, Vec::len)
    }

    /// Replace agent `i` with an already evaluated position and fold it into
    /// the best-so-far record.
    pub fn commit(&mut self, i: usize, position: Vec<f64>, fitness: f64) {
        if fitness < self.best_fitness {
            self.best_fitness = fitness;
            self.best_position.clone_from(&position);
        }
        self.positions[i] = position;
        self.fitness[i] = fitness;
    }
}

/// Uniform initialization: `x = r0 * (upper - lower) + lower`, one draw per
/// coordinate, agents in order, coordinates in order.
///
/// The space is validated on construction, so an inverted interval cannot reach
/// this point; `n_agents == 0` yields an empty population.
pub fn init_population<R: Rng + ?Sized>(space: &SearchSpace, n_agents: usize, rng: &mut R) -> Population {
    let width = space.width();
    let positions = (0..n_agents)
        .map(|_| {
            (0..space.dim())
                .map(|_| rng.random::<f64>() * width + space.lower())
                .collect()
        })
        .collect();
    Population::from_positions(positions)
}

/// Non-finite objective values are recorded as `+inf`.
pub fn sanitize_fitness(value: f64) -> f64 {
    if value.is_finite() {
        value
    } else {
        f64::INFINITY
    }
}

/// Evaluate every agent and update the best-so-far record.
///
/// The best only moves on a strictly smaller fitness. Returns the number of
/// objective calls.
pub fn evaluate<O: Objective + ?Sized>(objective: &O, pop: &mut Population) -> usize {
    for i in 0..pop.n_agents() {
        let f = sanitize_fitness(objective.value(&pop.positions[i]));
        pop.fitness[i] = f;
        if f < pop.best_fitness {
            pop.best_fitness = f;
            pop.best_position.clone_from(&pop.positions[i]);
        }
    }
    pop.n_agents()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::run_rng;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    #[test]
    fn init_stays_in_range() {
        let space = SearchSpace::new(3, -5.0, 10.0).unwrap();
        let pop = init_population(&space, 30, &mut run_rng(1));
        assert_eq!(pop.n_agents(), 30);
        assert_eq!(pop.dim(), 3);
        assert!(pop.positions.iter().flatten().all(|&v| (-5.0..=10.0).contains(&v)));
        assert!(pop.fitness.iter().all(|f| f.is_infinite()));
    }

    #[test]
    fn init_degenerate_interval() {
        let space = SearchSpace::new(2, 1.5, 1.5).unwrap();
        let pop = init_population(&space, 5, &mut run_rng(2));
        assert!(pop.positions.iter().flatten().all(|&v| v == 1.5));
    }

    #[test]
    fn init_mean_is_uniform_mean() {
        let space = SearchSpace::new(1, 0.0, 1.0).unwrap();
        let pop = init_population(&space, 100_000, &mut run_rng(3));
        let mean = pop.positions.iter().map(|p| p[0]).sum::<f64>() / 100_000.0;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn evaluate_at_optimum() {
        let mut pop = Population::from_positions(vec![vec![0.0, 0.0]]);
        assert_eq!(evaluate(&sphere, &mut pop), 1);
        assert_eq!(pop.fitness, vec![0.0]);
        assert_eq!(pop.best_fitness, 0.0);
    }

    #[test]
    fn evaluate_picks_smallest() {
        let mut pop = Population::from_positions(vec![vec![1.0, 1.0], vec![2.0, 0.0]]);
        evaluate(&sphere, &mut pop);
        assert_eq!(pop.fitness, vec![2.0, 4.0]);
        assert_eq!(pop.best_position, vec![1.0, 1.0]);
        assert_eq!(pop.best_fitness, 2.0);
    }

    #[test]
    fn ties_and_worse_keep_incumbent() {
        let mut pop = Population::from_positions(vec![vec![5.0], vec![-1.0]]);
        pop.best_fitness = 1.0;
        pop.best_position = vec![1.0];
        evaluate(&sphere, &mut pop);
        // fitness 25 and 1: the tie must not displace the incumbent
        assert_eq!(pop.best_fitness, 1.0);
        assert_eq!(pop.best_position, vec![1.0]);
    }

    #[test]
    fn non_finite_becomes_infinity() {
        let mut pop = Population::from_positions(vec![vec![0.0], vec![1.0]]);
        evaluate(&|x: &[f64]| if x[0] == 0.0 { f64::NAN } else { 3.0 }, &mut pop);
        assert_eq!(pop.fitness[0], f64::INFINITY);
        assert_eq!(pop.best_fitness, 3.0);
    }
}
