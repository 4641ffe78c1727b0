//! Instrumented Exponential-Trigonometric Optimizer.
//!
//! Per iteration `t` the kernel computes `(d1, d2)`, draws `r1` and forms
//! `mu(t)`, checks the epsilon trigger (recording the contracted bounds when it
//! fires), and moves every agent with one of four rules:
//!
//! | phase            | `mu > threshold` | otherwise |
//! |------------------|------------------|-----------|
//! | `t <= T_p`       | rule 1           | rule 2    |
//! | `t > T_p`        | rule 3           | rule 4    |
//!
//! Uniform draws are consumed in the order listed by [`rules::ITERATION_DRAWS`],
//! [`rules::TRIGGER_DRAWS`] and [`rules::rule_draws`]. The best-so-far position
//! is updated synchronously at the end of each iteration by default.

pub mod coefficients;
mod kernel;
pub mod rules;
pub mod schedule;
pub mod trace;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use coefficients::*;
pub use kernel::{eto_step, EtoConfig, EtoOptimizer};
pub use rules::{
    select_rule, update_rule_1, update_rule_2, update_rule_3, update_rule_4, DrawGranularity, Rule,
};
pub use schedule::{trigger_schedule, ScheduleEvaluation, ScheduleIndexing, TriggerSchedule};
pub use trace::{ControlTrace, TraceEntry};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EtoError {
    #[error("iteration {t} outside [1, {horizon}]")]
    IterationOutOfRange { t: usize, horizon: usize },
    #[error("trigger recurrence overflowed at entry {index}")]
    ScheduleOverflow { index: usize },
    #[error("invalid ETO parameters: {0}")]
    InvalidParams(String),
}

/// Constants of the algorithm. `budget` is the iteration horizon `T`; when the
/// kernel runs inside the shared loop it is overwritten by the run's budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EtoParams {
    pub a: f64,
    pub b: f64,
    pub switch_threshold: f64,
    pub budget: usize,
}

impl Default for EtoParams {
    fn default() -> Self {
        Self {
            a: 4.6,
            b: 1.55,
            switch_threshold: 1.0,
            budget: 500,
        }
    }
}

impl EtoParams {
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self) -> Result<(), EtoError> {
        if self.b <= 0.0 || !self.b.is_finite() {
            return Err(EtoError::InvalidParams(format!("b must be positive, got {}", self.b)));
        }
        if !self.a.is_finite() || !self.switch_threshold.is_finite() {
            return Err(EtoError::InvalidParams("a and switch_threshold must be finite".into()));
        }
        if self.budget == 0 {
            return Err(EtoError::InvalidParams("budget must be at least 1".into()));
        }
        Ok(())
    }
}
