//! The epsilon trigger schedule.
//!
//! `eps_1 = floor(1 + T/b)` seeds the recurrence
//! `eps_next = floor(2 - 2t (T - a eps_prev)) + eps_prev`. The recurrence
//! mixes the agent index with the iteration `t`; entries are materialized for
//! a fixed evaluation iteration (`t = 1` by default).

use serde::{Deserialize, Serialize};

use super::{EtoError, EtoParams};

/// Largest magnitude at which a floored value is still an exact integer in
/// the `f64` evaluation of the recurrence.
const EXACT_LIMIT: f64 = 9_007_199_254_740_992.0; // 2^53

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriggerSchedule {
    /// `epsilon[0]` is `eps_1`.
    pub epsilon: Vec<i64>,
    pub horizon: usize,
    /// Iteration `t` plugged into the recurrence.
    pub evaluated_at: usize,
    /// Index (1-based) of the first entry that could not be represented, if the
    /// materialization was truncated.
    pub truncated_at: Option<usize>,
}

/// How trigger entries map onto agents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleIndexing {
    /// Any recurrence-produced entry (`eps_2, eps_3, ...`) equal to `t` fires
    /// for every agent; `eps_1` only seeds the recurrence.
    #[default]
    Global,
    /// Agent `i` (1-based) fires when `t == eps_i`.
    PerAgent,
}

/// When the recurrence is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleEvaluation {
    /// Once, at `t = 1`.
    #[default]
    Fixed,
    /// Re-evaluated with the current iteration each step.
    Dynamic,
}

pub fn first_epsilon(params: &EtoParams) -> Result<i64, EtoError> {
    let v = (1.0 + params.budget as f64 / params.b).floor();
    if !v.is_finite() || v.abs() > EXACT_LIMIT {
        return Err(EtoError::ScheduleOverflow { index: 1 });
    }
    Ok(v as i64)
}

/// One step of the recurrence; `index` is the 1-based index of the entry
/// being produced (for error reporting).
pub fn next_epsilon(params: &EtoParams, t: usize, previous: i64, index: usize) -> Result<i64, EtoError> {
    let inner = (2.0 - 2.0 * t as f64 * (params.budget as f64 - params.a * previous as f64)).floor();
    if !inner.is_finite() || inner.abs() > EXACT_LIMIT {
        return Err(EtoError::ScheduleOverflow { index });
    }
    (inner as i64)
        .checked_add(previous)
        .filter(|v| (*v as f64).abs() <= EXACT_LIMIT)
        .ok_or(EtoError::ScheduleOverflow { index })
}

/// Materialize `max_index` entries evaluated at `t = 1`.
pub fn trigger_schedule(params: &EtoParams, max_index: usize) -> Result<TriggerSchedule, EtoError> {
    trigger_schedule_at(params, max_index, 1)
}

/// Materialize `max_index` entries evaluated at iteration `t`; overflow is an
/// error.
pub fn trigger_schedule_at(params: &EtoParams, max_index: usize, t: usize) -> Result<TriggerSchedule, EtoError> {
    if max_index == 0 {
        return Err(EtoError::InvalidParams("schedule needs at least one entry".into()));
    }
    let mut epsilon = Vec::with_capacity(max_index);
    epsilon.push(first_epsilon(params)?);
    for index in 2..=max_index {
        let prev = *epsilon.last().expect("non-empty");
        epsilon.push(next_epsilon(params, t, prev, index)?);
    }
    Ok(TriggerSchedule {
        epsilon,
        horizon: params.budget,
        evaluated_at: t,
        truncated_at: None,
    })
}

/// Like [`trigger_schedule_at`], but stops at the first unrepresentable entry
/// and records where. Entries past the truncation exceed any reachable
/// iteration.
pub fn trigger_schedule_saturating(params: &EtoParams, max_index: usize, t: usize) -> TriggerSchedule {
    let mut epsilon = Vec::with_capacity(max_index);
    let mut truncated_at = None;
    match first_epsilon(params) {
        Ok(e) => epsilon.push(e),
        Err(_) => truncated_at = Some(1),
    }
    if truncated_at.is_none() {
        for index in 2..=max_index {
            let prev = *epsilon.last().expect("non-empty");
            match next_epsilon(params, t, prev, index) {
                Ok(e) => epsilon.push(e),
                Err(_) => {
                    truncated_at = Some(index);
                    break;
                }
            }
        }
    }
    TriggerSchedule {
        epsilon,
        horizon: params.budget,
        evaluated_at: t,
        truncated_at,
    }
}

impl TriggerSchedule {
    /// Recurrence-produced entries, `eps_2` onward.
    pub fn produced(&self) -> &[i64] {
        self.epsilon.get(1..).unwrap_or(&[])
    }

    /// Whether the trigger fires for `agent` (0-based) at iteration `t`.
    pub fn fires(&self, t: usize, agent: usize, indexing: ScheduleIndexing) -> bool {
        let t = t as i64;
        match indexing {
            ScheduleIndexing::Global => self.produced().contains(&t),
            ScheduleIndexing::PerAgent => self.epsilon.get(agent) == Some(&t),
        }
    }

    /// Smallest recurrence-produced entry, if any.
    pub fn min_produced(&self) -> Option<i64> {
        self.produced().iter().copied().min()
    }

    /// Recurrence-produced entries that land inside `[1, horizon]`.
    pub fn reachable(&self) -> Vec<i64> {
        self.produced()
            .iter()
            .copied()
            .filter(|&e| e >= 1 && e <= self.horizon as i64)
            .collect()
    }
}
