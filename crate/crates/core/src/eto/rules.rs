//! The four position-update rules and the draw-consumption table.

use serde::{Deserialize, Serialize};
use std::fmt;

use super::coefficients::pick;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    One,
    Two,
    Three,
    Four,
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::One, Rule::Two, Rule::Three, Rule::Four];

    pub fn number(&self) -> u8 {
        match self {
            Rule::One => 1,
            Rule::Two => 2,
            Rule::Three => 3,
            Rule::Four => 4,
        }
    }

    pub fn from_number(n: u8) -> Option<Rule> {
        match n {
            1 => Some(Rule::One),
            2 => Some(Rule::Two),
            3 => Some(Rule::Three),
            4 => Some(Rule::Four),
            _ => None,
        }
    }

    pub fn phase(&self) -> u8 {
        match self {
            Rule::One | Rule::Two => 1,
            Rule::Three | Rule::Four => 2,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Phase 1 (`t <= T_p`) uses rule 1 when `mu > threshold`, else rule 2;
/// phase 2 uses rule 3 when `mu > threshold`, else rule 4.
pub fn select_rule(t: usize, phase_boundary: usize, mu: f64, threshold: f64) -> Rule {
    match (t <= phase_boundary, mu > threshold) {
        (true, true) => Rule::One,
        (true, false) => Rule::Two,
        (false, true) => Rule::Three,
        (false, false) => Rule::Four,
    }
}

/// `x_best +/- alpha1 |x_best - x|`; plus branch iff `r5 <= 0.5`.
pub fn update_rule_1(x: &[f64], x_best: &[f64], alpha1: f64, r5: f64) -> Vec<f64> {
    let sign = if r5 <= 0.5 { 1.0 } else { -1.0 };
    x.iter()
        .zip(x_best)
        .map(|(&xi, &bi)| bi + sign * alpha1 * (bi - xi).abs())
        .collect()
}

/// `x_best +/- r7 alpha2 |r8 x_best - x|`; plus branch iff `r9 < 0.5`.
pub fn update_rule_2(x: &[f64], x_best: &[f64], alpha2: f64, r7: f64, r8: f64, r9: f64) -> Vec<f64> {
    update_rule_2_with(x, x_best, alpha2, &[r7], &[r8], r9)
}

pub fn update_rule_2_with(x: &[f64], x_best: &[f64], alpha2: f64, r7: &[f64], r8: &[f64], r9: f64) -> Vec<f64> {
    let sign = if r9 < 0.5 { 1.0 } else { -1.0 };
    (0..x.len())
        .map(|j| x_best[j] + sign * pick(r7, j) * alpha2 * (pick(r8, j) * x_best[j] - x[j]).abs())
        .collect()
}

/// `x +/- 3 |r12 alpha3 x_best - x|`; plus branch iff `r13 <= 0.5`.
pub fn update_rule_3(x: &[f64], x_best: &[f64], alpha3: f64, r12: f64, r13: f64) -> Vec<f64> {
    update_rule_3_with(x, x_best, alpha3, &[r12], r13)
}

pub fn update_rule_3_with(x: &[f64], x_best: &[f64], alpha3: f64, r12: &[f64], r13: f64) -> Vec<f64> {
    let sign = if r13 <= 0.5 { 1.0 } else { -1.0 };
    (0..x.len())
        .map(|j| x[j] + sign * 3.0 * (pick(r12, j) * alpha3 * x_best[j] - x[j]).abs())
        .collect()
}

/// `x + gamma |r14 alpha3 x_best - x|`. The displacement is never negative.
pub fn update_rule_4(x: &[f64], x_best: &[f64], alpha3: f64, gamma: f64, r14: f64) -> Vec<f64> {
    update_rule_4_with(x, x_best, alpha3, gamma, &[r14])
}

pub fn update_rule_4_with(x: &[f64], x_best: &[f64], alpha3: f64, gamma: f64, r14: &[f64]) -> Vec<f64> {
    (0..x.len())
        .map(|j| x[j] + gamma * (pick(r14, j) * alpha3 * x_best[j] - x[j]).abs())
        .collect()
}

/// Whether the multiplicative draws inside the update rules (r2, r3, r7, r8,
/// r12, r14) are one scalar per agent or one per coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DrawGranularity {
    #[default]
    Scalar,
    PerCoordinate,
}

/// How often a named draw is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DrawScope {
    /// Once per iteration, shared by all agents.
    Iteration,
    /// Once per agent.
    Agent,
    /// Once per agent, or once per coordinate under
    /// [`DrawGranularity::PerCoordinate`].
    Multiplier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DrawSpec {
    pub name: &'static str,
    pub scope: DrawScope,
}

const fn draw(name: &'static str, scope: DrawScope) -> DrawSpec {
    DrawSpec { name, scope }
}

/// Draws consumed once per iteration, before any agent.
pub const ITERATION_DRAWS: &[DrawSpec] = &[draw("r1", DrawScope::Iteration)];

/// Draws consumed by an agent whose trigger fires, before its rule draws.
pub const TRIGGER_DRAWS: &[DrawSpec] = &[draw("r2", DrawScope::Multiplier), draw("r3", DrawScope::Multiplier)];

/// Per-agent draws of each rule path, in consumption order.
pub fn rule_draws(rule: Rule) -> &'static [DrawSpec] {
    const RULE1: &[DrawSpec] = &[draw("r4", DrawScope::Agent), draw("r5", DrawScope::Agent)];
    const RULE2: &[DrawSpec] = &[
        draw("r6", DrawScope::Agent),
        draw("r7", DrawScope::Multiplier),
        draw("r8", DrawScope::Multiplier),
        draw("r9", DrawScope::Agent),
    ];
    const RULE3: &[DrawSpec] = &[
        draw("r10", DrawScope::Agent),
        draw("r11", DrawScope::Agent),
        draw("r12", DrawScope::Multiplier),
        draw("r13", DrawScope::Agent),
    ];
    const RULE4: &[DrawSpec] = &[
        draw("r10", DrawScope::Agent),
        draw("r11", DrawScope::Agent),
        draw("r14", DrawScope::Multiplier),
    ];
    match rule {
        Rule::One => RULE1,
        Rule::Two => RULE2,
        Rule::Three => RULE3,
        Rule::Four => RULE4,
    }
}

/// Number of uniform draws one declared draw expands to.
pub fn draw_count(spec: &DrawSpec, granularity: DrawGranularity, dim: usize) -> usize {
    match (spec.scope, granularity) {
        (DrawScope::Multiplier, DrawGranularity::PerCoordinate) => dim,
        _ => 1,
    }
}

/// Uniform draws consumed by one agent on `rule`'s path (excluding the
/// per-iteration `r1`).
pub fn draws_per_agent(rule: Rule, triggered: bool, granularity: DrawGranularity, dim: usize) -> usize {
    let trigger: usize = if triggered {
        TRIGGER_DRAWS.iter().map(|s| draw_count(s, granularity, dim)).sum()
    } else {
        0
    };
    trigger
        + rule_draws(rule)
            .iter()
            .map(|s| draw_count(s, granularity, dim))
            .sum::<usize>()
}
