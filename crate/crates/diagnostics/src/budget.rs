use std::collections::BTreeSet;

use etoscope_core::eto::rules::{rule_draws, DrawScope, ITERATION_DRAWS, TRIGGER_DRAWS};
use etoscope_core::eto::{phase_boundary, Rule};
use serde::Serialize;

use crate::flaws::{Finding, FlawReport, Severity};

/// Named uniform draws on one rule path, counted per agent per iteration
/// with scalar multipliers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathBudget {
    pub rule: Rule,
    pub triggered: bool,
    pub draws: Vec<&'static str>,
}

impl PathBudget {
    pub fn new(rule: Rule, triggered: bool) -> Self {
        let trigger: &[_] = if triggered { TRIGGER_DRAWS } else { &[] };
        let draws = ITERATION_DRAWS
            .iter()
            .chain(trigger)
            .chain(rule_draws(rule))
            .map(|d| d.name)
            .collect();
        Self { rule, triggered, draws }
    }
}

/// Draw counts per rule path from the kernel's consumption table.
pub fn stochastic_budget_report(horizon: usize) -> FlawReport {
    let mut report = FlawReport::default();
    let mut union = BTreeSet::new();
    for rule in Rule::ALL {
        for triggered in [false, true] {
            let path = PathBudget::new(rule, triggered);
            union.extend(path.draws.iter().copied());
            if !triggered {
                let per_agent = rule_draws(rule).len();
                report.push(Finding::new(
                    &format!("DRAW_BUDGET_RULE{}", rule.number()),
                    Severity::Info,
                    format!(
                        "rule {} path draws {} (r1 once per iteration, {per_agent} per agent; +2 per agent when the trigger fires)",
                        rule.number(),
                        path.draws.join(", "),
                    ),
                    path.draws.len() as f64,
                    None,
                ));
            }
        }
    }
    let per_coordinate: usize = ITERATION_DRAWS
        .iter()
        .chain(TRIGGER_DRAWS)
        .chain(Rule::ALL.iter().flat_map(|&r| rule_draws(r)))
        .filter(|d| d.scope == DrawScope::Multiplier)
        .count();
    report.push(Finding::new(
        "DRAW_UNION",
        Severity::Info,
        format!(
            "{} distinct named uniform draws across all paths ({per_coordinate} multiplier slots may expand per coordinate); \
             at most {} can be consumed in one iteration, phase 1 ends at t = {}",
            union.len(),
            Rule::ALL.iter().map(|&r| PathBudget::new(r, true).draws.len()).max().unwrap_or(0),
            phase_boundary(horizon),
        ),
        union.len() as f64,
        Some(14.0),
    ));
    report
}
