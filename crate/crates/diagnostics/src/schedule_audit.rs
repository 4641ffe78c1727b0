use etoscope_core::eto::schedule::trigger_schedule_saturating;
use etoscope_core::eto::EtoParams;

use crate::flaws::{Finding, FlawReport, Severity};

/// Schedule entries materialized by [`audit_schedule`].
pub const AUDIT_DEPTH: usize = 8;

/// Materialize the trigger schedule at `t = 1` and flag it as inert when no
/// entry after the first lands inside `[1, T]`.
pub fn audit_schedule(params: &EtoParams) -> FlawReport {
    let horizon = params.budget;
    let schedule = trigger_schedule_saturating(params, AUDIT_DEPTH, 1);
    let mut report = FlawReport::default();
    if let Some(&eps1) = schedule.epsilon.first() {
        report.push(Finding::new(
            "SCHEDULE_SEED",
            Severity::Info,
            "first schedule entry; seeds the recurrence only",
            eps1 as f64,
            None,
        ));
    }
    let in_budget = |e: i64| e >= 1 && e <= horizon as i64;
    match schedule.produced().iter().copied().find(|&e| in_budget(e)) {
        None => {
            let first_out = schedule.produced().first().copied();
            report.push(Finding::new(
                "INERT_TRIGGER",
                Severity::Defect,
                format!(
                    "none of the {} produced entries lies in [1, {horizon}]{}; the contracted bounds are never applied",
                    schedule.produced().len(),
                    schedule.truncated_at.map_or_else(String::new, |i| format!(" (saturated from entry {i})")),
                ),
                first_out.map_or(f64::NAN, |e| e as f64),
                Some(horizon as f64),
            ));
        }
        Some(e) => report.push(Finding::new(
            "TRIGGER_REACHABLE",
            Severity::Info,
            format!(
                "schedule entries {:?} lie within the budget",
                schedule.produced().iter().copied().filter(|&e| in_budget(e)).collect::<Vec<_>>()
            ),
            e as f64,
            Some(horizon as f64),
        )),
    }
    report
}
