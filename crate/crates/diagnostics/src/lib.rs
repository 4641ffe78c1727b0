//! Forensics for the ETO control coefficients and update rules: constancy
//! detection, trigger-schedule audits, switch-probability curves, draw
//! budgets and Monte-Carlo probing of the four update rules.

mod budget;
mod controls;
mod flaws;
mod probe;
mod schedule_audit;
mod switching;

pub use budget::{stochastic_budget_report, PathBudget};
pub use controls::{
    constancy_check, trace_controls, Constancy, ControlEnvelopes, Envelope, EnvelopeRow, ENVELOPE_CSV_HEADER,
};
pub use flaws::{flaw_report, Finding, FlawReport, Severity};
pub use probe::{
    probe_update_distribution, BiasMetrics, EmpiricalPdf, ProbeConfig, ProbeError, ProbeResult, HISTOGRAM_CSV_HEADER,
    MIN_PROBE_SAMPLES,
};
pub use schedule_audit::{audit_schedule, AUDIT_DEPTH};
pub use switching::switch_probability_curve;
