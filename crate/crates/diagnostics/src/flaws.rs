use std::fmt::{self, Write};

use etoscope_core::eto::{
    alpha1_constant, alpha2_constant, coeff_gamma, gamma_claimed, oscillation_ratio, EtoParams,
};
use serde::{Deserialize, Serialize};

use crate::budget::stochastic_budget_report;
use crate::controls::constancy_check;
use crate::schedule_audit::audit_schedule;
use crate::switching::switch_probability_curve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Info,
    Warning,
    Defect,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Defect => "defect",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub code: String,
    pub severity: Severity,
    pub detail: String,
    pub measured: f64,
    pub expected: Option<f64>,
}

impl Finding {
    pub fn new(code: &str, severity: Severity, detail: impl Into<String>, measured: f64, expected: Option<f64>) -> Self {
        Self { code: code.to_string(), severity, detail: detail.into(), measured, expected }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FlawReport {
    pub findings: Vec<Finding>,
}

impl FlawReport {
    pub fn push(&mut self, finding: Finding) {
        self.findings.push(finding);
    }

    pub fn extend(&mut self, other: FlawReport) {
        self.findings.extend(other.findings);
    }

    pub fn find(&self, code: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.code == code)
    }

    pub fn has(&self, code: &str) -> bool {
        self.find(code).is_some()
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("## Flaw report\n\n| Code | Severity | Measured | Expected | Detail |\n|---|---|---|---|---|\n");
        for f in &self.findings {
            let expected = f.expected.map_or_else(String::new, |e| format!("{e:.4}"));
            let _ = writeln!(out, "| {} | {} | {:.4} | {} | {} |", f.code, f.severity, f.measured, expected, f.detail);
        }
        out
    }
}

/// Every closed-form finding for `params`: schedule audit, constant
/// coefficients, the gamma discrepancy, switch lock-out and the draw budget.
pub fn flaw_report(params: &EtoParams) -> FlawReport {
    let horizon = params.budget.max(1);
    let mut report = audit_schedule(params);

    let ratios: Vec<f64> = (1..=horizon).map(|t| oscillation_ratio(t, horizon)).collect();
    let tan = constancy_check(&ratios.iter().map(|r| r.tan()).collect::<Vec<_>>(), 1e-12);
    report.push(Finding::new(
        "CONSTANT_TAN_RATIO",
        Severity::Warning,
        format!("tan(d1/d2) is constant over t (spread {:.1e}); d2 = -d1 fixes the ratio at -1", tan.spread),
        tan.value,
        Some((-1.0f64).tan()),
    ));
    let exp = constancy_check(&ratios.iter().map(|r| r.exp()).collect::<Vec<_>>(), 1e-12);
    report.push(Finding::new(
        "CONSTANT_EXP_RATIO",
        Severity::Warning,
        format!("exp(d1/d2) is constant over t (spread {:.1e})", exp.spread),
        exp.value,
        Some((-1.0f64).exp()),
    ));
    report.push(Finding::new(
        "ALPHA1_REDUCES",
        Severity::Info,
        "alpha1 reduces to c * r4 * (t/T - 0.85); sign flips at t/T = 0.85",
        alpha1_constant(),
        None,
    ));
    report.push(Finding::new(
        "ALPHA2_REDUCES",
        Severity::Info,
        "alpha2 reduces to c * r6 * (t/T - 0.85); sign flips at t/T = 0.85",
        alpha2_constant(),
        None,
    ));

    let gammas: Vec<f64> = (1..=horizon).map(|t| coeff_gamma(t, horizon)).collect();
    let gamma = constancy_check(&gammas, 0.0);
    let claimed = gamma_claimed();
    report.push(Finding::new(
        "GAMMA_INCONSISTENT",
        Severity::Defect,
        format!(
            "gamma = exp(tan(d1/d2)) evaluates to exp(tan(-1)) = {:.4} at every t (spread {:.1e}), \
             but the stated constant is exp(tan(1)) = {:.4}",
            gamma.value, gamma.spread, claimed
        ),
        gamma.value,
        Some(claimed),
    ));

    let curve = switch_probability_curve(horizon);
    let first_zero = curve.iter().find(|(_, p)| *p == 0.0).map(|(t, _)| *t);
    report.push(Finding::new(
        "SWITCH_LOCKOUT",
        Severity::Warning,
        format!(
            "P[mu(t) > {}] starts at {:.4} and reaches 0 at t = {}",
            params.switch_threshold,
            curve.first().map_or(0.0, |c| c.1),
            first_zero.map_or_else(|| "never".to_string(), |t| t.to_string())
        ),
        curve.first().map_or(0.0, |c| c.1),
        None,
    ));

    report.extend(stochastic_budget_report(horizon));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_report_contents() {
        let r = flaw_report(&EtoParams::default());
        let g = r.find("GAMMA_INCONSISTENT").unwrap();
        assert_eq!(g.severity, Severity::Defect);
        assert!((g.measured - 0.2107).abs() < 1e-3);
        assert!((g.expected.unwrap() - 4.7465).abs() < 1e-3);
        assert!(g.detail.contains("0.2107") && g.detail.contains("4.7465"));
        assert!(r.has("INERT_TRIGGER"));
        let tan = r.find("CONSTANT_TAN_RATIO").unwrap();
        assert!((tan.measured + 1.5574).abs() < 1e-4);
        let md = r.to_markdown();
        assert!(md.contains("| GAMMA_INCONSISTENT | defect | 0.2107 | 4.7465 |"));
    }
}
