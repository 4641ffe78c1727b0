use serde::{Deserialize, Serialize};
use std::io::{self, Write};

use super::rules::Rule;

/// Control state of one ETO iteration.
///
/// `alpha*` hold the mean over agents of the coefficient on the active rule
/// path and are `None` when that path did not compute them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub t: usize,
    pub d1: f64,
    pub d2: f64,
    pub mu: f64,
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    pub alpha3: Option<f64>,
    pub gamma: f64,
    pub phase: u8,
    pub rule: Rule,
    pub trigger_fired: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ControlTrace {
    pub entries: Vec<TraceEntry>,
}

pub const TRACE_CSV_HEADER: &str = "t,d1,d2,mu,alpha1,alpha2,alpha3,gamma,phase,rule,trigger_fired";

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ControlTrace {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn any_trigger(&self) -> bool {
        self.entries.iter().any(|e| e.trigger_fired)
    }

    /// One row per iteration under [`TRACE_CSV_HEADER`]. Missing coefficients
    /// are empty cells.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{TRACE_CSV_HEADER}")?;
        for e in &self.entries {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                e.t,
                e.d1,
                e.d2,
                e.mu,
                opt(e.alpha1),
                opt(e.alpha2),
                opt(e.alpha3),
                e.gamma,
                e.phase,
                e.rule.number(),
                e.trigger_fired
            )?;
        }
        Ok(())
    }
}
