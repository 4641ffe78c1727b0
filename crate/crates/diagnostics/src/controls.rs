use std::io::{self, Write};

use etoscope_core::eto::{
    coeff_alpha1, coeff_alpha2, coeff_alpha3, coeff_gamma, mode_coefficient, oscillation_pair,
};
use etoscope_core::rng::{derive_seed, run_rng};
use rand::Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Envelope {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

impl Envelope {
    fn of(values: &[f64]) -> Self {
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self { min, mean: values.iter().sum::<f64>() / values.len() as f64, max }
    }

    pub fn width(&self) -> f64 {
        self.max - self.min
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeRow {
    pub t: usize,
    pub d1: f64,
    pub d2: f64,
    pub tan_ratio: f64,
    pub exp_ratio: f64,
    pub mu: Envelope,
    pub alpha1: Envelope,
    pub alpha2: Envelope,
    pub alpha3: Envelope,
    pub gamma: Envelope,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ControlEnvelopes {
    pub horizon: usize,
    pub samples_per_t: usize,
    pub rows: Vec<EnvelopeRow>,
}

pub const ENVELOPE_CSV_HEADER: &str = "t,d1,d2,tan_ratio,exp_ratio,\
mu_min,mu_mean,mu_max,alpha1_min,alpha1_mean,alpha1_max,\
alpha2_min,alpha2_mean,alpha2_max,alpha3_min,alpha3_mean,alpha3_max,gamma";

impl ControlEnvelopes {
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{ENVELOPE_CSV_HEADER}")?;
        for r in &self.rows {
            write!(out, "{},{},{},{},{}", r.t, r.d1, r.d2, r.tan_ratio, r.exp_ratio)?;
            for e in [r.mu, r.alpha1, r.alpha2, r.alpha3] {
                write!(out, ",{},{},{}", e.min, e.mean, e.max)?;
            }
            writeln!(out, ",{}", r.gamma.mean)?;
        }
        Ok(())
    }

    /// First `t` at which the mean alpha1 envelope is nonnegative.
    pub fn alpha1_zero_crossing(&self) -> Option<usize> {
        self.rows.iter().find(|r| r.alpha1.mean >= 0.0).map(|r| r.t)
    }
}

/// Deterministic parts per `t` plus min/mean/max over `n_samples_per_t`
/// draws of each stochastic coefficient. `horizon` and `n_samples_per_t`
/// are raised to at least 1.
pub fn trace_controls(horizon: usize, n_samples_per_t: usize, seed: u64) -> ControlEnvelopes {
    let horizon = horizon.max(1);
    let n = n_samples_per_t.max(1);
    let rows = (1..=horizon)
        .map(|t| {
            let mut rng = run_rng(derive_seed(seed, t as u64));
            let (d1, d2) = oscillation_pair(t, horizon);
            let (mut mu, mut a1, mut a2, mut a3) =
                (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
            for _ in 0..n {
                let r: [f64; 5] = std::array::from_fn(|_| rng.random());
                mu.push(mode_coefficient(t, horizon, r[0]).expect("t within [1, T]"));
                a1.push(coeff_alpha1(t, horizon, r[1]));
                a2.push(coeff_alpha2(t, horizon, r[2]));
                a3.push(coeff_alpha3(t, horizon, r[3], r[4]));
            }
            let gamma = coeff_gamma(t, horizon);
            EnvelopeRow {
                t,
                d1,
                d2,
                tan_ratio: (d1 / d2).tan(),
                exp_ratio: (d1 / d2).exp(),
                mu: Envelope::of(&mu),
                alpha1: Envelope::of(&a1),
                alpha2: Envelope::of(&a2),
                alpha3: Envelope::of(&a3),
                gamma: Envelope { min: gamma, mean: gamma, max: gamma },
            }
        })
        .collect();
    ControlEnvelopes { horizon, samples_per_t: n, rows }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constancy {
    pub constant: bool,
    pub spread: f64,
    /// First element of the series.
    pub value: f64,
}

/// `max - min <= tol`. An empty series is reported constant with NaN value.
pub fn constancy_check(series: &[f64], tol: f64) -> Constancy {
    let Some(&first) = series.first() else {
        return Constancy { constant: true, spread: 0.0, value: f64::NAN };
    };
    let min = series.iter().copied().fold(f64::INFINITY, f64::min);
    let max = series.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = max - min;
    Constancy { constant: spread <= tol, spread, value: first }
}
