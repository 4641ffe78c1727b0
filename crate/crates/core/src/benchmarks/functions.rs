//! Classic analytic test functions, each with its global minimum `0` at the
//! origin (Rosenbrock and Levy are translated so that this holds).

use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseFunction {
    Sphere,
    Elliptic,
    BentCigar,
    Rastrigin,
    Rosenbrock,
    Ackley,
    Griewank,
    Schwefel12,
    Zakharov,
    Levy,
}

impl BaseFunction {
    pub const ALL: [BaseFunction; 10] = [
        BaseFunction::Sphere,
        BaseFunction::Elliptic,
        BaseFunction::BentCigar,
        BaseFunction::Rastrigin,
        BaseFunction::Rosenbrock,
        BaseFunction::Ackley,
        BaseFunction::Griewank,
        BaseFunction::Schwefel12,
        BaseFunction::Zakharov,
        BaseFunction::Levy,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BaseFunction::Sphere => "sphere",
            BaseFunction::Elliptic => "elliptic",
            BaseFunction::BentCigar => "bent_cigar",
            BaseFunction::Rastrigin => "rastrigin",
            BaseFunction::Rosenbrock => "rosenbrock",
            BaseFunction::Ackley => "ackley",
            BaseFunction::Griewank => "griewank",
            BaseFunction::Schwefel12 => "schwefel_1_2",
            BaseFunction::Zakharov => "zakharov",
            BaseFunction::Levy => "levy",
        }
    }

    pub fn is_separable(&self) -> bool {
        matches!(self, BaseFunction::Sphere | BaseFunction::Elliptic | BaseFunction::Rastrigin)
    }

    pub fn eval(&self, z: &[f64]) -> f64 {
        match self {
            BaseFunction::Sphere => z.iter().map(|v| v * v).sum(),
            BaseFunction::Elliptic => elliptic(z),
            BaseFunction::BentCigar => {
                let tail: f64 = z.iter().skip(1).map(|v| v * v).sum();
                z.first().map_or(0.0, |v| v * v) + 1e6 * tail
            }
            BaseFunction::Rastrigin => z
                .iter()
                .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
                .sum(),
            BaseFunction::Rosenbrock => z
                .windows(2)
                .map(|w| {
                    let (a, b) = (w[0] + 1.0, w[1] + 1.0);
                    100.0 * (b - a * a).powi(2) + (a - 1.0).powi(2)
                })
                .sum(),
            BaseFunction::Ackley => ackley(z),
            BaseFunction::Griewank => {
                let sum: f64 = z.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let prod: f64 = z
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                    .product();
                sum - prod + 1.0
            }
            BaseFunction::Schwefel12 => {
                let mut prefix = 0.0;
                z.iter()
                    .map(|v| {
                        prefix += v;
                        prefix * prefix
                    })
                    .sum()
            }
            BaseFunction::Zakharov => {
                let s1: f64 = z.iter().map(|v| v * v).sum();
                let s2: f64 = z.iter().enumerate().map(|(i, v)| 0.5 * (i + 1) as f64 * v).sum();
                s1 + s2.powi(2) + s2.powi(4)
            }
            BaseFunction::Levy => levy(z),
        }
    }
}

/// Conditioning weight of coordinate `i` of `n` for the elliptic function.
pub fn elliptic_weight(i: usize, n: usize) -> f64 {
    if n <= 1 {
        1.0
    } else {
        1e6f64.powf(i as f64 / (n - 1) as f64)
    }
}

fn elliptic(z: &[f64]) -> f64 {
    let n = z.len();
    z.iter().enumerate().map(|(i, v)| elliptic_weight(i, n) * v * v).sum()
}

fn ackley(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let sq = (z.iter().map(|v| v * v).sum::<f64>() / n).sqrt();
    let cs = z.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    // grouped so the origin evaluates to exactly zero
    (20.0 - 20.0 * (-0.2 * sq).exp()) + (E - cs.exp())
}

fn levy(z: &[f64]) -> f64 {
    let w: Vec<f64> = z.iter().map(|v| 1.0 + v / 4.0).collect();
    let n = w.len();
    let head = (PI * w[0]).sin().powi(2);
    let body: f64 = w[..n - 1]
        .iter()
        .map(|wi| (wi - 1.0).powi(2) * (1.0 + 10.0 * (PI * wi + 1.0).sin().powi(2)))
        .sum();
    let last = w[n - 1];
    let tail = (last - 1.0).powi(2) * (1.0 + (2.0 * PI * last).sin().powi(2));
    head + body + tail
}

impl fmt::Display for BaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BaseFunction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BaseFunction::ALL
            .iter()
            .copied()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| format!("unknown base function '{s}'"))
    }
}
