use std::io::{self, Write};

use etoscope_core::eto::{
    coeff_alpha1, coeff_alpha2, coeff_alpha3, update_rule_1, update_rule_2, update_rule_3, update_rule_4, GammaChoice,
    Rule,
};
use etoscope_core::rng::{derive_seed, run_rng};
use etoscope_core::SearchSpace;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

pub const MIN_PROBE_SAMPLES: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProbeError {
    #[error("need at least {MIN_PROBE_SAMPLES} samples, got {0}")]
    TooFewSamples(usize),
    #[error("resolution fraction must lie in (0, 1], got {0}")]
    Resolution(f64),
    #[error("t_fraction must lie in [0, 1], got {0}")]
    TFraction(f64),
    #[error("budget must be at least 1")]
    Budget,
    #[error("need at least one partition")]
    Partitions,
}

/// One scalar coordinate is probed: `x` and `x_best` uniform on the domain,
/// coefficients drawn at `t = max(1, round(t_fraction * budget))`, the rule
/// applied once with no boundary handling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeConfig {
    pub rule: Rule,
    pub n_samples: usize,
    pub lower: f64,
    pub upper: f64,
    pub resolution: f64,
    pub t_fraction: f64,
    pub budget: usize,
    pub seed: u64,
    pub gamma: GammaChoice,
    /// Pin `x_best` instead of drawing it.
    pub fixed_best: Option<f64>,
    /// Independent sub-streams; sample `i` of partition `p` uses stream `p`.
    pub partitions: usize,
}

impl ProbeConfig {
    pub fn new(rule: Rule) -> Self {
        Self {
            rule,
            n_samples: 1_000_000,
            lower: -5.0,
            upper: 10.0,
            resolution: 0.01,
            t_fraction: 0.5,
            budget: 500,
            seed: 0,
            gamma: GammaChoice::Claimed,
            fixed_best: None,
            partitions: 1,
        }
    }

    pub fn iteration(&self) -> usize {
        ((self.t_fraction * self.budget as f64).round() as usize).clamp(1, self.budget)
    }

    fn validate(&self) -> Result<SearchSpace, ProbeError> {
        if self.n_samples < MIN_PROBE_SAMPLES {
            return Err(ProbeError::TooFewSamples(self.n_samples));
        }
        if !(self.resolution > 0.0 && self.resolution <= 1.0) {
            return Err(ProbeError::Resolution(self.resolution));
        }
        if !(0.0..=1.0).contains(&self.t_fraction) {
            return Err(ProbeError::TFraction(self.t_fraction));
        }
        if self.budget == 0 {
            return Err(ProbeError::Budget);
        }
        if self.partitions == 0 {
            return Err(ProbeError::Partitions);
        }
        Ok(SearchSpace::new(1, self.lower, self.upper).expect("validated domain"))
    }
}

/// Fixed-width histogram over the domain; samples outside it are tallied
/// separately.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalPdf {
    pub bin_edges: Vec<f64>,
    pub mass: Vec<f64>,
    pub n_samples: usize,
    pub out_of_bounds_low: f64,
    pub out_of_bounds_high: f64,
}

pub const HISTOGRAM_CSV_HEADER: &str = "bin_lo,bin_hi,mass";

impl EmpiricalPdf {
    pub fn in_range_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{HISTOGRAM_CSV_HEADER}")?;
        for (i, m) in self.mass.iter().enumerate() {
            writeln!(out, "{},{},{}", self.bin_edges[i], self.bin_edges[i + 1], m)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiasMetrics {
    pub mean: f64,
    pub median: f64,
    pub oob_fraction: f64,
    /// Share of in-range samples above 0.
    pub positive_mass: f64,
    /// Share of in-range samples above the domain midpoint.
    pub midpoint_mass: f64,
    pub skew_proxy: f64,
    pub n_in_range: usize,
}

impl BiasMetrics {
    /// Binomial standard error of `positive_mass`.
    pub fn positive_mass_se(&self) -> f64 {
        binomial_se(self.positive_mass, self.n_in_range)
    }

    pub fn oob_se(&self, n_samples: usize) -> f64 {
        binomial_se(self.oob_fraction, n_samples)
    }
}

fn binomial_se(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n.max(1) as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeResult {
    pub config: ProbeConfig,
    pub iteration: usize,
    pub pdf: EmpiricalPdf,
    pub metrics: BiasMetrics,
}

#[derive(Debug, Clone, Default)]
struct Tally {
    counts: Vec<u64>,
    low: u64,
    high: u64,
    positive: u64,
    above_mid: u64,
    samples: Vec<f64>,
}

fn sample_once<R: Rng>(cfg: &ProbeConfig, t: usize, rng: &mut R) -> f64 {
    let (lo, hi, horizon) = (cfg.lower, cfg.upper, cfg.budget);
    let uniform = |rng: &mut R| lo + (hi - lo) * rng.random::<f64>();
    let x = [uniform(rng)];
    let best = [cfg.fixed_best.unwrap_or_else(|| uniform(rng))];
    let next = match cfg.rule {
        Rule::One => {
            let a1 = coeff_alpha1(t, horizon, rng.random());
            update_rule_1(&x, &best, a1, rng.random())
        }
        Rule::Two => {
            let a2 = coeff_alpha2(t, horizon, rng.random());
            let (r7, r8, r9) = (rng.random(), rng.random(), rng.random());
            update_rule_2(&x, &best, a2, r7, r8, r9)
        }
        Rule::Three => {
            let a3 = coeff_alpha3(t, horizon, rng.random(), rng.random());
            let (r12, r13) = (rng.random(), rng.random());
            update_rule_3(&x, &best, a3, r12, r13)
        }
        Rule::Four => {
            let a3 = coeff_alpha3(t, horizon, rng.random(), rng.random());
            update_rule_4(&x, &best, a3, cfg.gamma.value(t, horizon), rng.random())
        }
    };
    next[0]
}

fn run_partition(cfg: &ProbeConfig, t: usize, n_bins: usize, partition: usize, n: usize) -> Tally {
    let mut rng = run_rng(derive_seed(cfg.seed, partition as u64));
    let width = (cfg.upper - cfg.lower) / n_bins as f64;
    let mid = 0.5 * (cfg.lower + cfg.upper);
    let mut tally = Tally { counts: vec![0; n_bins], samples: Vec::with_capacity(n), ..Tally::default() };
    for _ in 0..n {
        let y = sample_once(cfg, t, &mut rng);
        tally.samples.push(y);
        if y < cfg.lower {
            tally.low += 1;
        } else if y > cfg.upper || y.is_nan() {
            tally.high += 1;
        } else {
            let bin = (((y - cfg.lower) / width) as usize).min(n_bins - 1);
            tally.counts[bin] += 1;
            tally.positive += u64::from(y > 0.0);
            tally.above_mid += u64::from(y > mid);
        }
    }
    tally
}

fn median_of(mut v: Vec<f64>) -> f64 {
    let n = v.len();
    let mid = n / 2;
    let (_, &mut hi, _) = v.select_nth_unstable_by(mid, f64::total_cmp);
    if n % 2 == 1 {
        hi
    } else {
        let lo = v[..mid].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        0.5 * (lo + hi)
    }
}

/// Monte-Carlo distribution of one update rule's output coordinate.
pub fn probe_update_distribution(cfg: &ProbeConfig) -> Result<ProbeResult, ProbeError> {
    cfg.validate()?;
    let t = cfg.iteration();
    let n_bins = (1.0 / cfg.resolution).round().max(1.0) as usize;
    let parts = cfg.partitions;
    let tallies: Vec<Tally> = (0..parts)
        .map(|p| {
            let n = cfg.n_samples / parts + usize::from(p < cfg.n_samples % parts);
            run_partition(cfg, t, n_bins, p, n)
        })
        .collect();

    let mut total = Tally { counts: vec![0; n_bins], ..Tally::default() };
    for tally in tallies {
        for (c, d) in total.counts.iter_mut().zip(&tally.counts) {
            *c += d;
        }
        total.low += tally.low;
        total.high += tally.high;
        total.positive += tally.positive;
        total.above_mid += tally.above_mid;
        total.samples.extend(tally.samples);
    }

    let n = cfg.n_samples as f64;
    let width = (cfg.upper - cfg.lower) / n_bins as f64;
    let pdf = EmpiricalPdf {
        bin_edges: (0..=n_bins).map(|i| cfg.lower + i as f64 * width).collect(),
        mass: total.counts.iter().map(|&c| c as f64 / n).collect(),
        n_samples: cfg.n_samples,
        out_of_bounds_low: total.low as f64 / n,
        out_of_bounds_high: total.high as f64 / n,
    };
    let n_in = total.counts.iter().sum::<u64>();
    let mean = total.samples.iter().sum::<f64>() / n;
    let median = median_of(total.samples);
    let share = |k: u64| if n_in == 0 { 0.0 } else { k as f64 / n_in as f64 };
    let metrics = BiasMetrics {
        mean,
        median,
        oob_fraction: (total.low + total.high) as f64 / n,
        positive_mass: share(total.positive),
        midpoint_mass: share(total.above_mid),
        skew_proxy: mean - median,
        n_in_range: n_in as usize,
    };
    Ok(ProbeResult { config: *cfg, iteration: t, pdf, metrics })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(rule: Rule) -> ProbeConfig {
        ProbeConfig { n_samples: 50_000, ..ProbeConfig::new(rule) }
    }

    #[test]
    fn mass_is_conserved() {
        for rule in Rule::ALL {
            let r = probe_update_distribution(&small(rule)).unwrap();
            let p = &r.pdf;
            assert_eq!(p.mass.len(), 100);
            assert!((p.bin_edges[1] - p.bin_edges[0] - 0.15).abs() < 1e-12);
            assert!((p.in_range_mass() + p.out_of_bounds_low + p.out_of_bounds_high - 1.0).abs() < 1e-12);
            assert!((0.0..=1.0).contains(&r.metrics.oob_fraction));
        }
    }

    #[test]
    fn deterministic_and_partition_stable() {
        let cfg = ProbeConfig { partitions: 4, ..small(Rule::Three) };
        assert_eq!(probe_update_distribution(&cfg).unwrap(), probe_update_distribution(&cfg).unwrap());
        // reversing the merge order gives the same counts
        let t = cfg.iteration();
        let parts: Vec<Tally> = (0..4).map(|p| run_partition(&cfg, t, 100, p, 12_500)).collect();
        let sum = |it: &mut dyn Iterator<Item = &Tally>| {
            it.fold(vec![0u64; 100], |mut acc, t| {
                acc.iter_mut().zip(&t.counts).for_each(|(a, c)| *a += c);
                acc
            })
        };
        assert_eq!(sum(&mut parts.iter()), sum(&mut parts.iter().rev()));
        let merged = probe_update_distribution(&cfg).unwrap();
        let from_parts = sum(&mut parts.iter());
        assert_eq!(merged.pdf.mass, from_parts.iter().map(|&c| c as f64 / 50_000.0).collect::<Vec<_>>());
    }

    #[test]
    fn rule1_symmetric_about_pinned_best() {
        let cfg = ProbeConfig { lower: -5.0, upper: 5.0, fixed_best: Some(0.0), n_samples: 200_000, ..ProbeConfig::new(Rule::One) };
        let r = probe_update_distribution(&cfg).unwrap();
        // sign of the step is a fair coin, so the share above 0 is 1/2
        let se = r.metrics.positive_mass_se();
        assert!((r.metrics.positive_mass - 0.5).abs() <= 3.0 * se, "{:?}", r.metrics);
    }

    #[test]
    fn validation() {
        assert_eq!(
            probe_update_distribution(&ProbeConfig { n_samples: 10, ..ProbeConfig::new(Rule::One) }),
            Err(ProbeError::TooFewSamples(10))
        );
        assert!(matches!(
            probe_update_distribution(&ProbeConfig { resolution: 0.0, ..small(Rule::One) }),
            Err(ProbeError::Resolution(_))
        ));
        assert_eq!(ProbeConfig { t_fraction: 0.0, ..small(Rule::One) }.iteration(), 1);
        assert_eq!(ProbeConfig::new(Rule::One).iteration(), 250);
    }

    #[test]
    fn histogram_csv() {
        let r = probe_update_distribution(&small(Rule::Four)).unwrap();
        let mut out = Vec::new();
        r.pdf.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("bin_lo,bin_hi,mass\n-5,"));
        assert_eq!(text.lines().count(), 101);
    }
}
