//! Control coefficients of ETO, each as a free function of `(t, T)` and the
//! uniform draws it consumes.
//!
//! All formulas are evaluated literally, including the `d1 / d2` ratio, so the
//! redundancies they contain can be measured rather than assumed. The
//! `*_simplified` variants are the closed forms obtained by substituting
//! `d1 / d2 = -1`.

use serde::{Deserialize, Serialize};

use super::EtoError;

/// `(d1, d2)` with `d1 = 0.1 exp(-0.01 t) cos(0.5 T (1 - t/T))` and `d2 = -d1`.
pub fn oscillation_pair(t: usize, horizon: usize) -> (f64, f64) {
    let (t, total) = (t as f64, horizon as f64);
    let d1 = 0.1 * (-0.01 * t).exp() * (0.5 * total * (1.0 - t / total)).cos();
    (d1, -d1)
}

/// `d1 / d2`, computed from the pair. Exactly `-1` whenever `d1 != 0`.
pub fn oscillation_ratio(t: usize, horizon: usize) -> f64 {
    let (d1, d2) = oscillation_pair(t, horizon);
    d1 / d2
}

fn check_iteration(t: usize, horizon: usize) -> Result<(), EtoError> {
    if t == 0 || horizon == 0 || t > horizon {
        return Err(EtoError::IterationOutOfRange { t, horizon });
    }
    Ok(())
}

/// Coefficient multiplying `r1` in `mu(t)`: `0.01 (sqrt(t/T))^tan(d1/d2)`.
pub fn mode_scale(t: usize, horizon: usize) -> Result<f64, EtoError> {
    check_iteration(t, horizon)?;
    let ratio = oscillation_ratio(t, horizon);
    Ok(0.01 * (t as f64 / horizon as f64).sqrt().powf(ratio.tan()))
}

/// `mu(t) = 0.01 r1 (sqrt(t/T))^tan(d1/d2)`.
///
/// `t = 0` is rejected: the base would be zero under a negative exponent.
pub fn mode_coefficient(t: usize, horizon: usize, r1: f64) -> Result<f64, EtoError> {
    Ok(r1 * mode_scale(t, horizon)?)
}

/// `P[mu(t) > 1]` for `r1 ~ U(0, 1)`.
pub fn mode_switch_probability(t: usize, horizon: usize) -> Result<f64, EtoError> {
    mode_switch_probability_above(t, horizon, 1.0)
}

/// `P[mu(t) > threshold] = max(0, 1 - threshold / c(t))` where `c(t)` is
/// [`mode_scale`].
pub fn mode_switch_probability_above(t: usize, horizon: usize, threshold: f64) -> Result<f64, EtoError> {
    let c = mode_scale(t, horizon)?;
    if c <= threshold.max(0.0) {
        return Ok(if threshold < 0.0 { 1.0 } else { 0.0 });
    }
    Ok((1.0 - threshold / c).clamp(0.0, 1.0))
}

/// Last iteration of the first phase: `floor(1.2 + T / 2.25)`.
pub fn phase_boundary(horizon: usize) -> usize {
    (1.2 + horizon as f64 / 2.25).floor() as usize
}

/// `alpha1 = 3 r4 (t/T - 0.85) exp(d1/d2 - 1)`.
pub fn coeff_alpha1(t: usize, horizon: usize, r4: f64) -> f64 {
    let ratio = oscillation_ratio(t, horizon);
    3.0 * r4 * (t as f64 / horizon as f64 - 0.85) * (ratio - 1.0).exp()
}

/// `3 e^-2`, the constant `alpha1` collapses to.
pub fn alpha1_constant() -> f64 {
    3.0 * (-2.0f64).exp()
}

pub fn coeff_alpha1_simplified(t: usize, horizon: usize, r4: f64) -> f64 {
    alpha1_constant() * r4 * (t as f64 / horizon as f64 - 0.85)
}

/// `alpha2 = 3 r6 (t/T - 0.85) exp(|d1/d2| - 1.3)`.
pub fn coeff_alpha2(t: usize, horizon: usize, r6: f64) -> f64 {
    let ratio = oscillation_ratio(t, horizon);
    3.0 * r6 * (t as f64 / horizon as f64 - 0.85) * (ratio.abs() - 1.3).exp()
}

/// `3 e^-0.3`, the constant `alpha2` collapses to.
pub fn alpha2_constant() -> f64 {
    3.0 * (-0.3f64).exp()
}

pub fn coeff_alpha2_simplified(t: usize, horizon: usize, r6: f64) -> f64 {
    alpha2_constant() * r6 * (t as f64 / horizon as f64 - 0.85)
}

/// `alpha3 = r10 exp(tanh(1.5 (-t/T - 0.75) - r11))`.
pub fn coeff_alpha3(t: usize, horizon: usize, r10: f64, r11: f64) -> f64 {
    let s = t as f64 / horizon as f64;
    r10 * (1.5 * (-s - 0.75) - r11).tanh().exp()
}

/// `gamma = exp(tan(d1/d2))`, literally. With `d1/d2 = -1` this is
/// `exp(tan(-1)) ~ 0.2107` at every iteration.
pub fn coeff_gamma(t: usize, horizon: usize) -> f64 {
    oscillation_ratio(t, horizon).tan().exp()
}

/// `exp(tan(1)) ~ 4.7465`: the value obtained by substituting `|d1/d2| = 1`.
pub fn gamma_claimed() -> f64 {
    1.0f64.tan().exp()
}

/// Which value of `gamma` an update-4 evaluation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum GammaChoice {
    /// `exp(tan(d1/d2))` as written.
    #[default]
    Formula,
    /// The constant `exp(tan(1))`.
    Claimed,
}

impl GammaChoice {
    pub fn value(&self, t: usize, horizon: usize) -> f64 {
        match self {
            GammaChoice::Formula => coeff_gamma(t, horizon),
            GammaChoice::Claimed => gamma_claimed(),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            GammaChoice::Formula => "formula",
            GammaChoice::Claimed => "claimed",
        }
    }
}

impl std::str::FromStr for GammaChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "formula" => Ok(GammaChoice::Formula),
            "claimed" => Ok(GammaChoice::Claimed),
            other => Err(format!("unknown gamma choice '{other}' (expected formula|claimed)")),
        }
    }
}

/// Contracted bounds around the best-so-far:
/// `x_best +/- r2 (1 - t/T) |r3 x_best - x|`, componentwise.
pub fn contracted_bounds(
    x_best: &[f64],
    x: &[f64],
    t: usize,
    horizon: usize,
    r2: f64,
    r3: f64,
) -> (Vec<f64>, Vec<f64>) {
    contracted_bounds_with(x_best, x, t, horizon, &[r2], &[r3])
}

/// As [`contracted_bounds`], with either scalar (length-1) or per-coordinate
/// draws.
pub fn contracted_bounds_with(
    x_best: &[f64],
    x: &[f64],
    t: usize,
    horizon: usize,
    r2: &[f64],
    r3: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let decay = 1.0 - t as f64 / horizon as f64;
    let mut lower = Vec::with_capacity(x.len());
    let mut upper = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        let radius = pick(r2, j) * decay * (pick(r3, j) * x_best[j] - x[j]).abs();
        lower.push(x_best[j] - radius);
        upper.push(x_best[j] + radius);
    }
    (lower, upper)
}

/// Scalar draws broadcast; per-coordinate draws are indexed.
pub(crate) fn pick(draws: &[f64], j: usize) -> f64 {
    if draws.len() == 1 {
        draws[0]
    } else {
        draws[j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d2_is_exactly_minus_d1() {
        for horizon in [1usize, 7, 100, 500, 1000] {
            for t in 1..=horizon {
                let (d1, d2) = oscillation_pair(t, horizon);
                assert_eq!(d2, -d1);
                assert_eq!(d1 / d2, -1.0);
            }
        }
    }

    #[test]
    fn d1_at_horizon_has_unit_cosine() {
        let (d1, _) = oscillation_pair(500, 500);
        assert_eq!(d1, 0.1 * (-5.0f64).exp());
    }

    #[test]
    fn d1_at_first_iteration_matches_high_precision_value() {
        // 0.1 * exp(-0.01) * cos(249.5) evaluated with 40 significant digits
        let expected = -0.025_128_334_456_311_61;
        let (d1, _) = oscillation_pair(1, 500);
        assert!((d1 - expected).abs() < 1e-14, "{d1}");
    }

    #[test]
    fn mu_at_first_iteration() {
        let mu = mode_coefficient(1, 500, 1.0).unwrap();
        assert!((mu - 1.2639).abs() < 1e-3, "{mu}");
        assert_eq!(mode_coefficient(1, 500, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn mu_at_horizon_is_one_percent_of_r1() {
        for horizon in [1usize, 10, 500] {
            let mu = mode_coefficient(horizon, horizon, 0.37).unwrap();
            assert!((mu - 0.0037).abs() < 1e-15);
        }
    }

    #[test]
    fn mu_rejects_iteration_zero() {
        assert!(matches!(
            mode_coefficient(0, 500, 0.5),
            Err(EtoError::IterationOutOfRange { t: 0, .. })
        ));
    }

    #[test]
    fn switch_probability_values() {
        let p1 = mode_switch_probability(1, 500).unwrap();
        assert!((p1 - 0.2088).abs() < 1e-3, "{p1}");
        assert_eq!(mode_switch_probability(500, 500).unwrap(), 0.0);
    }

    #[test]
    fn phase_boundary_values() {
        assert_eq!(phase_boundary(500), 223);
        assert_eq!(phase_boundary(1), 1);
        let mut prev = 0;
        for horizon in 1..5000 {
            let b = phase_boundary(horizon);
            assert!(b >= prev);
            prev = b;
        }
    }

    #[test]
    fn alpha_constants() {
        assert!((alpha1_constant() - 0.4060).abs() < 1e-4);
        assert!((alpha2_constant() - 2.2225).abs() < 1e-4);
    }

    #[test]
    fn alpha1_sign() {
        assert_eq!(coeff_alpha1(85, 100, 0.7), 0.0);
        assert!(coeff_alpha1(50, 100, 0.7) < 0.0);
        assert!(coeff_alpha1(90, 100, 0.7) > 0.0);
    }

    #[test]
    fn alpha_ratio_is_e_to_1_7() {
        let (a1, a2) = (coeff_alpha1(10, 100, 0.3), coeff_alpha2(10, 100, 0.3));
        assert!((a2.abs() / a1.abs() - 1.7f64.exp()).abs() < 1e-12);
        assert_eq!(coeff_alpha2(85, 100, 0.9), 0.0);
    }

    #[test]
    fn simplified_forms_agree() {
        for t in 1..=500 {
            for r in [0.0, 0.1, 0.5, 0.99] {
                assert!((coeff_alpha1(t, 500, r) - coeff_alpha1_simplified(t, 500, r)).abs() < 1e-12);
                assert!((coeff_alpha2(t, 500, r) - coeff_alpha2_simplified(t, 500, r)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn alpha3_range_at_expected_draws() {
        assert!((coeff_alpha3(1, 500, 0.5, 0.5) - 0.1981).abs() < 1e-3);
        assert!((coeff_alpha3(500, 500, 0.5, 0.5) - 0.1846).abs() < 1e-3);
        assert_eq!(coeff_alpha3(10, 500, 0.0, 0.3), 0.0);
    }

    #[test]
    fn gamma_is_constant_and_differs_from_the_claim() {
        let g: Vec<f64> = (1..=500).map(|t| coeff_gamma(t, 500)).collect();
        let (lo, hi) = g.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
        assert_eq!(hi - lo, 0.0);
        assert!((g[0] - 0.2107).abs() < 1e-3);
        assert!((gamma_claimed() - 4.7465).abs() < 1e-3);
        assert_eq!(GammaChoice::Claimed.value(3, 500), gamma_claimed());
    }

    #[test]
    fn contracted_bounds_examples() {
        let (lo, hi) = contracted_bounds(&[1.0], &[0.0], 50, 100, 1.0, 1.0);
        assert_eq!((lo, hi), (vec![0.5], vec![1.5]));
        let (lo, hi) = contracted_bounds(&[1.0, -2.0], &[4.0, 3.0], 100, 100, 0.8, 0.2);
        assert_eq!((lo, hi), (vec![1.0, -2.0], vec![1.0, -2.0]));
        let (lo, hi) = contracted_bounds(&[2.0], &[1.0], 10, 100, 0.9, 0.5);
        assert_eq!((lo, hi), (vec![2.0], vec![2.0]));
    }
}
