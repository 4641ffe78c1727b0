use etoscope_core::eto::mode_switch_probability;

/// Closed-form `P[mu(t) > 1]` for `t = 1..=T`.
pub fn switch_probability_curve(horizon: usize) -> Vec<(usize, f64)> {
    let horizon = horizon.max(1);
    (1..=horizon)
        .map(|t| (t, mode_switch_probability(t, horizon).expect("t within [1, T]")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_monotone() {
        let c = switch_probability_curve(500);
        assert_eq!(c.len(), 500);
        assert!((c[0].1 - 0.2088).abs() < 1e-3);
        assert_eq!(c[499], (500, 0.0));
        assert!(c.windows(2).all(|w| w[1].1 <= w[0].1));
    }
}
