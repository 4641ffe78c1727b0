use crate::StatsError;

fn check(sample: &[f64]) -> Result<(), StatsError> {
    if sample.is_empty() {
        return Err(StatsError::Empty);
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return Err(StatsError::NonFiniteSample);
    }
    Ok(())
}

fn sorted(sample: &[f64]) -> Vec<f64> {
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    s
}

/// `(#{a > b} - #{a < b}) / (|a| |b|)` over all cross pairs, in O(n log n).
pub fn cliffs_delta(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    check(a)?;
    check(b)?;
    let (a, b) = (sorted(a), sorted(b));
    // walk a ascending; `lo` counts b < a_i and `hi` counts b <= a_i
    let (mut lo, mut hi) = (0usize, 0usize);
    let mut dominance: i64 = 0;
    for &x in &a {
        while lo < b.len() && b[lo] < x {
            lo += 1;
        }
        hi = hi.max(lo);
        while hi < b.len() && b[hi] <= x {
            hi += 1;
        }
        dominance += lo as i64 - (b.len() - hi) as i64;
    }
    Ok(dominance as f64 / (a.len() as f64 * b.len() as f64))
}

/// Quadratic definition of [`cliffs_delta`], kept as a reference.
pub fn cliffs_delta_brute_force(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    check(a)?;
    check(b)?;
    let mut dominance: i64 = 0;
    for x in a {
        for y in b {
            dominance += i64::from(x > y) - i64::from(x < y);
        }
    }
    Ok(dominance as f64 / (a.len() as f64 * b.len() as f64))
}

pub fn effect_size_r(z: f64, n_pairs: usize) -> f64 {
    assert!(n_pairs > 0, "effect size needs at least one pair");
    z.abs() / (n_pairs as f64).sqrt()
}

pub fn median(sample: &[f64]) -> Result<f64, StatsError> {
    check(sample)?;
    let s = sorted(sample);
    let mid = s.len() / 2;
    Ok(if s.len() % 2 == 1 { s[mid] } else { 0.5 * (s[mid - 1] + s[mid]) })
}

pub fn median_difference(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    Ok(median(a)? - median(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn documented_examples() {
        assert_eq!(cliffs_delta(&[1.0, 2.0], &[3.0, 4.0]).unwrap(), -1.0);
        assert_eq!(cliffs_delta(&[2.0, 1.0, 2.0], &[1.0, 2.0, 2.0]).unwrap(), 0.0);
        assert_eq!(cliffs_delta(&[1.0, 3.0], &[2.0, 4.0]).unwrap(), -0.5);
        assert_eq!(cliffs_delta(&[], &[1.0]), Err(StatsError::Empty));
        assert_eq!(effect_size_r(0.0, 10), 0.0);
        assert_eq!(effect_size_r(-5.0, 100), 0.5);
        assert_eq!(median_difference(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(), 0.0);
        assert_eq!(median_difference(&[1.0, 2.0, 3.0, 4.0], &[0.0]).unwrap(), 2.5);
    }

    #[test]
    fn dominance_ceiling_at_250() {
        let n = 250.0_f64;
        let z = (n * (n + 1.0) / 4.0) / (n * (n + 1.0) * (2.0 * n + 1.0) / 24.0).sqrt();
        assert!((effect_size_r(z, 250) - 0.867).abs() < 1e-3);
    }

    proptest! {
        #[test]
        fn fast_equals_brute_force(
            a in prop::collection::vec(-20i32..20, 1..60),
            b in prop::collection::vec(-20i32..20, 1..60),
        ) {
            let a: Vec<f64> = a.into_iter().map(f64::from).collect();
            let b: Vec<f64> = b.into_iter().map(f64::from).collect();
            let fast = cliffs_delta(&a, &b).unwrap();
            prop_assert_eq!(fast, cliffs_delta_brute_force(&a, &b).unwrap());
            prop_assert_eq!(fast, -cliffs_delta(&b, &a).unwrap());
            prop_assert!(fast.abs() <= 1.0);
        }
    }
}
