/// Ranks starting at 1 in ascending order; tied values share the mean rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let rank = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

/// Sum of `t^3 - t` over groups of tied values.
pub fn tie_correction_term(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut total = 0.0;
    let mut start = 0;
    while start < sorted.len() {
        let end = start + sorted[start..].iter().take_while(|&&v| v == sorted[start]).count();
        let t = (end - start) as f64;
        total += t * t * t - t;
        start = end;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ties_share_mean_rank() {
        assert_eq!(average_ranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
        assert_eq!(average_ranks(&[5.0; 4]), vec![2.5; 4]);
        assert_eq!(tie_correction_term(&[3.0, 1.0, 3.0, 2.0]), 6.0);
        assert_eq!(tie_correction_term(&[1.0, 2.0]), 0.0);
    }

    proptest! {
        #[test]
        fn ranks_sum_exactly(v in prop::collection::vec(-3i32..3, 1..40)) {
            let v: Vec<f64> = v.into_iter().map(f64::from).collect();
            let n = v.len() as f64;
            prop_assert_eq!(average_ranks(&v).iter().sum::<f64>(), n * (n + 1.0) / 2.0);
        }
    }
}
