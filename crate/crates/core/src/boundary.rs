use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::space::SearchSpace;

/// Correction applied to a proposed position before evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryPolicy {
    /// Leave the proposal untouched; positions may leave the domain.
    None,
    #[default]
    Clamp,
    /// Fold the overshoot back across the violated bound once, then clamp.
    Reflect,
    /// Redraw each violated coordinate uniformly in the domain.
    Resample,
}

impl BoundaryPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundaryPolicy::None => "none",
            BoundaryPolicy::Clamp => "clamp",
            BoundaryPolicy::Reflect => "reflect",
            BoundaryPolicy::Resample => "resample",
        }
    }
}

impl fmt::Display for BoundaryPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundaryPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(BoundaryPolicy::None),
            "clamp" => Ok(BoundaryPolicy::Clamp),
            "reflect" => Ok(BoundaryPolicy::Reflect),
            "resample" => Ok(BoundaryPolicy::Resample),
            other => Err(format!("unknown boundary policy '{other}'")),
        }
    }
}

/// Apply `policy` in place. Only `Resample` consumes random draws, one per
/// violated coordinate in coordinate order.
pub fn apply_boundary<R: Rng + ?Sized>(
    position: &mut [f64],
    space: &SearchSpace,
    policy: BoundaryPolicy,
    rng: &mut R,
) {
    let (lo, hi) = (space.lower(), space.upper());
    match policy {
        BoundaryPolicy::None => {}
        BoundaryPolicy::Clamp => {
            for v in position.iter_mut() {
                *v = v.clamp(lo, hi);
            }
        }
        BoundaryPolicy::Reflect => {
            for v in position.iter_mut() {
                if *v > hi {
                    *v = hi - (*v - hi);
                } else if *v < lo {
                    *v = lo + (lo - *v);
                }
                *v = v.clamp(lo, hi);
            }
        }
        BoundaryPolicy::Resample => {
            for v in position.iter_mut() {
                if !(*v >= lo && *v <= hi) {
                    *v = rng.random::<f64>() * (hi - lo) + lo;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::run_rng;
    use proptest::prelude::*;

    fn space() -> SearchSpace {
        SearchSpace::new(1, -5.0, 10.0).unwrap()
    }

    fn applied(x: f64, policy: BoundaryPolicy) -> f64 {
        let mut p = [x];
        apply_boundary(&mut p, &space(), policy, &mut run_rng(0));
        p[0]
    }

    #[test]
    fn clamp_and_reflect_examples() {
        assert_eq!(applied(12.0, BoundaryPolicy::Clamp), 10.0);
        assert_eq!(applied(12.0, BoundaryPolicy::Reflect), 8.0);
        assert_eq!(applied(-7.0, BoundaryPolicy::Reflect), -3.0);
        // overshoot larger than the domain folds once and is then clamped
        assert_eq!(applied(40.0, BoundaryPolicy::Reflect), -5.0);
        assert_eq!(applied(12.0, BoundaryPolicy::None), 12.0);
    }

    #[test]
    fn interior_point_is_fixed_by_every_policy() {
        for policy in [
            BoundaryPolicy::None,
            BoundaryPolicy::Clamp,
            BoundaryPolicy::Reflect,
            BoundaryPolicy::Resample,
        ] {
            assert_eq!(applied(3.0, policy), 3.0);
        }
    }

    #[test]
    fn parse_round_trip() {
        for p in ["none", "clamp", "reflect", "resample"] {
            assert_eq!(p.parse::<BoundaryPolicy>().unwrap().as_str(), p);
        }
        assert!("wrap".parse::<BoundaryPolicy>().is_err());
    }

    proptest! {
        #[test]
        fn corrected_positions_lie_in_bounds(
            xs in proptest::collection::vec(-1e6f64..1e6, 1..8),
            policy in prop_oneof![
                Just(BoundaryPolicy::Clamp),
                Just(BoundaryPolicy::Reflect),
                Just(BoundaryPolicy::Resample)
            ],
            seed in any::<u64>(),
        ) {
            let space = SearchSpace::new(xs.len(), -5.0, 10.0).unwrap();
            let mut p = xs.clone();
            apply_boundary(&mut p, &space, policy, &mut run_rng(seed));
            prop_assert!(space.contains(&p));
        }
    }
}
