use std::io::{self, Write};

use serde::Serialize;

use crate::HarnessError;

pub const BANDS_CSV_HEADER: &str = "min,q1,median,q3,max";
pub const MIN_BAND_RUNS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandRow {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// Per-iteration quartiles and envelope over runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceBands {
    pub rows: Vec<BandRow>,
}

impl ConvergenceBands {
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{BANDS_CSV_HEADER}")?;
        for r in &self.rows {
            writeln!(out, "{},{},{},{},{}", r.min, r.q1, r.median, r.q3, r.max)?;
        }
        Ok(())
    }
}

/// Percentile of sorted data: position `q (n - 1)`, averaging the two
/// neighbours when it falls between them.
fn midpoint_percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    if lo == hi {
        sorted[lo]
    } else {
        0.5 * (sorted[lo] + sorted[hi])
    }
}

pub fn convergence_bands(curves: &[Vec<f64>]) -> Result<ConvergenceBands, HarnessError> {
    if curves.len() < MIN_BAND_RUNS {
        return Err(HarnessError::Bands(format!("need at least {MIN_BAND_RUNS} runs, got {}", curves.len())));
    }
    let len = curves[0].len();
    if curves.iter().any(|c| c.len() != len) {
        return Err(HarnessError::Bands("curves differ in length".into()));
    }
    let rows = (0..len)
        .map(|t| {
            let mut col: Vec<f64> = curves.iter().map(|c| c[t]).collect();
            col.sort_by(f64::total_cmp);
            BandRow {
                min: col[0],
                q1: midpoint_percentile(&col, 0.25),
                median: midpoint_percentile(&col, 0.5),
                q3: midpoint_percentile(&col, 0.75),
                max: col[col.len() - 1],
            }
        })
        .collect();
    Ok(ConvergenceBands { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let same = vec![vec![3.0, 2.0, 1.0]; 5];
        for r in convergence_bands(&same).unwrap().rows {
            assert!(r.min == r.q1 && r.q1 == r.median && r.median == r.q3 && r.q3 == r.max);
        }
        let four: Vec<Vec<f64>> = (1..=4).map(|v| vec![v as f64; 6]).collect();
        let b = convergence_bands(&four).unwrap();
        assert!(b.rows.iter().all(|r| r.median == 2.5));
        assert_eq!(b.rows.len(), 6);
        assert!(convergence_bands(&four[..3]).is_err());
        let mut out = Vec::new();
        b.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 7);
        assert!(text.lines().skip(1).all(|l| l.split(',').count() == 5));
    }

    proptest! {
        #[test]
        fn ordering_holds(steps in prop::collection::vec(prop::collection::vec(0.0f64..10.0, 12), 4..12)) {
            let curves: Vec<Vec<f64>> = steps.iter().map(|s| {
                let mut v = 100.0;
                s.iter().map(|d| { v -= d; v }).collect()
            }).collect();
            for r in convergence_bands(&curves).unwrap().rows {
                prop_assert!(r.min <= r.q1 && r.q1 <= r.median && r.median <= r.q3 && r.q3 <= r.max);
            }
        }
    }
}
