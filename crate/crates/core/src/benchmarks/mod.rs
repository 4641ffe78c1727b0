//! Benchmark functions with shift and rotation transforms.
//!
//! An [`ObjectiveSpec`] evaluates `f_base(Q (x - s)) + bias`; absent
//! transforms are the identity. Suites group specs into the basic, shifted and
//! shift-rotated categories.

mod functions;
mod rotation;
mod suite;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use functions::{elliptic_weight, BaseFunction};
pub use rotation::{mat_vec, orthogonality_error, random_orthogonal};
pub use suite::{build_suite, FunctionManifest, Suite, SuiteKind, SuiteManifest, MAX_VARIANTS};

use crate::optimizer::Objective;
use crate::space::SpaceError;

/// Tolerance on `max |Q^T Q - I|` for accepted rotations.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum BenchmarkError {
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("rotation is not orthogonal (max deviation {0:e})")]
    NotOrthogonal(f64),
    #[error("suite '{suite}' asks for {requested} functions but at most {available} are available")]
    TooManyFunctions {
        suite: String,
        requested: usize,
        available: usize,
    },
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("manifest error: {0}")]
    Manifest(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rotation {
    /// Seed it was generated from, when known.
    pub seed: Option<u64>,
    /// Row-major orthogonal matrix.
    pub matrix: Vec<Vec<f64>>,
}

impl Rotation {
    pub fn from_seed(dim: usize, seed: u64) -> Self {
        Self {
            seed: Some(seed),
            matrix: random_orthogonal(dim, seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveSpec {
    pub base: BaseFunction,
    pub dim: usize,
    pub shift: Option<Vec<f64>>,
    pub rotation: Option<Rotation>,
    pub bias: f64,
}

impl ObjectiveSpec {
    pub fn plain(base: BaseFunction, dim: usize) -> Self {
        Self {
            base,
            dim,
            shift: None,
            rotation: None,
            bias: 0.0,
        }
    }

    pub fn with_shift(mut self, shift: Vec<f64>) -> Self {
        self.shift = Some(shift);
        self
    }

    pub fn with_rotation(mut self, rotation: Rotation) -> Self {
        self.rotation = Some(rotation);
        self
    }

    pub fn with_bias(mut self, bias: f64) -> Self {
        self.bias = bias;
        self
    }

    pub fn validate(&self) -> Result<(), BenchmarkError> {
        if let Some(s) = &self.shift {
            if s.len() != self.dim {
                return Err(BenchmarkError::DimensionMismatch {
                    expected: self.dim,
                    got: s.len(),
                });
            }
        }
        if let Some(r) = &self.rotation {
            if r.matrix.len() != self.dim || r.matrix.iter().any(|row| row.len() != self.dim) {
                return Err(BenchmarkError::DimensionMismatch {
                    expected: self.dim,
                    got: r.matrix.len(),
                });
            }
            let err = orthogonality_error(&r.matrix);
            if err.is_nan() || err > ORTHOGONALITY_TOLERANCE {
                return Err(BenchmarkError::NotOrthogonal(err));
            }
        }
        Ok(())
    }

    /// Transformed coordinates `Q (x - s)`.
    pub fn transform(&self, x: &[f64]) -> Vec<f64> {
        let z: Vec<f64> = match &self.shift {
            Some(s) => x.iter().zip(s).map(|(a, b)| a - b).collect(),
            None => x.to_vec(),
        };
        match &self.rotation {
            Some(r) => mat_vec(&r.matrix, &z),
            None => z,
        }
    }
}

/// `f_base(Q (x - s)) + bias`.
pub fn evaluate_objective(spec: &ObjectiveSpec, x: &[f64]) -> Result<f64, BenchmarkError> {
    if x.len() != spec.dim {
        return Err(BenchmarkError::DimensionMismatch {
            expected: spec.dim,
            got: x.len(),
        });
    }
    Ok(spec.base.eval(&spec.transform(x)) + spec.bias)
}

impl Objective for ObjectiveSpec {
    /// Dimension mismatches evaluate to NaN, which the run loop records as
    /// `+inf`.
    fn value(&self, x: &[f64]) -> f64 {
        evaluate_objective(self, x).unwrap_or(f64::NAN)
    }
}
