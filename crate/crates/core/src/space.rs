use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceError {
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    InvertedBounds { lower: f64, upper: f64 },
    #[error("bounds must be finite (got [{lower}, {upper}])")]
    NonFiniteBounds { lower: f64, upper: f64 },
    #[error("dimension must be at least 1")]
    ZeroDimension,
}

/// Box-shaped decision domain with the same scalar bounds on every coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    dim: usize,
    lower: f64,
    upper: f64,
}

impl SearchSpace {
    pub fn new(dim: usize, lower: f64, upper: f64) -> Result<Self, SpaceError> {
        if dim == 0 {
            return Err(SpaceError::ZeroDimension);
        }
        if !lower.is_finite() || !upper.is_finite() {
            return Err(SpaceError::NonFiniteBounds { lower, upper });
        }
        if lower > upper {
            return Err(SpaceError::InvertedBounds { lower, upper });
        }
        Ok(Self { dim, lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim && x.iter().all(|&v| v >= self.lower && v <= self.upper)
    }

    /// Same bounds, different dimensionality.
    pub fn with_dim(&self, dim: usize) -> Result<Self, SpaceError> {
        Self::new(dim, self.lower, self.upper)
    }

    /// Re-check the invariants, e.g. after deserialization.
    pub fn validate(&self) -> Result<(), SpaceError> {
        Self::new(self.dim, self.lower, self.upper).map(|_| ())
    }
}
