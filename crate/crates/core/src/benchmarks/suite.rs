use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use super::{BaseFunction, BenchmarkError, ObjectiveSpec, Rotation};
use crate::rng::derive_seed;
use crate::space::SearchSpace;

/// Each base function appears at most this many times in a suite; repeats
/// differ in bias (and in their random transforms).
pub const MAX_VARIANTS: usize = 3;

const VARIANT_BIAS: f64 = 100.0;

const MANIFEST_NOTE: &str = "Classic analytic functions standing in for an official competition suite. \
Function counts follow the Friedman block arithmetic: 10 functions x 25 runs = 250 blocks, \
29 functions x 25 runs = 725 blocks.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    Basic,
    Shifted,
    ShiftRotated,
}

impl SuiteKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteKind::Basic => "basic",
            SuiteKind::Shifted => "shifted",
            SuiteKind::ShiftRotated => "shift_rotated",
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "basic" => Ok(SuiteKind::Basic),
            "shifted" => Ok(SuiteKind::Shifted),
            "shift_rotated" => Ok(SuiteKind::ShiftRotated),
            other => Err(format!("unknown suite kind '{other}'")),
        }
    }
}

/// Functions of one suite at one dimensionality.
#[derive(Debug, Clone, PartialEq)]
pub struct Suite {
    pub name: String,
    pub kind: SuiteKind,
    pub seed: u64,
    pub space: SearchSpace,
    /// `(function name, spec)`, in suite order.
    pub functions: Vec<(String, ObjectiveSpec)>,
}

fn function_name(index: usize, base: BaseFunction) -> String {
    format!("F{:02}_{}", index + 1, base)
}

/// Build `n_functions` specs of `kind` at dimensionality `space.dim()`.
///
/// Function `j` uses base `j mod 10` and bias `100 * (j / 10)`. Shifts are
/// uniform in the central 80% of the domain; rotations come from
/// [`random_orthogonal`](super::random_orthogonal). Every random transform has
/// its own seed derived from `seed` and `j`.
pub fn build_suite(
    name: &str,
    kind: SuiteKind,
    n_functions: usize,
    space: SearchSpace,
    seed: u64,
) -> Result<Suite, BenchmarkError> {
    let available = BaseFunction::ALL.len() * MAX_VARIANTS;
    if n_functions > available {
        return Err(BenchmarkError::TooManyFunctions {
            suite: name.to_string(),
            requested: n_functions,
            available,
        });
    }
    let functions = (0..n_functions)
        .map(|j| {
            let entry = FunctionManifest::generate(j, kind, space, seed);
            let spec = entry.instantiate()?;
            Ok((entry.name, spec))
        })
        .collect::<Result<Vec<_>, BenchmarkError>>()?;
    Ok(Suite {
        name: name.to_string(),
        kind,
        seed,
        space,
        functions,
    })
}

/// Replayable description of one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionManifest {
    pub name: String,
    pub base: BaseFunction,
    pub dim: usize,
    /// Seed the shift was drawn from, if shifted.
    pub shift_seed: Option<u64>,
    pub shift: Option<Vec<f64>>,
    pub rotation_seed: Option<u64>,
    pub bias: f64,
}

impl FunctionManifest {
    fn generate(j: usize, kind: SuiteKind, space: SearchSpace, seed: u64) -> Self {
        let base = BaseFunction::ALL[j % BaseFunction::ALL.len()];
        let variant = j / BaseFunction::ALL.len();
        let shift_seed = derive_seed(seed, 2 * j as u64);
        let rotation_seed = derive_seed(seed, 2 * j as u64 + 1);
        let shift = match kind {
            SuiteKind::Basic => None,
            SuiteKind::Shifted | SuiteKind::ShiftRotated => {
                let margin = 0.1 * space.width();
                let (lo, hi) = (space.lower() + margin, space.upper() - margin);
                let mut rng = ChaCha8Rng::seed_from_u64(shift_seed);
                Some((0..space.dim()).map(|_| lo + rng.random::<f64>() * (hi - lo)).collect())
            }
        };
        Self {
            name: function_name(j, base),
            base,
            dim: space.dim(),
            shift_seed: shift.as_ref().map(|_| shift_seed),
            shift,
            rotation_seed: (kind == SuiteKind::ShiftRotated).then_some(rotation_seed),
            bias: VARIANT_BIAS * variant as f64,
        }
    }

    pub fn instantiate(&self) -> Result<ObjectiveSpec, BenchmarkError> {
        let mut spec = ObjectiveSpec::plain(self.base, self.dim).with_bias(self.bias);
        if let Some(s) = &self.shift {
            spec = spec.with_shift(s.clone());
        }
        if let Some(seed) = self.rotation_seed {
            spec = spec.with_rotation(Rotation::from_seed(self.dim, seed));
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteManifest {
    pub name: String,
    pub kind: SuiteKind,
    pub seed: u64,
    pub dim: usize,
    pub lower: f64,
    pub upper: f64,
    pub note: String,
    pub functions: Vec<FunctionManifest>,
}

impl Suite {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn manifest(&self) -> SuiteManifest {
        SuiteManifest {
            name: self.name.clone(),
            kind: self.kind,
            seed: self.seed,
            dim: self.space.dim(),
            lower: self.space.lower(),
            upper: self.space.upper(),
            note: MANIFEST_NOTE.to_string(),
            functions: self
                .functions
                .iter()
                .enumerate()
                .map(|(j, (name, spec))| {
                    let mut entry = FunctionManifest::generate(j, self.kind, self.space, self.seed);
                    // specs may have been edited after generation; record what is there
                    entry.name = name.clone();
                    entry.base = spec.base;
                    entry.shift = spec.shift.clone();
                    entry.shift_seed = entry.shift_seed.filter(|_| spec.shift.is_some());
                    entry.rotation_seed = spec.rotation.as_ref().and_then(|r| r.seed);
                    entry.bias = spec.bias;
                    entry
                })
                .collect(),
        }
    }

    pub fn from_manifest(manifest: &SuiteManifest) -> Result<Self, BenchmarkError> {
        let space = SearchSpace::new(manifest.dim, manifest.lower, manifest.upper)?;
        let functions = manifest
            .functions
            .iter()
            .map(|f| {
                if f.dim != manifest.dim {
                    return Err(BenchmarkError::Manifest(format!(
                        "function {} has dim {} in a dim-{} suite",
                        f.name, f.dim, manifest.dim
                    )));
                }
                Ok((f.name.clone(), f.instantiate()?))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            name: manifest.name.clone(),
            kind: manifest.kind,
            seed: manifest.seed,
            space,
            functions,
        })
    }

    pub fn write_manifest(&self, path: &Path) -> Result<(), BenchmarkError> {
        let text = serde_json::to_string_pretty(&self.manifest())?;
        std::fs::write(path, text + "\n")?;
        Ok(())
    }

    pub fn read_manifest(path: &Path) -> Result<Self, BenchmarkError> {
        let manifest: SuiteManifest = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        Self::from_manifest(&manifest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{evaluate_objective, orthogonality_error};

    fn space(dim: usize) -> SearchSpace {
        SearchSpace::new(dim, -100.0, 100.0).unwrap()
    }

    #[test]
    fn basic_has_no_transforms() {
        let s = build_suite("b", SuiteKind::Basic, 10, space(10), 1).unwrap();
        assert_eq!(s.functions.len(), 10);
        assert!(s.functions.iter().all(|(_, f)| f.shift.is_none() && f.rotation.is_none()));
        assert_eq!(s.functions[0].0, "F01_sphere");
        assert_eq!(s.functions[9].0, "F10_levy");
    }

    #[test]
    fn shifted_is_reproducible_and_central() {
        let a = build_suite("s", SuiteKind::Shifted, 10, space(10), 5).unwrap();
        let b = build_suite("s", SuiteKind::Shifted, 10, space(10), 5).unwrap();
        assert_eq!(a, b);
        for (_, f) in &a.functions {
            let s = f.shift.as_ref().unwrap();
            assert!(s.iter().all(|v| (-80.0..=80.0).contains(v)));
            assert!(f.rotation.is_none());
        }
        let c = build_suite("s", SuiteKind::Shifted, 10, space(10), 6).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn shift_rotated_rotations_are_orthogonal() {
        let s = build_suite("r", SuiteKind::ShiftRotated, 29, space(10), 2).unwrap();
        assert_eq!(s.functions.len(), 29);
        for (_, f) in &s.functions {
            assert!(orthogonality_error(&f.rotation.as_ref().unwrap().matrix) < 1e-10);
            let opt = f.shift.clone().unwrap();
            assert!((evaluate_objective(f, &opt).unwrap() - f.bias).abs() < 1e-9);
        }
        assert_eq!(s.functions[12].1.bias, 100.0);
    }

    #[test]
    fn too_many_functions() {
        assert!(matches!(
            build_suite("x", SuiteKind::Basic, 31, space(2), 0),
            Err(BenchmarkError::TooManyFunctions { available: 30, .. })
        ));
    }

    #[test]
    fn manifest_round_trip_is_exact() {
        let dir = std::env::temp_dir().join(format!("etoscope-manifest-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("suite.json");
        let s = build_suite("rt", SuiteKind::ShiftRotated, 12, space(5), 77).unwrap();
        s.write_manifest(&path).unwrap();
        let back = Suite::read_manifest(&path).unwrap();
        assert_eq!(s, back);
        std::fs::remove_dir_all(&dir).ok();
    }
}
