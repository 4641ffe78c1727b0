//! Core building blocks for the ETO forensics toolkit.
//!
//! * [`space`], [`population`], [`boundary`] and [`optimizer`] hold the shared
//!   population-based search machinery and the run loop every algorithm goes
//!   through.
//! * [`eto`] is an instrumented implementation of the Exponential-Trigonometric
//!   Optimizer, with every control coefficient exposed as a free function.
//! * [`baselines`] ships two reference algorithms (random search and an
//!   inertia-weight particle swarm).
//! * [`benchmarks`] provides classic analytic test functions with shift and
//!   rotation transforms, grouped into suites.

pub mod baselines;
pub mod benchmarks;
pub mod boundary;
pub mod eto;
pub mod optimizer;
pub mod population;
pub mod rng;
pub mod space;

pub use boundary::{apply_boundary, BoundaryPolicy};
pub use optimizer::{run_optimizer, Objective, Optimizer, OptimizerError, RunError, RunRecord, RunSettings};
pub use population::{evaluate, init_population, Population};
pub use space::{SearchSpace, SpaceError};
