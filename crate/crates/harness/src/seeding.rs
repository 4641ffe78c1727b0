//! Seed derivation. Every run seed is a bijective mix of the master seed and
//! the packed `(algorithm, function, run)` indices, so distinct index triples
//! never share a stream and appending algorithms leaves existing streams
//! untouched.

use etoscope_core::rng::{derive_seed, mix64};

const ALG_BITS: u32 = 16;
const FN_BITS: u32 = 24;
const RUN_BITS: u32 = 24;
const SUITE_TAG: u64 = 0x5375_6974_6500_0000;

/// Seed of run `run` of algorithm `algorithm` on the `function`-th function
/// of the whole run matrix (functions enumerated over suites, then dims).
pub fn run_seed(master_seed: u64, algorithm: usize, function: usize, run: usize) -> u64 {
    assert!(algorithm < 1 << ALG_BITS && function < 1 << FN_BITS && run < 1 << RUN_BITS, "index out of range");
    let packed = (algorithm as u64) << (FN_BITS + RUN_BITS) | (function as u64) << RUN_BITS | run as u64;
    mix64(mix64(packed) ^ mix64(master_seed))
}

pub fn suite_seed(master_seed: u64, suite_index: usize) -> u64 {
    derive_seed(master_seed, SUITE_TAG | suite_index as u64)
}

/// Seed for the instance of a suite at one dimensionality.
pub fn suite_dim_seed(suite_seed: u64, dim: usize) -> u64 {
    derive_seed(suite_seed, dim as u64)
}
