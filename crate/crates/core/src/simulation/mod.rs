//! Seeded Gaussian sample paths of the field and least-squares estimates of its two-sided
//! and one-sided regressions.
//!
//! For a Gaussian field conditional expectations are linear projections, so ordinary least
//! squares on a long path estimates `b_j`, `v`, `beta_j` and `w` consistently.

mod estimate;
mod generate;
mod replicate;

use serde::{Deserialize, Serialize};

pub use estimate::{
    empirical_correlations, estimate_one_sided, estimate_two_sided, EmpiricalCorrelations,
    RegressionEstimate,
};
pub use generate::{
    default_burn_in, simulate_ar, simulate_ar_stream, simulate_circulant,
    simulate_circulant_stream, RNG_ALGORITHM,
};
pub use replicate::{run_verification, PooledCheck, VerificationOutcome, VerificationPlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorTag {
    /// Autoregressive recursion driven by the one-sided model.
    Ar,
    /// Exact stationary sample by circulant embedding of the correlations.
    Circulant,
}

/// A simulated realization `X_1..X_T` with what is needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePath {
    pub values: Vec<f64>,
    pub seed: u64,
    /// Index of the independent RNG stream derived from `seed`.
    pub stream: u64,
    /// Number of discarded leading values.
    pub burn_in: usize,
    pub generator: GeneratorTag,
    pub rng_algorithm: String,
}

impl SamplePath {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
