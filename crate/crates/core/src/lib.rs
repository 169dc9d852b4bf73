//! Numerics for stationary Gaussian sequences whose two-sided linear regressions
//! are given by a symmetric coefficient sequence `b_1..b_N`.
//!
//! The regression `E(X_k | X_j, j != k) = sum_j b_j (X_{k-j} + X_{k+j})` is encoded in the
//! cosine polynomial `b(theta) = 1 - 2 sum_j b_j cos(j theta)`, the symbol of the banded
//! Laurent matrix `L(b)`. From it the crate derives:
//!
//! - [`symbol`]: evaluation on the circle, positivity (existence) and the Fourier
//!   coefficients of `1/b`;
//! - [`correlation`]: the correlation sequence `r_k` and the two-sided conditional
//!   variance `v`, tied together by `b(t) r(t) = v`;
//! - [`factorization`]: the one-sided (autoregressive) representation `beta`, `w`
//!   obtained by root-based and cepstral spectral factorization and by Levinson-Durbin,
//!   with the identity `b = (v/w) beta beta~`;
//! - [`simulation`]: seeded Gaussian sample paths and least-squares checks of both
//!   regressions.

pub mod correlation;
pub mod error;
pub mod factorization;
pub mod poly;
pub mod simulation;
pub mod spectrum;
pub mod symbol;

pub use correlation::{
    check_v_identity, correlations_auto, correlations_from_symbol, toeplitz_section,
    CorrelationSequence,
};
pub use error::{Error, Result};
pub use factorization::{
    band_beta_to_b, beta_from_factor, fejer_riesz, spectral_factor, szego_factor,
    szego_factor_auto, verify_bbeta_identity, yule_walker, OneSidedModel, SpectralFactor,
};
pub use simulation::{
    empirical_correlations, estimate_one_sided, estimate_two_sided, simulate_ar,
    simulate_circulant, GeneratorTag, RegressionEstimate, SamplePath,
};
pub use symbol::{
    build_symbol, check_positivity, evaluate_grid, invert_symbol, PositivityReport,
    PositivityVerdict, SpectralGrid, SymbolCoefficients,
};
