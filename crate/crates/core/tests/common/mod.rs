//! Seeded random corpora shared by the integration tests.
#![allow(dead_code)]

use harness_core::poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Band symbols with `N <= max_band` and `sum |b_j| < max_sum`, `b_N != 0`.
pub fn random_band_symbols(
    count: usize,
    max_band: usize,
    max_sum: f64,
    seed: u64,
) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=max_band);
            let mut b: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            if b[n - 1].abs() < 0.05 {
                b[n - 1] = 0.05f64.copysign(b[n - 1]);
            }
            let total: f64 = b.iter().map(|x| x.abs()).sum();
            let target = rng.random_range(0.0..max_sum);
            b.iter_mut().for_each(|x| *x *= target / total);
            b
        })
        .collect()
}

/// Minimum-phase `beta` with `N <= max_band`, `|beta_N| >= 0.05` and every root of
/// `1 - sum beta_j z^j` at modulus above `min_modulus`.
pub fn random_minimum_phase(
    count: usize,
    max_band: usize,
    min_modulus: f64,
    seed: u64,
) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(1..=max_band);
        let mut beta: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let total: f64 = beta.iter().map(|x| x.abs()).sum();
        let target = rng.random_range(0.05..1.5);
        beta.iter_mut().for_each(|x| *x *= target / total);
        if beta[n - 1].abs() < 0.05 {
            continue;
        }
        let p: Vec<f64> = std::iter::once(1.0)
            .chain(beta.iter().map(|b| -b))
            .collect();
        if poly::min_root_modulus(&p).unwrap() > min_modulus {
            out.push(beta);
        }
    }
    out
}
