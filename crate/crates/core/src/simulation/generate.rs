use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex64;

use super::{GeneratorTag, SamplePath};
use crate::correlation::CorrelationSequence;
use crate::error::{Error, Result};
use crate::factorization::OneSidedModel;
use crate::poly;
use crate::spectrum::fft_forward;

/// Identifier of the pseudorandom source recorded in every [`SamplePath`].
pub const RNG_ALGORITHM: &str = "chacha8-stream/standard-normal-ziggurat";

/// Eigenvalues of the circulant embedding below this are an error; those above are clipped.
pub const EMBEDDING_TOLERANCE: f64 = 1e-10;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `10 * order + 1000`.
pub fn default_burn_in(order: usize) -> usize {
    10 * order + 1000
}

/// AR path on stream 0 of `seed`.
pub fn simulate_ar(
    model: &OneSidedModel,
    length: usize,
    burn_in: usize,
    seed: u64,
) -> Result<SamplePath> {
    simulate_ar_stream(model, length, burn_in, seed, 0)
}

/// `X_k = sum_j beta_j X_{k-j} + sqrt(w) eps_k` from a zero initial state; the first
/// `burn_in` values are dropped.
pub fn simulate_ar_stream(
    model: &OneSidedModel,
    length: usize,
    burn_in: usize,
    seed: u64,
    stream: u64,
) -> Result<SamplePath> {
    if length == 0 {
        return Err(Error::InvalidArgument(
            "path length must be positive".into(),
        ));
    }
    if !(model.w > 0.0 && model.w.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "innovation variance must be positive, got {}",
            model.w
        )));
    }
    let min_modulus = poly::min_root_modulus(&model.polynomial())?;
    if min_modulus <= 1.0 {
        return Err(Error::NotMinimumPhase { min_modulus });
    }

    let mut rng = rng_for(seed, stream);
    let sigma = model.w.sqrt();
    let p = model.betas.len();
    let total = burn_in + length;
    let mut x = vec![0.0; total];
    for k in 0..total {
        let eps: f64 = rng.sample(StandardNormal);
        let mut value = sigma * eps;
        for (j, beta) in model.betas.iter().enumerate().take(k.min(p)) {
            value += beta * x[k - j - 1];
        }
        x[k] = value;
    }
    x.drain(..burn_in);
    Ok(SamplePath {
        values: x,
        seed,
        stream,
        burn_in,
        generator: GeneratorTag::Ar,
        rng_algorithm: RNG_ALGORITHM.to_string(),
    })
}

/// Exact stationary path with covariance `r_{|i-j|}` on stream 0 of `seed`.
pub fn simulate_circulant(
    corr: &CorrelationSequence,
    length: usize,
    seed: u64,
) -> Result<SamplePath> {
    simulate_circulant_stream(corr, length, seed, 0)
}

/// Circulant embedding of size the smallest power of two `>= 2 (T + K)`, with
/// correlations beyond the stored depth taken as zero.
pub fn simulate_circulant_stream(
    corr: &CorrelationSequence,
    length: usize,
    seed: u64,
    stream: u64,
) -> Result<SamplePath> {
    if length == 0 {
        return Err(Error::InvalidArgument(
            "path length must be positive".into(),
        ));
    }
    let size = (2 * (length + corr.depth())).next_power_of_two();
    let mut row: Vec<Complex64> = (0..size)
        .map(|j| Complex64::new(corr.lag(j.min(size - j) as isize), 0.0))
        .collect();
    fft_forward(&mut row);
    let mut min_eigen = f64::INFINITY;
    let scales: Vec<f64> = row
        .iter()
        .map(|z| {
            min_eigen = min_eigen.min(z.re);
            (z.re.max(0.0) / size as f64).sqrt()
        })
        .collect();
    if min_eigen < -EMBEDDING_TOLERANCE {
        return Err(Error::EmbeddingNotPsd {
            eigenvalue: min_eigen,
        });
    }

    let mut rng = rng_for(seed, stream);
    let mut buf: Vec<Complex64> = scales
        .iter()
        .map(|s| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(s * re, s * im)
        })
        .collect();
    fft_forward(&mut buf);
    Ok(SamplePath {
        values: buf[..length].iter().map(|z| z.re).collect(),
        seed,
        stream,
        burn_in: 0,
        generator: GeneratorTag::Circulant,
        rng_algorithm: RNG_ALGORITHM.to_string(),
    })
}
