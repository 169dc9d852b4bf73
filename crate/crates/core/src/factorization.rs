//! One-sided (autoregressive) representation of the field.
//!
//! A positive symbol factors as `b = |C|^2` with `C(z) = sum_j c_j z^j` free of zeros in the
//! closed unit disk and `sum_j c_j^2 = 1`. Writing `C = c_0 beta` with
//! `beta(z) = 1 - sum_j beta_j z^j` gives `b = (v/w) beta(t) beta(1/t)` with `v/w = c_0^2`,
//! where `beta_j` are the coefficients of `E(X_k | X_{k-1}, X_{k-2}, ..)` and `w` is its
//! prediction-error variance.
//!
//! Three independent routes produce `beta`:
//! - [`fejer_riesz`]: roots of `z^N b(z)`, keeping those outside the unit circle;
//! - [`szego_factor`]: cepstral coefficients of `log b`, exponentiated as a power series;
//! - [`yule_walker`]: Levinson-Durbin on the correlation sections.

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::correlation::CorrelationSequence;
use crate::error::{Error, Result};
use crate::poly;
use crate::spectrum::{even_coefficients, even_series_on_grid, fft_forward};
use crate::symbol::{
    build_symbol, check_positivity, require_positive, SymbolCoefficients, DEFAULT_GRID, MAX_GRID,
};

/// Largest band width handled by companion-matrix rooting.
pub const MAX_ROOT_DEGREE: usize = 64;
/// Roots closer than this to the unit circle make the factorization ill-posed.
pub const UNIT_CIRCLE_MARGIN: f64 = 1e-8;
/// Imaginary residue allowed in the reconstructed outer polynomial, relative to its
/// largest coefficient.
pub const IMAGINARY_RESIDUE_TOLERANCE: f64 = 1e-12;
/// Largest discarded outer-factor coefficient, relative to `c_0`, accepted by the cepstral route.
pub const FACTOR_TAIL_TOLERANCE: f64 = 1e-10;
/// Cepstral coefficient at the Nyquist index above which the grid is too coarse.
pub const CEPSTRAL_ALIASING_TOLERANCE: f64 = 1e-12;
/// Levinson-Durbin aborts once a reflection coefficient reaches `1 - LEVINSON_MARGIN`.
pub const LEVINSON_MARGIN: f64 = 1e-12;

/// Outer factor `c_0..c_M` of the symbol, `c_0 > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralFactor {
    c: Vec<f64>,
}

impl SpectralFactor {
    pub fn new(c: Vec<f64>) -> Result<Self> {
        match c.first() {
            Some(&c0) if c0 > 0.0 && c.iter().all(|x| x.is_finite()) => Ok(Self { c }),
            _ => Err(Error::InvalidArgument(
                "spectral factor needs finite coefficients with c_0 > 0".into(),
            )),
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    pub fn norm_squared(&self) -> f64 {
        self.c.iter().map(|x| x * x).sum()
    }

    /// The symbol `|C|^2`, read off as `b_r = -sum_j c_j c_{j+r}`.
    pub fn symbol_coefficients(&self) -> Vec<f64> {
        poly::autocorrelation(&self.c)[1..]
            .iter()
            .map(|x| -x)
            .collect()
    }
}

/// Coefficients of `E(X_k | past) = sum_j beta_j X_{k-j}` and the innovation variance `w`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneSidedModel {
    pub betas: Vec<f64>,
    pub w: f64,
}

impl OneSidedModel {
    pub fn white_noise() -> Self {
        Self {
            betas: Vec::new(),
            w: 1.0,
        }
    }

    /// `beta(z) = 1 - sum_j beta_j z^j` in ascending order.
    pub fn polynomial(&self) -> Vec<f64> {
        beta_polynomial(&self.betas)
    }

    /// Index of the last coefficient with modulus above `tol`.
    pub fn band_width(&self, tol: f64) -> usize {
        self.betas
            .iter()
            .rposition(|b| b.abs() > tol)
            .map_or(0, |i| i + 1)
    }
}

pub(crate) fn beta_polynomial(betas: &[f64]) -> Vec<f64> {
    std::iter::once(1.0)
        .chain(betas.iter().map(|b| -b))
        .collect()
}

fn normalize(mut c: Vec<f64>) -> Result<SpectralFactor> {
    let scale = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    let sign = if c[0] < 0.0 { -1.0 } else { 1.0 };
    for x in c.iter_mut() {
        *x *= sign / scale;
    }
    SpectralFactor::new(c)
}

/// Spectral factor from the roots of the Laurent polynomial `z^N b(z)`.
///
/// The `2N` roots come in pairs `(rho, 1/rho)`; the `N` roots outside the unit circle,
/// conjugate pairs included, are the zeros of the outer factor.
pub fn fejer_riesz(sym: &SymbolCoefficients) -> Result<SpectralFactor> {
    let n = sym.band();
    if n == 0 {
        return Ok(SpectralFactor { c: vec![1.0] });
    }
    if n > MAX_ROOT_DEGREE {
        return Err(Error::DegreeTooHigh {
            band: n,
            limit: MAX_ROOT_DEGREE,
        });
    }
    let report = check_positivity(sym, DEFAULT_GRID);
    if !report.is_positive {
        // A zero of the symbol is a root on the unit circle; negative values are not factorable.
        return Err(if report.min_value >= -1e-12 {
            Error::SymbolNearSingular {
                detail: format!(
                    "symbol minimum {:e} at angle {}",
                    report.min_value, report.argmin_angle
                ),
            }
        } else {
            Error::SymbolNotInvertible {
                min_value: report.min_value,
            }
        });
    }

    let mut laurent = vec![0.0; 2 * n + 1];
    laurent[n] = 1.0;
    for (j, &b) in sym.coeffs().iter().enumerate() {
        laurent[n - j - 1] = -b;
        laurent[n + j + 1] = -b;
    }
    let roots = poly::roots(&laurent)?;
    if let Some(z) = roots
        .iter()
        .find(|z| (z.norm() - 1.0).abs() < UNIT_CIRCLE_MARGIN)
    {
        return Err(Error::SymbolNearSingular {
            detail: format!("root {z} lies within {UNIT_CIRCLE_MARGIN:e} of the unit circle"),
        });
    }
    let mut outer: Vec<_> = roots.into_iter().filter(|z| z.norm() > 1.0).collect();
    if outer.len() != n {
        return Err(Error::SymbolNearSingular {
            detail: format!(
                "found {} roots outside the unit circle, expected {n}",
                outer.len()
            ),
        });
    }
    // Order by modulus then angle so conjugates sit next to each other during expansion.
    outer.sort_by(|a, b| {
        a.norm()
            .total_cmp(&b.norm())
            .then(a.arg().abs().total_cmp(&b.arg().abs()))
            .then(a.im.total_cmp(&b.im))
    });

    let complex = poly::from_roots_unit_constant(&outer);
    let largest = complex.iter().map(|z| z.re.abs()).fold(0.0, f64::max);
    let residue = complex.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if residue > IMAGINARY_RESIDUE_TOLERANCE * largest.max(1.0) {
        return Err(Error::SymbolNearSingular {
            detail: format!("outer factor has imaginary residue {residue:e}"),
        });
    }
    normalize(complex.iter().map(|z| z.re).collect())
}

/// Spectral factor through the cepstrum: `a_n` are the Fourier coefficients of `log b`
/// on a `grid`-point grid and `C = exp(a_0/2 + sum_{n>=1} a_n z^n)`, truncated at degree `order`.
///
/// The series is expanded with `c_0 = exp(a_0/2)`, `k c_k = sum_{j=1..k} j a_j c_{k-j}`.
/// Truncation is rejected when coefficients of degree `order+1..2 order` are not negligible.
pub fn szego_factor(sym: &SymbolCoefficients, order: usize, grid: usize) -> Result<SpectralFactor> {
    if !grid.is_power_of_two() {
        return Err(Error::InvalidGridSize { size: grid });
    }
    let required = sym.min_grid().max(2 * order + 2);
    if grid < required {
        return Err(Error::GridTooCoarse {
            size: grid,
            band: sym.band(),
            required,
        });
    }
    require_positive(sym, grid)?;
    if sym.band() == 0 {
        let mut c = vec![0.0; order + 1];
        c[0] = 1.0;
        return Ok(SpectralFactor { c });
    }

    let log_b: Vec<f64> = even_series_on_grid(&sym.laurent_coefficients(), grid)
        .into_iter()
        .map(f64::ln)
        .collect();
    let cepstrum = even_coefficients(&log_b, grid / 2);
    let aliasing = cepstrum[grid / 2].abs();
    if aliasing > CEPSTRAL_ALIASING_TOLERANCE {
        return Err(Error::TruncationWarning {
            what: "cepstrum grid",
            ratio: aliasing,
            tolerance: CEPSTRAL_ALIASING_TOLERANCE,
        });
    }
    // Run the recursion past the requested order to measure what truncation discards.
    let extended = (2 * order).min(grid / 2);
    let a = &cepstrum[..=extended];
    let mut c = vec![0.0; extended + 1];
    c[0] = (a[0] / 2.0).exp();
    for k in 1..=extended {
        let s: f64 = (1..=k).map(|j| j as f64 * a[j] * c[k - j]).sum();
        c[k] = s / k as f64;
    }
    let tail = c[order + 1..].iter().map(|x| x.abs()).fold(0.0, f64::max) / c[0];
    if tail > FACTOR_TAIL_TOLERANCE {
        return Err(Error::TruncationWarning {
            what: "outer factor order",
            ratio: tail,
            tolerance: FACTOR_TAIL_TOLERANCE,
        });
    }
    c.truncate(order + 1);
    normalize(c)
}

/// [`szego_factor`] starting from order `max(4N, 64)`; the order or the grid is doubled
/// until both truncation checks pass.
pub fn szego_factor_auto(sym: &SymbolCoefficients) -> Result<SpectralFactor> {
    let mut order = (4 * sym.band()).max(64);
    let mut grid = DEFAULT_GRID.max((8 * order).next_power_of_two());
    loop {
        match szego_factor(sym, order, grid) {
            Err(Error::TruncationWarning { what, .. }) if grid < MAX_GRID => {
                if what == "outer factor order" {
                    order *= 2;
                    grid = grid.max((8 * order).next_power_of_two());
                } else {
                    grid *= 2;
                }
            }
            other => return other,
        }
    }
}

/// Root-based factorization up to [`MAX_ROOT_DEGREE`], cepstral above.
pub fn spectral_factor(sym: &SymbolCoefficients) -> Result<SpectralFactor> {
    if sym.band() <= MAX_ROOT_DEGREE {
        fejer_riesz(sym)
    } else {
        szego_factor_auto(sym)
    }
}

/// Normalized correlations `r_0..r_depth` of the AR process with coefficients `betas`
/// and the final prediction-error variance, by step-down to reflection coefficients and
/// step-up to correlations.
pub fn ar_autocorrelations(betas: &[f64], depth: usize) -> Result<(Vec<f64>, f64)> {
    let p = betas.len();
    // step-down
    let mut reflections = vec![0.0; p];
    let mut current = betas.to_vec();
    for m in (1..=p).rev() {
        let k = current[m - 1];
        reflections[m - 1] = k;
        if k.abs() >= 1.0 {
            let min_modulus = poly::min_root_modulus(&beta_polynomial(betas)).unwrap_or(f64::NAN);
            return Err(Error::NotMinimumPhase { min_modulus });
        }
        let denom = 1.0 - k * k;
        current = (0..m - 1)
            .map(|j| (current[j] + k * current[m - 2 - j]) / denom)
            .collect();
    }
    // step-up
    let mut r = vec![0.0; depth.max(p) + 1];
    r[0] = 1.0;
    let mut coeffs: Vec<f64> = Vec::with_capacity(p);
    let mut err = 1.0;
    for m in 1..=p {
        let k = reflections[m - 1];
        let predicted: f64 = (1..m).map(|j| coeffs[j - 1] * r[m - j]).sum();
        r[m] = k * err + predicted;
        let prev = coeffs.clone();
        coeffs.push(k);
        for j in 1..m {
            coeffs[j - 1] = prev[j - 1] - k * prev[m - j - 1];
        }
        err *= 1.0 - k * k;
    }
    for m in p + 1..r.len() {
        r[m] = (1..=p).map(|j| betas[j - 1] * r[m - j]).sum();
    }
    r.truncate(depth + 1);
    Ok((r, err))
}

/// `beta_j = -c_j / c_0`, `v/w = c_0^2` and `w = 1 - sum_j beta_j r_j` from the AR
/// correlations of `beta`. Returns the model together with `v/w`.
pub fn beta_from_factor(f: &SpectralFactor) -> Result<(OneSidedModel, f64)> {
    let c0 = f.c[0];
    let mut betas: Vec<f64> = f.c[1..].iter().map(|c| -c / c0).collect();
    if let Some(last) = betas.iter().rposition(|b| *b != 0.0) {
        betas.truncate(last + 1);
    } else {
        betas.clear();
    }
    let (r, _) = ar_autocorrelations(&betas, betas.len())?;
    let w = 1.0 - betas.iter().zip(&r[1..]).map(|(b, r)| b * r).sum::<f64>();
    Ok((OneSidedModel { betas, w }, c0 * c0))
}

/// Solution of the order-`n` Yule-Walker system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YuleWalkerFit {
    pub betas: Vec<f64>,
    /// Final prediction-error variance `1 - sum_j beta_j r_j`.
    pub w: f64,
    pub reflections: Vec<f64>,
}

/// Solves `T_n(r) beta = (r_1..r_n)` by Levinson-Durbin.
pub fn yule_walker(corr: &CorrelationSequence, n: usize) -> Result<YuleWalkerFit> {
    if n > corr.depth() {
        return Err(Error::InsufficientCorrelations {
            requested: n,
            available: corr.depth(),
        });
    }
    let r = corr.r();
    let mut betas: Vec<f64> = Vec::with_capacity(n);
    let mut reflections = Vec::with_capacity(n);
    let mut err = r[0];
    for m in 1..=n {
        let acc: f64 = r[m] - (1..m).map(|j| betas[j - 1] * r[m - j]).sum::<f64>();
        let k = acc / err;
        if !k.is_finite() || k.abs() >= 1.0 - LEVINSON_MARGIN {
            return Err(Error::NotPositiveDefinite {
                step: m,
                reflection: k,
            });
        }
        let prev = betas.clone();
        betas.push(k);
        for j in 1..m {
            betas[j - 1] = prev[j - 1] - k * prev[m - j - 1];
        }
        err *= 1.0 - k * k;
        reflections.push(k);
    }
    Ok(YuleWalkerFit {
        betas,
        w: err,
        reflections,
    })
}

/// Symbol of a band one-sided model: `b_r = -q_r / q_0` with `q_r` the lag products of
/// `(1, -beta_1, .., -beta_N)`.
pub fn band_beta_to_b(betas: &[f64]) -> Result<SymbolCoefficients> {
    if let Some((index, &value)) = betas.iter().enumerate().find(|(_, b)| !b.is_finite()) {
        return Err(Error::InvalidCoefficient { index, value });
    }
    let len = betas.iter().rposition(|&b| b != 0.0).map_or(0, |i| i + 1);
    let p = beta_polynomial(&betas[..len]);
    let min_modulus = poly::min_root_modulus(&p)?;
    if min_modulus <= 1.0 {
        return Err(Error::NotMinimumPhase { min_modulus });
    }
    let q = poly::autocorrelation(&p);
    let b: Vec<f64> = q[1..].iter().map(|x| -x / q[0]).collect();
    build_symbol(&b)
}

/// `max_theta |b(theta) - (v/w) |beta(e^{i theta})|^2|` on a uniform grid.
pub fn verify_bbeta_identity(
    sym: &SymbolCoefficients,
    model: &OneSidedModel,
    v: f64,
    w: f64,
    grid: usize,
) -> f64 {
    let size = grid
        .max(sym.min_grid())
        .max(model.betas.len() + 1)
        .next_power_of_two();
    let b = even_series_on_grid(&sym.laurent_coefficients(), size);
    let mut buf = vec![Complex64::new(0.0, 0.0); size];
    for (slot, c) in buf.iter_mut().zip(model.polynomial()) {
        slot.re = c;
    }
    fft_forward(&mut buf);
    let ratio = v / w;
    b.iter()
        .zip(&buf)
        .map(|(bm, z)| (bm - ratio * z.norm_sqr()).abs())
        .fold(0.0, f64::max)
}
