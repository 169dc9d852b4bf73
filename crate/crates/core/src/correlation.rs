//! Correlations `r_k = E X_0 X_k` of the stationary field and the two-sided conditional
//! variance `v`, obtained from the Fourier coefficients of `1/b`: `r = v / b` on the circle.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::even_series_on_grid;
use crate::symbol::{invert_symbol_auto, SymbolCoefficients};

/// Minimum depth used by [`correlations_auto`].
pub const DEFAULT_DEPTH: usize = 128;
/// [`correlations_auto`] extends the depth until `|r_K|` falls below this.
pub const DEPTH_TAIL_TOLERANCE: f64 = 1e-12;
/// Order of the sections checked for positive definiteness.
pub const SECTION_CHECK_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSequence {
    r: Vec<f64>,
    v: f64,
}

impl CorrelationSequence {
    /// Validates `r_0 = 1`, `|r_k| <= 1` and `v > 0`.
    pub fn new(r: Vec<f64>, v: f64) -> Result<Self> {
        if r.first() != Some(&1.0) {
            return Err(Error::InvalidArgument("r_0 must equal 1".into()));
        }
        if let Some(k) = r.iter().position(|x| !x.is_finite() || x.abs() > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "correlation r_{k} = {} is not in [-1, 1]",
                r[k]
            )));
        }
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "conditional variance must be positive, got {v}"
            )));
        }
        Ok(Self { r, v })
    }

    /// White noise: `r = (1, 0, .., 0)`, `v = 1`.
    pub fn white_noise(depth: usize) -> Self {
        let mut r = vec![0.0; depth + 1];
        r[0] = 1.0;
        Self { r, v: 1.0 }
    }

    /// `r_0..r_K`.
    pub fn r(&self) -> &[f64] {
        &self.r
    }

    /// `r_{|k|}`, zero beyond the stored depth.
    pub fn lag(&self, k: isize) -> f64 {
        self.r.get(k.unsigned_abs()).copied().unwrap_or(0.0)
    }

    pub fn depth(&self) -> usize {
        self.r.len() - 1
    }

    /// Two-sided conditional variance `Var(X_k | X_j, j != k)`.
    pub fn v(&self) -> f64 {
        self.v
    }

    /// Values of `r(theta) = 1 + 2 sum_{k<=K} r_k cos(k theta)` on a uniform grid.
    pub fn series_on_grid(&self, size: usize) -> Vec<f64> {
        even_series_on_grid(&self.r, size)
    }
}

/// Correlations up to lag `depth`: with `g = ` Fourier coefficients of `1/b`,
/// `v = 1/g_0` and `r_k = v g_k`.
pub fn correlations_from_symbol(
    sym: &SymbolCoefficients,
    depth: usize,
) -> Result<CorrelationSequence> {
    let g = invert_symbol_auto(sym, depth)?.coeffs;
    let v = 1.0 / g[0];
    let mut r: Vec<f64> = g.iter().map(|gk| v * gk).collect();
    r[0] = 1.0;
    CorrelationSequence::new(r, v)
}

/// Correlations with depth `max(128, K)` where `K` is the first lag with
/// `|r_K| < 1e-12`.
pub fn correlations_auto(sym: &SymbolCoefficients) -> Result<CorrelationSequence> {
    let mut depth = DEFAULT_DEPTH;
    loop {
        let corr = correlations_from_symbol(sym, depth)?;
        let cutoff = corr.r.iter().position(|x| x.abs() < DEPTH_TAIL_TOLERANCE);
        match cutoff {
            Some(k) => {
                let keep = k.max(DEFAULT_DEPTH);
                let mut r = corr.r;
                r.truncate(keep + 1);
                return Ok(CorrelationSequence { r, v: corr.v });
            }
            None if depth >= 1 << 20 => {
                return Err(Error::TruncationWarning {
                    what: "correlation sequence",
                    ratio: corr.r[depth].abs(),
                    tolerance: DEPTH_TAIL_TOLERANCE,
                })
            }
            None => depth *= 4,
        }
    }
}

/// The `n x n` Toeplitz section `(r_{|i-j|})`.
pub fn toeplitz_section(corr: &CorrelationSequence, n: usize) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "section order must be positive".into(),
        ));
    }
    if n - 1 > corr.depth() {
        return Err(Error::InsufficientCorrelations {
            requested: n,
            available: corr.depth(),
        });
    }
    Ok(DMatrix::from_fn(n, n, |i, j| corr.r[i.abs_diff(j)]))
}

/// Smallest eigenvalue of the `n x n` section.
pub fn min_section_eigenvalue(corr: &CorrelationSequence, n: usize) -> Result<f64> {
    let t = toeplitz_section(corr, n)?;
    Ok(SymmetricEigen::new(t).eigenvalues.min())
}

/// `|v - (1 - 2 sum_j b_j r_j)|`.
pub fn check_v_identity(sym: &SymbolCoefficients, corr: &CorrelationSequence) -> f64 {
    let s: f64 = sym
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, b)| b * corr.lag(i as isize + 1))
        .sum();
    (corr.v - (1.0 - 2.0 * s)).abs()
}

/// `max_m |b(theta_m) r(theta_m) - v|` over a grid fine enough to hold both series.
pub fn symbol_identity_residual(sym: &SymbolCoefficients, corr: &CorrelationSequence) -> f64 {
    let size = (2 * corr.depth() + 2)
        .max(sym.min_grid())
        .next_power_of_two();
    let b = even_series_on_grid(&sym.laurent_coefficients(), size);
    let r = corr.series_on_grid(size);
    b.iter()
        .zip(&r)
        .map(|(bm, rm)| (bm * rm - corr.v).abs())
        .fold(0.0, f64::max)
}
