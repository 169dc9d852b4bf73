//! The cosine-polynomial symbol `b(theta) = 1 - 2 sum_j b_j cos(j theta)` of the banded
//! Laurent matrix with unit diagonal and off-diagonals `-b_{|i-j|}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{even_coefficients, even_series_on_grid, grid_angle};

/// Symbols with minimum at or below this value are not treated as positive.
pub const POSITIVITY_TOLERANCE: f64 = 1e-9;
/// Grid size used when the caller has no preference.
pub const DEFAULT_GRID: usize = 4096;
/// Largest grid the automatic refinements will try.
pub const MAX_GRID: usize = 1 << 24;
/// Relative size of the reciprocal's Fourier coefficient at the Nyquist index above which
/// the inversion grid is considered too coarse.
pub const ALIASING_TOLERANCE: f64 = 1e-10;

/// Canonical band coefficients `b_1..b_N` (trailing zeros removed).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(into = "Vec<f64>", try_from = "Vec<f64>")]
pub struct SymbolCoefficients {
    coeffs: Vec<f64>,
}

impl SymbolCoefficients {
    /// The white-noise symbol `b = 1`.
    pub fn white_noise() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Band width `N`, the index of the last nonzero coefficient.
    pub fn band(&self) -> usize {
        self.coeffs.len()
    }

    /// `b_j` for `j >= 1`, zero beyond the band.
    pub fn get(&self, j: usize) -> f64 {
        if j == 0 {
            return 0.0;
        }
        self.coeffs.get(j - 1).copied().unwrap_or(0.0)
    }

    /// `sum_j |b_j|`; the symbol is positive whenever this is below 1/2.
    pub fn wiener_sum(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, b| acc + b.abs())
    }

    /// Norm of the symbol in the Wiener algebra, `1 + 2 sum_j |b_j|`.
    pub fn wiener_norm(&self) -> f64 {
        1.0 + 2.0 * self.wiener_sum()
    }

    /// Fourier coefficients of the symbol at lags `0..=N`: `(1, -b_1, .., -b_N)`.
    pub fn laurent_coefficients(&self) -> Vec<f64> {
        std::iter::once(1.0)
            .chain(self.coeffs.iter().map(|b| -b))
            .collect()
    }

    /// Direct evaluation at an angle.
    pub fn eval(&self, theta: f64) -> f64 {
        1.0 - 2.0
            * self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, b)| b * ((i + 1) as f64 * theta).cos())
                .sum::<f64>()
    }

    /// Smallest admissible grid for this band width.
    pub fn min_grid(&self) -> usize {
        (4 * self.band() + 4).next_power_of_two()
    }
}

impl From<SymbolCoefficients> for Vec<f64> {
    fn from(s: SymbolCoefficients) -> Self {
        s.coeffs
    }
}

impl TryFrom<Vec<f64>> for SymbolCoefficients {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        build_symbol(&v)
    }
}

/// Validates and canonicalizes `b_1..b_N`. An empty input is the white-noise symbol.
pub fn build_symbol(coeffs: &[f64]) -> Result<SymbolCoefficients> {
    if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, c)| !c.is_finite()) {
        return Err(Error::InvalidCoefficient { index, value });
    }
    let len = coeffs.iter().rposition(|&c| c != 0.0).map_or(0, |i| i + 1);
    Ok(SymbolCoefficients {
        coeffs: coeffs[..len].to_vec(),
    })
}

/// Symbol values on the uniform grid `theta_m = 2 pi m / M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralGrid {
    pub values: Vec<f64>,
}

impl SpectralGrid {
    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn angle(&self, m: usize) -> f64 {
        grid_angle(m, self.size())
    }
}

fn check_grid(sym: &SymbolCoefficients, size: usize) -> Result<()> {
    if !size.is_power_of_two() {
        return Err(Error::InvalidGridSize { size });
    }
    let required = 4 * sym.band() + 4;
    if size < required {
        return Err(Error::GridTooCoarse {
            size,
            band: sym.band(),
            required,
        });
    }
    Ok(())
}

pub fn evaluate_grid(sym: &SymbolCoefficients, size: usize) -> Result<SpectralGrid> {
    check_grid(sym, size)?;
    Ok(SpectralGrid {
        values: even_series_on_grid(&sym.laurent_coefficients(), size),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PositivityVerdict {
    Positive,
    /// Minimum in `(0, POSITIVITY_TOLERANCE]`.
    NearSingular,
    NotPositive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub min_value: f64,
    pub argmin_angle: f64,
    pub is_positive: bool,
    pub verdict: PositivityVerdict,
    pub wiener_sum: f64,
    pub sufficient_condition_met: bool,
}

impl PositivityReport {
    pub fn describe(&self) -> &'static str {
        match self.verdict {
            PositivityVerdict::Positive => "symbol is positive",
            PositivityVerdict::NearSingular => "symbol is near-singular (minimum below tolerance)",
            PositivityVerdict::NotPositive if self.min_value.abs() <= 1e-12 => "symbol attains 0",
            PositivityVerdict::NotPositive => "symbol attains negative values",
        }
    }
}

/// Golden-section minimization of a unimodal function on `[lo, hi]`.
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo < 1e-15 {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Decides positivity of the symbol: grid minimum, polished by golden-section search
/// between the neighbours of the grid argmin.
///
/// `grid` is raised to the smallest admissible power of two when necessary.
pub fn check_positivity(sym: &SymbolCoefficients, grid: usize) -> PositivityReport {
    let wiener_sum = sym.wiener_sum();
    let size = grid.max(sym.min_grid()).next_power_of_two();
    let values = even_series_on_grid(&sym.laurent_coefficients(), size);
    let m = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map_or(0, |(m, _)| m);

    let step = grid_angle(1, size);
    let theta_m = grid_angle(m, size);
    let mut argmin_angle = theta_m;
    let mut min_value = sym.eval(theta_m);
    let (theta_g, value_g) = golden_section(|t| sym.eval(t), theta_m - step, theta_m + step);
    if value_g < min_value {
        min_value = value_g;
        argmin_angle = theta_g.rem_euclid(2.0 * std::f64::consts::PI);
    }

    let verdict = if min_value > POSITIVITY_TOLERANCE {
        PositivityVerdict::Positive
    } else if min_value > 0.0 {
        PositivityVerdict::NearSingular
    } else {
        PositivityVerdict::NotPositive
    };
    PositivityReport {
        min_value,
        argmin_angle,
        is_positive: verdict == PositivityVerdict::Positive,
        verdict,
        wiener_sum,
        sufficient_condition_met: wiener_sum < 0.5,
    }
}

/// Returns an error unless the symbol is positive on the given grid.
pub(crate) fn require_positive(sym: &SymbolCoefficients, grid: usize) -> Result<PositivityReport> {
    let report = check_positivity(sym, grid);
    match report.verdict {
        PositivityVerdict::Positive => Ok(report),
        PositivityVerdict::NearSingular => Err(Error::SymbolNearSingular {
            detail: format!(
                "minimum {:e} at angle {} is below {:e}",
                report.min_value, report.argmin_angle, POSITIVITY_TOLERANCE
            ),
        }),
        PositivityVerdict::NotPositive => Err(Error::SymbolNotInvertible {
            min_value: report.min_value,
        }),
    }
}

/// Fourier coefficients `g_0..g_K` of `1/b`, the symbol of `L(b)^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reciprocal {
    pub coeffs: Vec<f64>,
    /// `|g_K| / |g_0|`.
    pub tail_ratio: f64,
    /// `|g_{M/2}| / |g_0|`, a bound on the aliasing error of the grid.
    pub aliasing_ratio: f64,
    pub grid_size: usize,
}

/// Fourier coefficients of `1/b` by inverse transform of the reciprocal grid values.
///
/// Fails with [`Error::TruncationWarning`] when the grid is too coarse to resolve the
/// reciprocal (its coefficient at the Nyquist index is not negligible).
pub fn invert_symbol(sym: &SymbolCoefficients, depth: usize, grid: usize) -> Result<Reciprocal> {
    check_grid(sym, grid)?;
    if grid < 2 * depth + 2 {
        return Err(Error::GridTooCoarse {
            size: grid,
            band: sym.band(),
            required: 2 * depth + 2,
        });
    }
    require_positive(sym, grid)?;
    if sym.band() == 0 {
        let mut coeffs = vec![0.0; depth + 1];
        coeffs[0] = 1.0;
        return Ok(Reciprocal {
            coeffs,
            tail_ratio: if depth == 0 { 1.0 } else { 0.0 },
            aliasing_ratio: 0.0,
            grid_size: grid,
        });
    }

    let grid_values = evaluate_grid(sym, grid)?;
    let reciprocal: Vec<f64> = grid_values.values.iter().map(|b| 1.0 / b).collect();
    let all = even_coefficients(&reciprocal, grid / 2);
    let g0 = all[0];
    let aliasing_ratio = all[grid / 2].abs() / g0.abs();
    if aliasing_ratio > ALIASING_TOLERANCE {
        return Err(Error::TruncationWarning {
            what: "reciprocal symbol",
            ratio: aliasing_ratio,
            tolerance: ALIASING_TOLERANCE,
        });
    }
    let coeffs = all[..=depth].to_vec();
    Ok(Reciprocal {
        tail_ratio: coeffs[depth].abs() / g0.abs(),
        coeffs,
        aliasing_ratio,
        grid_size: grid,
    })
}

/// [`invert_symbol`] with the grid doubled until the aliasing check passes.
pub fn invert_symbol_auto(sym: &SymbolCoefficients, depth: usize) -> Result<Reciprocal> {
    let mut grid = DEFAULT_GRID
        .max(sym.min_grid())
        .max((2 * depth + 2).next_power_of_two());
    loop {
        match invert_symbol(sym, depth, grid) {
            Err(Error::TruncationWarning { .. }) if grid < MAX_GRID => grid *= 2,
            other => return other,
        }
    }
}
