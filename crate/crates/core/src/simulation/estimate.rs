use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::SamplePath;
use crate::error::{Error, Result};

/// Sample correlations `r^_0..r^_K` with Bartlett standard errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalCorrelations {
    pub r: Vec<f64>,
    pub stderr: Vec<f64>,
}

/// Lag products averaged over the available pairs, `(1/(T-k)) sum_i X_i X_{i+k}`.
fn lag_moments(x: &[f64], max_lag: usize) -> Vec<f64> {
    (0..=max_lag)
        .map(|k| {
            let n = x.len() - k;
            x[..n].iter().zip(&x[k..]).map(|(a, b)| a * b).sum::<f64>() / n as f64
        })
        .collect()
}

/// `r^_k = gamma^_k / gamma^_0` for the centered field. Standard errors follow Bartlett's
/// formula `Var r^_k ~ (1/T) sum_{m>=1} (r_{m+k} + r_{m-k} - 2 r_k r_m)^2` with the sum
/// truncated at `max(2K, 50)` lags.
pub fn empirical_correlations(path: &SamplePath, depth: usize) -> Result<EmpiricalCorrelations> {
    let t = path.len();
    if t <= 10 * depth || t < 2 {
        return Err(Error::InsufficientData {
            length: t,
            required: 10 * depth,
        });
    }
    let window = (2 * depth).max(50).min(t / 2 - depth);
    let moments = lag_moments(&path.values, depth + window);
    let r: Vec<f64> = moments.iter().map(|g| g / moments[0]).collect();
    let at = |m: isize| r.get(m.unsigned_abs()).copied().unwrap_or(0.0);
    let stderr = (0..=depth)
        .map(|k| {
            if k == 0 {
                return 0.0;
            }
            let k = k as isize;
            let var: f64 = (1..=window as isize)
                .map(|m| {
                    let term = at(m + k) + at(m - k) - 2.0 * at(k) * at(m);
                    term * term
                })
                .sum();
            (var / t as f64).sqrt()
        })
        .collect();
    Ok(EmpiricalCorrelations {
        r: r[..=depth].to_vec(),
        stderr,
    })
}

/// Least-squares fit of one regression.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionEstimate {
    pub coeffs: Vec<f64>,
    pub stderr: Vec<f64>,
    pub residual_variance: f64,
    pub residual_variance_stderr: f64,
    pub sample_size: usize,
}

/// OLS with a covariance estimate that accounts for score autocorrelation up to
/// `score_lags` (0 gives the classical i.i.d. formula).
fn ols(design: &[f64], target: &[f64], p: usize, score_lags: usize) -> Result<RegressionEstimate> {
    let n = target.len();
    let mut xtx = DMatrix::<f64>::zeros(p, p);
    let mut xty = DVector::<f64>::zeros(p);
    for (row, &y) in design.chunks_exact(p).zip(target) {
        for i in 0..p {
            xty[i] += row[i] * y;
            for j in 0..=i {
                xtx[(i, j)] += row[i] * row[j];
            }
        }
    }
    for i in 0..p {
        for j in 0..i {
            xtx[(j, i)] = xtx[(i, j)];
        }
    }
    let chol = xtx.cholesky().ok_or(Error::DegenerateDesign)?;
    let coeffs = chol.solve(&xty);
    let bread = chol.inverse();
    if !coeffs.iter().all(|c| c.is_finite()) {
        return Err(Error::DegenerateDesign);
    }

    let residuals: Vec<f64> = design
        .chunks_exact(p)
        .zip(target)
        .map(|(row, &y)| {
            y - row
                .iter()
                .zip(coeffs.iter())
                .map(|(a, b)| a * b)
                .sum::<f64>()
        })
        .collect();
    let dof = (n - p) as f64;
    let residual_variance = residuals.iter().map(|e| e * e).sum::<f64>() / dof;
    if residual_variance.is_nan() || residual_variance <= 0.0 {
        return Err(Error::DegenerateDesign);
    }

    let cov = if score_lags == 0 {
        bread * residual_variance
    } else {
        // sum over |h| <= L of sum_k e_k e_{k+h} x_k x_{k+h}'
        let mut meat = DMatrix::<f64>::zeros(p, p);
        for h in 0..=score_lags {
            let mut gamma = DMatrix::<f64>::zeros(p, p);
            for k in 0..n - h {
                let weight = residuals[k] * residuals[k + h];
                let a = &design[k * p..(k + 1) * p];
                let b = &design[(k + h) * p..(k + h + 1) * p];
                for i in 0..p {
                    for j in 0..p {
                        gamma[(i, j)] += weight * a[i] * b[j];
                    }
                }
            }
            if h == 0 {
                meat += gamma;
            } else {
                meat += &gamma + gamma.transpose();
            }
        }
        &bread * meat * &bread * (n as f64 / dof)
    };
    let stderr: Vec<f64> = (0..p).map(|i| cov[(i, i)].max(0.0).sqrt()).collect();
    if stderr.iter().any(|s| s.is_nan() || *s <= 0.0) {
        return Err(Error::DegenerateDesign);
    }

    // Var of the mean of e_k^2 for Gaussian residuals: (2/n) sum_{|h|<=L} gamma_e(h)^2.
    let mut acc = 0.0;
    for h in 0..=score_lags {
        let g: f64 = residuals[..n - h]
            .iter()
            .zip(&residuals[h..])
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / n as f64;
        acc += if h == 0 { g * g } else { 2.0 * g * g };
    }
    Ok(RegressionEstimate {
        coeffs: coeffs.iter().copied().collect(),
        stderr,
        residual_variance,
        residual_variance_stderr: (2.0 * acc / n as f64).sqrt(),
        sample_size: n,
    })
}

fn check_length(path: &SamplePath, order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidArgument(
            "regression order must be positive".into(),
        ));
    }
    if path.len() <= 50 * order {
        return Err(Error::InsufficientData {
            length: path.len(),
            required: 50 * order,
        });
    }
    Ok(())
}

/// Regresses `X_k` on the symmetric sums `X_{k-j} + X_{k+j}`, `j = 1..J`.
///
/// The interpolation errors `X_k - E(X_k | rest)` are correlated up to lag `N`, and each is
/// correlated with the regressors of its `J` neighbours, so standard errors use the
/// truncated-kernel sandwich with `J` lags.
pub fn estimate_two_sided(path: &SamplePath, order: usize) -> Result<RegressionEstimate> {
    check_length(path, order)?;
    let x = &path.values;
    let rows = order..x.len() - order;
    let mut design = Vec::with_capacity(rows.len() * order);
    let mut target = Vec::with_capacity(rows.len());
    for k in rows {
        target.push(x[k]);
        design.extend((1..=order).map(|j| x[k - j] + x[k + j]));
    }
    ols(&design, &target, order, order)
}

/// Regresses `X_k` on `X_{k-1}..X_{k-M}`. Innovations are white, so the i.i.d. formula applies.
pub fn estimate_one_sided(path: &SamplePath, order: usize) -> Result<RegressionEstimate> {
    check_length(path, order)?;
    let x = &path.values;
    let rows = order..x.len();
    let mut design = Vec::with_capacity(rows.len() * order);
    let mut target = Vec::with_capacity(rows.len());
    for k in rows {
        target.push(x[k]);
        design.extend((1..=order).map(|j| x[k - j]));
    }
    ols(&design, &target, order, 0)
}
