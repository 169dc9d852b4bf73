use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::estimate::{estimate_one_sided, estimate_two_sided, RegressionEstimate};
use super::generate::{default_burn_in, simulate_ar_stream};
use crate::correlation::correlations_auto;
use crate::error::{Error, Result};
use crate::factorization::{beta_from_factor, spectral_factor, OneSidedModel};
use crate::symbol::SymbolCoefficients;

/// Estimates more than this many pooled standard errors from the analytic value fail.
pub const PASS_SIGMAS: f64 = 3.0;

/// Monte Carlo check of both regressions for one symbol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationPlan {
    pub symbol: SymbolCoefficients,
    pub model: OneSidedModel,
    /// Analytic two-sided conditional variance.
    pub v: f64,
    /// Number of regressors in both regressions.
    pub order: usize,
    pub length: usize,
    pub replications: usize,
    pub seed: u64,
    pub burn_in: usize,
}

impl VerificationPlan {
    /// Derives the analytic model (`beta`, `w`, `v`) from the symbol.
    pub fn for_symbol(
        symbol: SymbolCoefficients,
        order: usize,
        length: usize,
        replications: usize,
        seed: u64,
    ) -> Result<Self> {
        let (model, _) = beta_from_factor(&spectral_factor(&symbol)?)?;
        let v = correlations_auto(&symbol)?.v();
        Ok(Self {
            burn_in: default_burn_in(model.betas.len().max(order)),
            symbol,
            model,
            v,
            order,
            length,
            replications,
            seed,
        })
    }
}

/// One pooled quantity compared with its analytic value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PooledCheck {
    /// `b`, `v`, `beta` or `w`.
    pub name: String,
    /// Lag for coefficients, 0 for variances.
    pub index: usize,
    pub analytic: f64,
    pub estimate: f64,
    pub stderr: f64,
    pub pass: bool,
}

impl PooledCheck {
    fn new(name: &str, index: usize, analytic: f64, estimates: &[(f64, f64)]) -> Self {
        let reps = estimates.len() as f64;
        let estimate = estimates.iter().map(|e| e.0).sum::<f64>() / reps;
        let stderr = estimates.iter().map(|e| e.1 * e.1).sum::<f64>().sqrt() / reps;
        Self {
            name: name.to_string(),
            index,
            analytic,
            estimate,
            stderr,
            pass: (estimate - analytic).abs() <= PASS_SIGMAS * stderr,
        }
    }

    /// Deviation in pooled standard errors.
    pub fn z_score(&self) -> f64 {
        (self.estimate - self.analytic) / self.stderr
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationOutcome {
    pub checks: Vec<PooledCheck>,
    pub two_sided: Vec<RegressionEstimate>,
    pub one_sided: Vec<RegressionEstimate>,
}

impl VerificationOutcome {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs `replications` independent AR paths (RNG stream = replication index) concurrently
/// and pools their regression estimates in index order.
pub fn run_verification(plan: &VerificationPlan) -> Result<VerificationOutcome> {
    if plan.replications == 0 {
        return Err(Error::InvalidArgument(
            "need at least one replication".into(),
        ));
    }
    let fits: Vec<(RegressionEstimate, RegressionEstimate)> = (0..plan.replications as u64)
        .into_par_iter()
        .map(|rep| {
            let path = simulate_ar_stream(&plan.model, plan.length, plan.burn_in, plan.seed, rep)?;
            Ok((
                estimate_two_sided(&path, plan.order)?,
                estimate_one_sided(&path, plan.order)?,
            ))
        })
        .collect::<Result<_>>()?;
    let (two_sided, one_sided): (Vec<_>, Vec<_>) = fits.into_iter().unzip();

    let mut checks = Vec::new();
    for j in 0..plan.order {
        let est: Vec<_> = two_sided
            .iter()
            .map(|f| (f.coeffs[j], f.stderr[j]))
            .collect();
        checks.push(PooledCheck::new("b", j + 1, plan.symbol.get(j + 1), &est));
    }
    let est: Vec<_> = two_sided
        .iter()
        .map(|f| (f.residual_variance, f.residual_variance_stderr))
        .collect();
    checks.push(PooledCheck::new("v", 0, plan.v, &est));
    for j in 0..plan.order {
        let est: Vec<_> = one_sided
            .iter()
            .map(|f| (f.coeffs[j], f.stderr[j]))
            .collect();
        let analytic = plan.model.betas.get(j).copied().unwrap_or(0.0);
        checks.push(PooledCheck::new("beta", j + 1, analytic, &est));
    }
    let est: Vec<_> = one_sided
        .iter()
        .map(|f| (f.residual_variance, f.residual_variance_stderr))
        .collect();
    checks.push(PooledCheck::new("w", 0, plan.model.w, &est));

    Ok(VerificationOutcome {
        checks,
        two_sided,
        one_sided,
    })
}
