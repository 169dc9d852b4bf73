//! The `analyze`, `factor`, `simulate` and `verify` workflows.

use harness_core::correlation::{min_section_eigenvalue, symbol_identity_residual, DEFAULT_DEPTH};
use harness_core::simulation::{
    default_burn_in, run_verification, simulate_ar, simulate_circulant, VerificationPlan,
};
use harness_core::{
    band_beta_to_b, beta_from_factor, build_symbol, check_positivity, check_v_identity,
    correlations_auto, correlations_from_symbol, empirical_correlations, spectral_factor,
    szego_factor_auto, verify_bbeta_identity, yule_walker, CorrelationSequence, GeneratorTag,
    OneSidedModel, SymbolCoefficients,
};

use crate::config::{JobConfig, SymbolInput};
use crate::report::{Block, Quantity, Report};

/// Routes disagreeing by more than this are reported as an internal inconsistency.
pub const ROUTE_TOLERANCE: f64 = 1e-6;

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// A finished report and the process exit code it implies.
pub struct Outcome {
    pub report: Report,
    pub exit_code: u8,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Self {
            report,
            exit_code: EXIT_OK,
        }
    }

    fn fail(mut report: Report, note: impl Into<String>) -> Self {
        report.status = "fail".into();
        report.notes.push(note.into());
        Self {
            report,
            exit_code: EXIT_DOMAIN,
        }
    }
}

macro_rules! try_domain {
    ($report:ident, $expr:expr) => {
        match $expr {
            Ok(v) => v,
            Err(e) => return Outcome::fail($report, e.to_string()),
        }
    };
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    let at = |v: &[f64], j: usize| v.get(j).copied().unwrap_or(0.0);
    (0..a.len().max(b.len()))
        .map(|j| (at(a, j) - at(b, j)).abs())
        .fold(0.0, f64::max)
}

/// Builds the symbol and fills the `input` block.
fn input(config: &JobConfig, report: &mut Report) -> harness_core::Result<SymbolCoefficients> {
    let mut block = Block::default();
    let sym = match config.symbol_input() {
        SymbolInput::B(b) => build_symbol(&b)?,
        SymbolInput::Beta(beta) => {
            block.values.push("beta", beta.as_slice());
            band_beta_to_b(&beta)?
        }
    };
    block.values.push("b", sym.coeffs());
    block.values.push("band", sym.band() as f64);
    block.values.push("wiener_norm", sym.wiener_norm());
    report.input = Some(block);
    Ok(sym)
}

/// Fills the `existence` block; returns whether the symbol is positive.
fn existence(sym: &SymbolCoefficients, config: &JobConfig, report: &mut Report) -> bool {
    let p = check_positivity(sym, config.grid);
    let mut block = Block::default();
    block.values.push("is_positive", p.is_positive);
    block.values.push("verdict", p.describe());
    block.values.push("min_value", p.min_value);
    block.values.push("argmin_angle", p.argmin_angle);
    block.values.push("wiener_sum", p.wiener_sum);
    block
        .values
        .push("sufficient_condition_met", p.sufficient_condition_met);
    report.existence = Some(block);
    p.is_positive
}

/// Fills the `correlation` block. Identities are checked on the automatically sized
/// sequence; the returned and reported sequence has depth `K` when the config sets one.
fn correlations(
    sym: &SymbolCoefficients,
    config: &JobConfig,
    min_depth: usize,
    report: &mut Report,
) -> harness_core::Result<CorrelationSequence> {
    let full = correlations_auto(sym)?;
    if config.depth.is_none() && full.depth() > DEFAULT_DEPTH {
        report.notes.push(format!(
            "slow correlation decay: depth K = {} selected so that |r_K| < 1e-12",
            full.depth()
        ));
    }
    let depth = config.depth.unwrap_or(full.depth()).max(min_depth);
    let corr = if depth == full.depth() {
        full.clone()
    } else {
        correlations_from_symbol(sym, depth)?
    };
    let mut block = Block::default();
    block.values.push("K", corr.depth() as f64);
    block.values.push("v", corr.v());
    block.values.push("r", corr.r());
    let n_check = 64.min(corr.depth() + 1);
    block.values.push(
        "min_section_eigenvalue",
        min_section_eigenvalue(&corr, n_check)?,
    );
    block
        .residuals
        .push("symbol_identity", symbol_identity_residual(sym, &full));
    block
        .residuals
        .push("v_identity", check_v_identity(sym, &full));
    report.correlation = Some(block);
    Ok(corr)
}

pub fn analyze(config: JobConfig) -> Outcome {
    let mut report = Report::new("analyze", config.clone());
    let sym = try_domain!(report, input(&config, &mut report));
    if !existence(&sym, &config, &mut report) {
        let verdict = match report
            .existence
            .as_ref()
            .and_then(|b| b.values.get("verdict"))
        {
            Some(Quantity::Text(t)) => t.clone(),
            _ => "symbol is not positive".into(),
        };
        return Outcome::fail(report, verdict);
    }
    try_domain!(report, correlations(&sym, &config, 0, &mut report));
    Outcome::ok(report)
}

pub fn factor(config: JobConfig) -> Outcome {
    let mut report = Report::new("factor", config.clone());
    let sym = try_domain!(report, input(&config, &mut report));
    if !existence(&sym, &config, &mut report) {
        return Outcome::fail(report, "symbol is not positive; no factorization exists");
    }
    let n = sym.band();
    let levinson_order = config.order.unwrap_or(4 * n);
    let corr = try_domain!(
        report,
        correlations(&sym, &config, levinson_order, &mut report)
    );

    let factor = try_domain!(report, spectral_factor(&sym));
    let (model, ratio) = try_domain!(report, beta_from_factor(&factor));
    let (cepstral, _) = try_domain!(
        report,
        szego_factor_auto(&sym).and_then(|f| beta_from_factor(&f))
    );
    let levinson = try_domain!(report, yule_walker(&corr, levinson_order));

    let mut block = Block::default();
    block.values.push("c", factor.coeffs());
    block.values.push("beta", model.betas.as_slice());
    block.values.push("w", model.w);
    block.values.push("v", corr.v());
    block.values.push("v_over_w", ratio);
    block.values.push(
        "beta_cepstral",
        &cepstral.betas[..n.min(cepstral.betas.len())],
    );
    block
        .values
        .push("beta_levinson", levinson.betas.as_slice());
    block.values.push("w_levinson", levinson.w);

    let route_cepstral = max_abs_diff(&cepstral.betas, &model.betas);
    let route_levinson = max_abs_diff(&levinson.betas, &model.betas[..n.min(levinson_order)]);
    block.residuals.push("route_cepstral", route_cepstral);
    block.residuals.push("route_levinson", route_levinson);
    block.residuals.push(
        "bbeta_identity",
        verify_bbeta_identity(&sym, &model, corr.v(), model.w, config.grid),
    );
    block
        .residuals
        .push("ratio_identity", (ratio - corr.v() / model.w).abs());
    if n > 0 {
        block.residuals.push(
            "band_ratio_identity",
            (ratio - sym.coeffs()[n - 1] / model.betas[n - 1]).abs(),
        );
    }
    if let SymbolInput::Beta(beta) = config.symbol_input() {
        block
            .residuals
            .push("round_trip", max_abs_diff(&beta, &model.betas));
    }
    report.factorization = Some(block);

    if route_cepstral.max(route_levinson) > ROUTE_TOLERANCE {
        return Outcome::fail(
            report,
            format!("factorization routes disagree by more than {ROUTE_TOLERANCE:e}"),
        );
    }
    Outcome::ok(report)
}

fn model_for(sym: &SymbolCoefficients) -> harness_core::Result<OneSidedModel> {
    Ok(beta_from_factor(&spectral_factor(sym)?)?.0)
}

pub fn simulate(config: JobConfig) -> Outcome {
    let mut report = Report::new("simulate", config.clone());
    let sym = try_domain!(report, input(&config, &mut report));
    if !existence(&sym, &config, &mut report) {
        return Outcome::fail(report, "symbol is not positive; the field does not exist");
    }
    let corr = try_domain!(report, correlations(&sym, &config, 0, &mut report));
    let path = match config.generator {
        GeneratorTag::Ar => {
            let model = try_domain!(report, model_for(&sym));
            let burn_in = default_burn_in(model.betas.len());
            try_domain!(
                report,
                simulate_ar(&model, config.length, burn_in, config.seed)
            )
        }
        GeneratorTag::Circulant => {
            try_domain!(
                report,
                simulate_circulant(&corr, config.length, config.seed)
            )
        }
    };
    let lags = config
        .order
        .unwrap_or(10)
        .min(corr.depth())
        .min(config.length.saturating_sub(1) / 10);

    let mut block = Block::default();
    block.values.push(
        "generator",
        match path.generator {
            GeneratorTag::Ar => "ar",
            GeneratorTag::Circulant => "circulant",
        },
    );
    block
        .values
        .push("rng_algorithm", path.rng_algorithm.as_str());
    block.values.push("seed", path.seed as f64);
    block.values.push("burn_in", path.burn_in as f64);
    block.values.push("path", path.values.as_slice());
    if lags > 0 {
        let emp = try_domain!(report, empirical_correlations(&path, lags));
        let z: Vec<f64> = (1..=lags)
            .map(|k| (emp.r[k] - corr.r()[k]) / emp.stderr[k])
            .collect();
        block.values.push("r", &corr.r()[..=lags]);
        block.values.push(
            "r_hat",
            Quantity::Estimates {
                value: emp.r,
                stderr: emp.stderr,
            },
        );
        block.residuals.push("r_hat_z", z);
    }
    report.verification = Some(block);
    Outcome::ok(report)
}

pub fn verify(config: JobConfig) -> Outcome {
    let mut report = Report::new("verify", config.clone());
    let sym = try_domain!(report, input(&config, &mut report));
    if !existence(&sym, &config, &mut report) {
        return Outcome::fail(report, "symbol is not positive; nothing to verify");
    }
    try_domain!(report, correlations(&sym, &config, 0, &mut report));
    let order = config.order.unwrap_or(sym.band() + 2);
    let plan = try_domain!(
        report,
        VerificationPlan::for_symbol(sym, order, config.length, config.reps, config.seed)
    );
    let outcome = try_domain!(report, run_verification(&plan));

    let mut block = Block::default();
    for name in ["b", "v", "beta", "w"] {
        let checks: Vec<_> = outcome.checks.iter().filter(|c| c.name == name).collect();
        let analytic: Vec<f64> = checks.iter().map(|c| c.analytic).collect();
        let estimate: Vec<f64> = checks.iter().map(|c| c.estimate).collect();
        let stderr: Vec<f64> = checks.iter().map(|c| c.stderr).collect();
        let z: Vec<f64> = checks.iter().map(|c| c.z_score()).collect();
        if checks.len() == 1 && checks[0].index == 0 {
            block.values.push(name, analytic[0]);
            block.values.push(
                &format!("{name}_hat"),
                Quantity::Estimate {
                    value: estimate[0],
                    stderr: stderr[0],
                },
            );
            block.residuals.push(&format!("{name}_z"), z[0]);
        } else {
            block.values.push(name, analytic);
            block.values.push(
                &format!("{name}_hat"),
                Quantity::Estimates {
                    value: estimate,
                    stderr,
                },
            );
            block.residuals.push(&format!("{name}_z"), z);
        }
    }
    let failed: Vec<String> = outcome
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| {
            if c.index == 0 {
                c.name.clone()
            } else {
                format!("{}_{}", c.name, c.index)
            }
        })
        .collect();
    block.values.push("replications", config.reps as f64);
    block.values.push("pass", failed.is_empty());
    report.verification = Some(block);

    if failed.is_empty() {
        report.notes.push(format!(
            "PASS: all {} pooled estimates within 3 standard errors",
            outcome.checks.len()
        ));
        Outcome::ok(report)
    } else {
        Outcome::fail(
            report,
            format!("FAIL: {} outside 3 standard errors", failed.join(", ")),
        )
    }
}
