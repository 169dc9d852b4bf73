//! Acceptance criteria. Run with `cargo test -p harness-core --test acceptance`;
//! prints one PASS/FAIL line per criterion and exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use harness_core::correlation::symbol_identity_residual;
use harness_core::factorization::MAX_ROOT_DEGREE;
use harness_core::simulation::{
    default_burn_in, run_verification, simulate_ar, simulate_circulant, VerificationPlan,
};
use harness_core::{
    band_beta_to_b, beta_from_factor, build_symbol, check_positivity, correlations_auto,
    empirical_correlations, fejer_riesz, szego_factor_auto, verify_bbeta_identity, yule_walker,
    SymbolCoefficients,
};

const CORPUS_SEED: u64 = 0x5eed_0001;
const ROUND_TRIP_SEED: u64 = 0x5eed_0002;
const POSITIVITY_SEED: u64 = 0x5eed_0003;
const MONTE_CARLO_SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.detail = format!("{} [{:.2?}]", out.detail, elapsed);
    if let Some(limit) = limit {
        if elapsed > limit {
            out.pass = false;
            out.detail = format!("{} exceeds {:?}", out.detail, limit);
        }
    }
    out
}

fn corpus() -> Vec<SymbolCoefficients> {
    common::random_band_symbols(100, 8, 0.45, CORPUS_SEED)
        .into_iter()
        .map(|b| build_symbol(&b).unwrap())
        .collect()
}

/// b = [0.4]: r_1 = 0.5, v = 0.6, beta_1 = 0.5, w = 0.75, v/w = 0.8.
fn ac1_bryc_chain() -> Outcome {
    let sym = build_symbol(&[0.4]).unwrap();
    let corr = correlations_auto(&sym).unwrap();
    let (model, ratio) = beta_from_factor(&fejer_riesz(&sym).unwrap()).unwrap();
    let got = [corr.r()[1], corr.v(), model.betas[0], model.w, ratio];
    let want = [0.5, 0.6, 0.5, 0.75, 0.8];
    let err = got
        .iter()
        .zip(want)
        .map(|(g, w)| (g - w).abs())
        .fold(0.0, f64::max);
    check(
        err < 1e-10 && model.betas.len() == 1,
        format!(
            "r1={:.12} v={:.12} beta1={:.12} w={:.12} v/w={:.12}; max err {err:.2e} < 1e-10",
            got[0], got[1], got[2], got[3], got[4]
        ),
    )
}

/// max over the grid of |b r - v| < 1e-9 on 100 random band symbols.
fn ac2_symbol_identity(corpus: &[SymbolCoefficients]) -> Outcome {
    let worst = corpus
        .iter()
        .map(|sym| symbol_identity_residual(sym, &correlations_auto(sym).unwrap()))
        .fold(0.0, f64::max);
    check(
        worst < 1e-9,
        format!(
            "max |b r - v| = {worst:.2e} < 1e-9 over {} symbols",
            corpus.len()
        ),
    )
}

/// b = (v/w) |beta|^2 with beta from the root factorization, residual < 1e-8.
fn ac3_bbeta_identity(corpus: &[SymbolCoefficients]) -> Outcome {
    let worst = corpus
        .iter()
        .map(|sym| {
            let v = correlations_auto(sym).unwrap().v();
            let (model, _) = beta_from_factor(&fejer_riesz(sym).unwrap()).unwrap();
            verify_bbeta_identity(sym, &model, v, model.w, 4096)
        })
        .fold(0.0, f64::max);
    check(
        worst < 1e-8,
        format!("max |b - (v/w)|beta|^2| = {worst:.2e} < 1e-8"),
    )
}

/// Roots, cepstrum and Levinson-Durbin (n = 4N) agree on beta to 1e-8.
fn ac4_route_agreement(corpus: &[SymbolCoefficients]) -> Outcome {
    let mut worst: f64 = 0.0;
    for sym in corpus {
        assert!(sym.band() <= MAX_ROOT_DEGREE);
        let n = sym.band();
        let (roots, _) = beta_from_factor(&fejer_riesz(sym).unwrap()).unwrap();
        let (cepstral, _) = beta_from_factor(&szego_factor_auto(sym).unwrap()).unwrap();
        let corr = correlations_auto(sym).unwrap();
        let levinson = yule_walker(&corr, 4 * n).unwrap().betas;
        let at = |v: &[f64], j: usize| v.get(j).copied().unwrap_or(0.0);
        for j in 0..4 * n {
            let reference = at(&roots.betas, j);
            worst = worst
                .max((at(&cepstral.betas, j) - reference).abs())
                .max((at(&levinson, j) - reference).abs());
        }
        let cepstral_tail = cepstral
            .betas
            .iter()
            .skip(n)
            .map(|b| b.abs())
            .fold(0.0, f64::max);
        worst = worst.max(cepstral_tail);
    }
    check(
        worst < 1e-8,
        format!("max componentwise disagreement {worst:.2e} < 1e-8"),
    )
}

/// 500 minimum-phase beta: beta -> b -> factor -> beta within 1e-8, band width preserved.
fn ac5_round_trip() -> Outcome {
    let cases = common::random_minimum_phase(500, 8, 1.0, ROUND_TRIP_SEED);
    let mut worst: f64 = 0.0;
    let mut band_mismatch = 0;
    for beta in &cases {
        let sym = band_beta_to_b(beta).unwrap();
        let (model, _) = beta_from_factor(&fejer_riesz(&sym).unwrap()).unwrap();
        if sym.band() != beta.len() || model.band_width(1e-10) != beta.len() {
            band_mismatch += 1;
        }
        for (j, b) in beta.iter().enumerate() {
            worst = worst.max((model.betas.get(j).copied().unwrap_or(0.0) - b).abs());
        }
    }
    check(
        worst < 1e-8 && band_mismatch == 0,
        format!(
            "max |beta - beta_rt| = {worst:.2e} < 1e-8; band width mismatches: {band_mismatch}"
        ),
    )
}

/// Pooled OLS estimates of b, v, beta, w within 3 pooled standard errors.
fn ac6_monte_carlo() -> Outcome {
    let symbols = [
        ("b=[0.4]", build_symbol(&[0.4]).unwrap()),
        ("beta=(0.3,0.2)", band_beta_to_b(&[0.3, 0.2]).unwrap()),
    ];
    let mut pass = true;
    let mut lines = Vec::new();
    for (label, sym) in symbols {
        let plan = VerificationPlan::for_symbol(
            sym.clone(),
            sym.band() + 2,
            1_000_000,
            4,
            MONTE_CARLO_SEED,
        )
        .unwrap();
        let out = run_verification(&plan).unwrap();
        pass &= out.all_pass();
        let worst = out
            .checks
            .iter()
            .map(|c| c.z_score().abs())
            .fold(0.0, f64::max);
        let failed: Vec<_> = out
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("{}_{}", c.name, c.index))
            .collect();
        lines.push(format!(
            "{label}: {} checks, max |z| = {worst:.2}{}",
            out.checks.len(),
            if failed.is_empty() {
                String::new()
            } else {
                format!(", failed {failed:?}")
            }
        ));
    }
    check(pass, lines.join("; "))
}

/// sum |b_j| < 1/2 implies positivity; b = [0.5] is rejected with min 0.
fn ac7_sufficient_condition() -> Outcome {
    let symbols = common::random_band_symbols(1000, 16, 0.5, POSITIVITY_SEED);
    let mut failures = 0;
    for b in &symbols {
        let sym = build_symbol(b).unwrap();
        let report = check_positivity(&sym, 4096);
        if !(report.sufficient_condition_met && report.is_positive) {
            failures += 1;
        }
    }
    let boundary = check_positivity(&build_symbol(&[0.5]).unwrap(), 4096);
    check(
        failures == 0 && !boundary.is_positive && boundary.min_value.abs() <= 1e-12,
        format!(
            "{failures}/1000 sufficient-condition symbols not positive; b=[0.5]: is_positive={}, min={:.1e}",
            boundary.is_positive, boundary.min_value
        ),
    )
}

/// AR and circulant paths reproduce r_1, r_2 within 3 sigma at T = 1e5.
fn ac8_generator_cross_check() -> Outcome {
    let t = 100_000;
    let mut pass = true;
    let mut lines = Vec::new();
    for sym in [
        build_symbol(&[0.4]).unwrap(),
        band_beta_to_b(&[0.3, 0.2]).unwrap(),
    ] {
        let corr = correlations_auto(&sym).unwrap();
        let (model, _) = beta_from_factor(&fejer_riesz(&sym).unwrap()).unwrap();
        let ar = simulate_ar(&model, t, default_burn_in(model.betas.len()), 101).unwrap();
        let circ = simulate_circulant(&corr, t, 202).unwrap();
        for (tag, path) in [("ar", ar), ("circulant", circ)] {
            let emp = empirical_correlations(&path, 2).unwrap();
            for k in 1..=2 {
                let z = (emp.r[k] - corr.r()[k]) / emp.stderr[k];
                pass &= z.abs() <= 3.0;
                lines.push(format!("{tag} r{k} z={z:+.2}"));
            }
        }
    }
    check(pass, lines.join(", "))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<(&str, Outcome)> = vec![
        (
            "AC1 Bryc chain",
            timed(Some(Duration::from_secs(1)), ac1_bryc_chain),
        ),
        (
            "AC2 symbol identity b r = v",
            timed(Some(Duration::from_secs(10)), || {
                ac2_symbol_identity(&corpus)
            }),
        ),
        (
            "AC3 factorization identity b = (v/w) beta beta~",
            timed(Some(Duration::from_secs(10)), || {
                ac3_bbeta_identity(&corpus)
            }),
        ),
        (
            "AC4 route agreement",
            timed(None, || ac4_route_agreement(&corpus)),
        ),
        ("AC5 band round trip", timed(None, ac5_round_trip)),
        (
            "AC6 Monte Carlo regression recovery",
            timed(Some(Duration::from_secs(60)), ac6_monte_carlo),
        ),
        (
            "AC7 sufficient positivity condition",
            timed(None, ac7_sufficient_condition),
        ),
        (
            "AC8 generator cross-check",
            timed(None, ac8_generator_cross_check),
        ),
    ];
    let mut all = true;
    for (name, outcome) in &criteria {
        all &= outcome.pass;
        println!(
            "{} {name}: {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
