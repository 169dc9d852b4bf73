use harness_core::simulation::default_burn_in;
use harness_core::{
    band_beta_to_b, beta_from_factor, build_symbol, correlations_auto, correlations_from_symbol,
    empirical_correlations, estimate_one_sided, estimate_two_sided, fejer_riesz, simulate_ar,
    simulate_circulant, CorrelationSequence, OneSidedModel, SamplePath,
};

fn bryc_model() -> OneSidedModel {
    OneSidedModel {
        betas: vec![0.5],
        w: 0.75,
    }
}

fn two_band_model() -> OneSidedModel {
    let sym = band_beta_to_b(&[0.3, 0.2]).unwrap();
    beta_from_factor(&fejer_riesz(&sym).unwrap()).unwrap().0
}

fn within(est: f64, target: f64, stderr: f64) -> bool {
    (est - target).abs() <= 3.0 * stderr
}

fn ar_path(model: &OneSidedModel, t: usize, seed: u64) -> SamplePath {
    simulate_ar(model, t, default_burn_in(model.betas.len()), seed).unwrap()
}

#[test]
fn ar_bryc_lag_one() {
    let path = ar_path(&bryc_model(), 1_000_000, 1);
    let emp = empirical_correlations(&path, 3).unwrap();
    assert!((emp.r[1] - 0.5).abs() < 0.003, "r1 = {}", emp.r[1]);
}

#[test]
fn circulant_bryc_lag_two() {
    let corr = correlations_from_symbol(&build_symbol(&[0.4]).unwrap(), 128).unwrap();
    let path = simulate_circulant(&corr, 100_000, 2).unwrap();
    let emp = empirical_correlations(&path, 2).unwrap();
    assert!((emp.r[2] - 0.25).abs() < 0.01, "r2 = {}", emp.r[2]);
}

#[test]
fn circulant_white_noise() {
    let path = simulate_circulant(&CorrelationSequence::white_noise(4), 10_000, 3).unwrap();
    let emp = empirical_correlations(&path, 3).unwrap();
    assert!(emp.r[1].abs() < 0.03);
}

#[test]
fn white_noise_regressions() {
    let path = ar_path(&OneSidedModel::white_noise(), 100_000, 4);
    let emp = empirical_correlations(&path, 3).unwrap();
    for k in 1..=3 {
        assert!(within(emp.r[k], 0.0, emp.stderr[k]));
    }
    let two = estimate_two_sided(&path, 3).unwrap();
    let one = estimate_one_sided(&path, 3).unwrap();
    for j in 0..3 {
        assert!(within(two.coeffs[j], 0.0, two.stderr[j]));
        assert!(within(one.coeffs[j], 0.0, one.stderr[j]));
    }
    assert!((two.residual_variance - 1.0).abs() < 0.02);
    assert!((one.residual_variance - 1.0).abs() < 0.02);
}

#[test]
fn bryc_regressions() {
    let path = ar_path(&bryc_model(), 1_000_000, 5);
    let two = estimate_two_sided(&path, 3).unwrap();
    for (j, target) in [0.4, 0.0, 0.0].into_iter().enumerate() {
        assert!(
            within(two.coeffs[j], target, two.stderr[j]),
            "b_{} = {}",
            j + 1,
            two.coeffs[j]
        );
    }
    assert!((two.residual_variance - 0.6).abs() < 0.01);

    let one = estimate_one_sided(&path, 2).unwrap();
    for (j, target) in [0.5, 0.0].into_iter().enumerate() {
        assert!(
            within(one.coeffs[j], target, one.stderr[j]),
            "beta_{} = {}",
            j + 1,
            one.coeffs[j]
        );
    }
    assert!((one.residual_variance - 0.75).abs() < 0.01);
}

#[test]
fn two_band_regressions_and_band_cutoff() {
    let model = two_band_model();
    let sym = band_beta_to_b(&[0.3, 0.2]).unwrap();
    let corr = correlations_auto(&sym).unwrap();
    let path = ar_path(&model, 1_000_000, 6);

    let emp = empirical_correlations(&path, 4).unwrap();
    for k in 1..=4 {
        assert!(within(emp.r[k], corr.r()[k], emp.stderr[k]), "r_{k}");
    }

    let two = estimate_two_sided(&path, 4).unwrap();
    for j in 0..4 {
        assert!(
            within(two.coeffs[j], sym.get(j + 1), two.stderr[j]),
            "b_{}",
            j + 1
        );
    }
    assert!(within(
        two.residual_variance,
        corr.v(),
        two.residual_variance_stderr
    ));

    // beyond lag N the one-sided coefficients are indistinguishable from zero
    let one = estimate_one_sided(&path, 4).unwrap();
    for (j, target) in [0.3, 0.2, 0.0, 0.0].into_iter().enumerate() {
        assert!(
            within(one.coeffs[j], target, one.stderr[j]),
            "beta_{}",
            j + 1
        );
    }
    assert!(within(
        one.residual_variance,
        model.w,
        one.residual_variance_stderr
    ));
}

#[test]
fn generators_agree_with_analytic_correlations() {
    let sym = build_symbol(&[0.25, -0.1, 0.05]).unwrap();
    let corr = correlations_auto(&sym).unwrap();
    let (model, _) = beta_from_factor(&fejer_riesz(&sym).unwrap()).unwrap();
    let ar = ar_path(&model, 1_000_000, 7);
    let circ = simulate_circulant(&corr, 1_000_000, 8).unwrap();
    for path in [ar, circ] {
        let emp = empirical_correlations(&path, 5).unwrap();
        for k in 1..=5 {
            assert!(
                within(emp.r[k], corr.r()[k], emp.stderr[k]),
                "{:?} r_{k}: {} vs {}",
                path.generator,
                emp.r[k],
                corr.r()[k]
            );
        }
    }
}

#[test]
fn paths_are_bit_reproducible() {
    let corr = correlations_auto(&build_symbol(&[0.3]).unwrap()).unwrap();
    let a = simulate_circulant(&corr, 4096, 99).unwrap();
    let b = simulate_circulant(&corr, 4096, 99).unwrap();
    assert!(a
        .values
        .iter()
        .zip(&b.values)
        .all(|(x, y)| x.to_bits() == y.to_bits()));
    let a = ar_path(&bryc_model(), 4096, 99);
    let b = ar_path(&bryc_model(), 4096, 99);
    assert!(a
        .values
        .iter()
        .zip(&b.values)
        .all(|(x, y)| x.to_bits() == y.to_bits()));
}
