//! Statistical behavior of the finite-shot pipeline across many seeds:
//! empirical tables converge to the Born tables, the plug-in estimator
//! concentrates around the true witness, and the bootstrap interval
//! covers it at roughly its nominal rate.
//!
//! All seeds are fixed, so these are deterministic regression tests of
//! statistical behavior, not flaky assertions.

use qctx_core::dist::PairTable;
use qctx_core::entropy::evaluate_c;
use qctx_core::quantum::{build_pentagon_family, FamilyParams, PentagonConfig};
use qctx_core::sample::{estimate_c, sample_pentagon_edges};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn optimum() -> PentagonConfig {
    build_pentagon_family(&FamilyParams::new(0.2366, 0.1698).unwrap()).unwrap()
}

fn tv(a: &PairTable, b: &PairTable) -> f64 {
    let (x, y) = (a.cells(), b.cells());
    0.5 * (0..2)
        .flat_map(|i| (0..2).map(move |j| (x[i][j] - y[i][j]).abs()))
        .sum::<f64>()
}

#[test]
fn empirical_tables_converge_in_total_variation() {
    let config = optimum();
    let truth = config.edge_distributions().unwrap();
    let shots = 10_000u64;
    let bound = 5.0 / (shots as f64).sqrt();

    let mut within = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let counts = sample_pentagon_edges(&mut rng, &config, shots).unwrap();
        let worst = counts
            .iter()
            .zip(&truth)
            .map(|(c, t)| tv(&c.frequencies().unwrap(), t))
            .fold(0.0, f64::max);
        if worst <= bound {
            within += 1;
        }
    }
    assert!(within >= 95, "only {within}/100 seeds within 5/sqrt(n)");
}

#[test]
fn plugin_estimates_concentrate_on_the_true_witness() {
    let config = optimum();
    let truth = evaluate_c(&config).unwrap().c_value;
    let shots = 10_000u64;

    let mut close = 0;
    let mut sum = 0.0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1_000 + seed);
        let counts = sample_pentagon_edges(&mut rng, &config, shots).unwrap();
        // One resample: only the point estimate matters here.
        let c_hat = estimate_c(&counts, shots, 1, 0, false).unwrap().c_hat;
        sum += c_hat;
        if (c_hat - truth).abs() < 0.05 {
            close += 1;
        }
    }
    assert!(close >= 95, "only {close}/100 estimates within 0.05");
    let mean = sum / 100.0;
    assert!(
        (mean - truth).abs() < 0.005,
        "mean estimate {mean} drifted from {truth}"
    );
}

#[test]
fn bootstrap_interval_covers_near_nominal_rate() {
    let config = optimum();
    let truth = evaluate_c(&config).unwrap().c_value;
    let shots = 10_000u64;

    let mut covered = 0;
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(20_000 + seed);
        let counts = sample_pentagon_edges(&mut rng, &config, shots).unwrap();
        let est = estimate_c(&counts, shots, 200, 77 + seed, false).unwrap();
        if est.ci_low <= truth && truth <= est.ci_high {
            covered += 1;
        }
    }
    // Nominal 95%; demand at least 84% to keep the regression sharp
    // without being brittle to the seed set.
    assert!(covered >= 42, "coverage {covered}/50");
}

#[test]
fn miller_madow_reduces_small_sample_bias() {
    let config = optimum();
    let truth = evaluate_c(&config).unwrap().c_value;
    let shots = 200u64;

    let (mut bias_plain, mut bias_mm) = (0.0, 0.0);
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(40_000 + seed);
        let counts = sample_pentagon_edges(&mut rng, &config, shots).unwrap();
        let plain = estimate_c(&counts, shots, 1, 0, false).unwrap().c_hat;
        let mm = estimate_c(&counts, shots, 1, 0, true).unwrap().c_hat;
        bias_plain += plain - truth;
        bias_mm += mm - truth;
    }
    bias_plain /= 200.0;
    bias_mm /= 200.0;
    assert!(
        bias_mm.abs() < bias_plain.abs(),
        "correction failed to shrink bias: plain {bias_plain}, corrected {bias_mm}"
    );
}
