mod common;

use common::*;
use kgo_core::special::{
    hermite_function, hermite_poly, laguerre_function, laguerre_poly, legendre_p, log_gamma,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn hermite_functions_match_exact_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let n = rng.random_range(0..=50);
        let x: f64 = rng.random_range(-10.0..10.0);
        let exact = hermite_function_oracle(n, x);
        worst = worst.max(guarded_relative_error(hermite_function(n, x), exact, 1e-4));
    }
    assert!(worst < 1e-10, "worst {worst:e}");
}

#[test]
fn hermite_polynomials_match_exact_series() {
    for n in 0..=20 {
        for x in [-3.5, -1.0, 0.0, 0.25, 2.0, 4.75] {
            let exact = hermite_exact(n, x);
            let got = hermite_poly(n, x).unwrap();
            assert!(guarded_relative_error(got, exact, 1.0) < 1e-12, "n={n} x={x}");
        }
    }
}

#[test]
fn laguerre_functions_match_exact_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let n = rng.random_range(0..=50);
        let two_alpha = rng.random_range(0..=21u64);
        let top = 4.0 * n as f64 + two_alpha as f64 + 10.0;
        let rho: f64 = rng.random_range(0.01..top);
        let exact = laguerre_function_oracle(n, two_alpha, rho);
        let got = laguerre_function(n, two_alpha as f64 / 2.0, rho);
        worst = worst.max(guarded_relative_error(got, exact, 1e-4));
    }
    assert!(worst < 1e-10, "worst {worst:e}");
}

#[test]
fn laguerre_polynomials_match_exact_series() {
    for n in 0..=15 {
        for two_alpha in [0u64, 1, 4, 7] {
            for rho in [0.0, 0.5, 3.0, 11.25] {
                let exact = laguerre_exact(n, two_alpha, rho);
                let got = laguerre_poly(n, two_alpha as f64 / 2.0, rho);
                assert!(guarded_relative_error(got, exact, 1.0) < 1e-11, "n={n} a={two_alpha}/2 rho={rho}");
            }
        }
    }
}

#[test]
fn legendre_matches_exact_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let n = rng.random_range(0..=50);
        let x: f64 = rng.random_range(-1.0..=1.0);
        let exact = legendre_exact(n, x);
        let err = guarded_relative_error(legendre_p(n, x), exact, 1e-4);
        assert!(err < 1e-10, "n={n} x={x}: {err:e}");
    }
}

#[test]
fn log_gamma_matches_factorials() {
    for two_x in 1..=400u64 {
        let exact = log_gamma_oracle(two_x);
        let got = log_gamma(two_x as f64 / 2.0).unwrap();
        let err = (got - exact).abs() / exact.abs().max(1.0);
        assert!(err < 1e-13, "x={}: {got} vs {exact}", two_x as f64 / 2.0);
    }
}
