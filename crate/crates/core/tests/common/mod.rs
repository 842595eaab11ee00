//! Independent oracles shared by the integration tests: exact rational
//! power series for the classical polynomials, exact factorial-based gamma
//! values, and helpers to compare against them.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::f64::consts::PI;

pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite input")
}

pub fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().expect("representable")
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Coefficients of the monomials x^0 .. x^n.
pub type Coeffs = Vec<BigRational>;

/// H_n(x) = n! sum_m (-1)^m (2x)^(n-2m) / (m! (n-2m)!).
pub fn hermite_coeffs(n: usize) -> Coeffs {
    let mut c = vec![BigRational::zero(); n + 1];
    for m in 0..=n / 2 {
        let k = n - 2 * m;
        let mag = BigRational::new(
            factorial(n as u64) << k,
            factorial(m as u64) * factorial(k as u64),
        );
        c[k] = if m % 2 == 0 { mag } else { -mag };
    }
    c
}

/// L_n^(alpha)(x) = sum_k (-1)^k binom(n + alpha, n - k) x^k / k! for
/// rational alpha.
pub fn laguerre_coeffs(n: usize, alpha: &BigRational) -> Coeffs {
    (0..=n)
        .map(|k| {
            // binom(n + alpha, n - k) = prod_{j=1}^{n-k} (alpha + k + j) / j
            let mut binom = BigRational::one();
            for j in 1..=(n - k) {
                binom *= (alpha + int((k + j) as u64)) / int(j as u64);
            }
            let mag = binom / BigRational::from_integer(factorial(k as u64));
            if k % 2 == 0 {
                mag
            } else {
                -mag
            }
        })
        .collect()
}

/// P_n(x) = 2^-n sum_k (-1)^k binom(n, k) binom(2n - 2k, n) x^(n - 2k).
pub fn legendre_coeffs(n: usize) -> Coeffs {
    let binom = |a: u64, b: u64| factorial(a) / (factorial(b) * factorial(a - b));
    let mut c = vec![BigRational::zero(); n + 1];
    for k in 0..=n / 2 {
        let mag = BigRational::new(
            binom(n as u64, k as u64) * binom((2 * n - 2 * k) as u64, n as u64),
            BigInt::one() << n,
        );
        c[n - 2 * k] = if k % 2 == 0 { mag } else { -mag };
    }
    c
}

/// Exact value of the polynomial at the binary64 number x, rounded once.
/// Works in integers: x = p 2^e and all coefficients share one denominator.
pub fn eval_exact(coeffs: &[BigRational], x: f64) -> f64 {
    let n = coeffs.len() - 1;
    let q = rational(x);
    // x = p / s with s a power of two (or 1)
    let (p, s) = (q.numer().clone(), q.denom().clone());
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = num_integer_lcm(&lcm, c.denom());
    }
    let mut num = BigInt::zero();
    let mut s_pow = BigInt::one();
    // Horner in p with the s^(n-k) factors folded in from the top
    let mut scaled: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    for k in (0..=n).rev() {
        num = num * &p + std::mem::take(&mut scaled[k]) * &s_pow;
        s_pow *= &s;
    }
    let den = lcm * s_pow / &s;
    to_f64(&BigRational::new_raw(num, den))
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    a.lcm(b)
}

pub fn hermite_exact(n: usize, x: f64) -> f64 {
    eval_exact(&hermite_coeffs(n), x)
}

pub fn legendre_exact(n: usize, x: f64) -> f64 {
    eval_exact(&legendre_coeffs(n), x)
}

pub fn laguerre_exact(n: usize, two_alpha: u64, x: f64) -> f64 {
    let alpha = BigRational::new(BigInt::from(two_alpha), BigInt::from(2));
    eval_exact(&laguerre_coeffs(n, &alpha), x)
}

/// h_n(x) = H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi)).
pub fn hermite_function_oracle(n: usize, x: f64) -> f64 {
    let poly = hermite_exact(n, x);
    let norm = to_f64(&BigRational::from_integer(
        factorial(n as u64) * (BigInt::one() << n),
    ));
    poly * (-0.5 * x * x).exp() / (norm * PI.sqrt()).sqrt()
}

/// Gamma(j + 1/2) / sqrt(pi) = (2j)! / (4^j j!).
pub fn half_gamma_over_sqrt_pi(j: u64) -> BigRational {
    BigRational::new(factorial(2 * j), (BigInt::one() << (2 * j)) * factorial(j))
}

/// Gamma(n + alpha + 1) for alpha = two_alpha / 2, as (rational, has sqrt(pi)).
fn gamma_shifted(n: u64, two_alpha: u64) -> (BigRational, bool) {
    if two_alpha.is_multiple_of(2) {
        (BigRational::from_integer(factorial(n + two_alpha / 2)), false)
    } else {
        // n + alpha + 1 = j + 1/2 with j = n + (two_alpha + 1) / 2
        (half_gamma_over_sqrt_pi(n + two_alpha.div_ceil(2)), true)
    }
}

/// sqrt(n! / Gamma(n + alpha + 1)) rho^(alpha/2) exp(-rho/2) L_n^(alpha)(rho)
/// with alpha = two_alpha / 2.
pub fn laguerre_function_oracle(n: usize, two_alpha: u64, rho: f64) -> f64 {
    let poly = laguerre_exact(n, two_alpha, rho);
    let (gamma, has_pi) = gamma_shifted(n as u64, two_alpha);
    let mut norm = to_f64(&(BigRational::from_integer(factorial(n as u64)) / gamma));
    if has_pi {
        norm /= PI.sqrt();
    }
    let a = two_alpha as f64 / 2.0;
    norm.sqrt() * rho.powf(0.5 * a) * (-0.5 * rho).exp() * poly
}

/// ln Gamma(x) for x a positive integer or half-integer, x = two_x / 2.
pub fn log_gamma_oracle(two_x: u64) -> f64 {
    assert!(two_x > 0);
    if two_x.is_multiple_of(2) {
        ln_big(&BigRational::from_integer(factorial(two_x / 2 - 1)))
    } else {
        ln_big(&half_gamma_over_sqrt_pi((two_x - 1) / 2)) + 0.5 * PI.ln()
    }
}

/// Natural log of a positive rational of any size.
pub fn ln_big(q: &BigRational) -> f64 {
    assert!(q.is_positive());
    let bits = |b: &BigInt| b.bits() as i64;
    let shift_num = (bits(q.numer()) - 1000).max(0);
    let shift_den = (bits(q.denom()) - 1000).max(0);
    let num = to_f64(&BigRational::from_integer(q.numer() >> shift_num as usize));
    let den = to_f64(&BigRational::from_integer(q.denom() >> shift_den as usize));
    num.ln() - den.ln() + (shift_num - shift_den) as f64 * std::f64::consts::LN_2
}

/// |approx - exact| / max(|exact|, floor).
pub fn guarded_relative_error(approx: f64, exact: f64, floor: f64) -> f64 {
    (approx - exact).abs() / exact.abs().max(floor)
}
