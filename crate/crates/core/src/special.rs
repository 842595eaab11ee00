//! Special functions the oscillator eigenbasis is built from.
//!
//! The primary evaluation path for Hermite and Laguerre families is the
//! recurrence on the *normalized* functions, which carries the full
//! normalization at every step. Those recurrences are run on a
//! [`PolyValue`] so that the Gaussian prefactor and the polynomial growth
//! are tracked in a separate base-e exponent and never overflow or
//! underflow in the middle of the recurrence. The raw polynomials are
//! exposed for small degrees only.
//!
//! Spherical harmonics use the Condon-Shortley phase.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{KgoError, Result};

/// Values above this are folded into the exponent during recurrences.
const RESCALE_THRESHOLD: f64 = 1e150;
const RESCALE_FACTOR: f64 = 1e-150;
const RESCALE_LOG: f64 = 345.387_763_949_106_8; // 150 ln 10

/// A real number stored as `value * exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyValue {
    pub value: f64,
    pub log_scale: f64,
}

impl PolyValue {
    pub const ZERO: PolyValue = PolyValue {
        value: 0.0,
        log_scale: 0.0,
    };

    pub fn new(value: f64, log_scale: f64) -> Self {
        Self { value, log_scale }
    }

    /// Collapse to a plain double. Values below the subnormal range flush to
    /// zero; values above the representable range become infinite.
    pub fn to_f64(self) -> f64 {
        if self.value == 0.0 || !self.value.is_finite() {
            return self.value;
        }
        let ln_mag = self.value.abs().ln() + self.log_scale;
        self.value.signum() * ln_mag.exp()
    }

    /// Natural log of the magnitude.
    pub fn ln_abs(self) -> f64 {
        self.value.abs().ln() + self.log_scale
    }

    pub fn signum(self) -> f64 {
        if self.value == 0.0 {
            0.0
        } else {
            self.value.signum()
        }
    }
}

/// Direction on the unit sphere, polar angle `theta` in [0, pi] and azimuth
/// `phi` in [0, 2 pi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularPoint {
    theta: f64,
    phi: f64,
}

impl AngularPoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(KgoError::domain(
                "AngularPoint::new",
                format!("theta = {theta} outside [0, pi]"),
            ));
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(KgoError::domain(
                "AngularPoint::new",
                format!("phi = {phi} outside [0, 2pi)"),
            ));
        }
        Ok(Self { theta, phi })
    }

    /// Accepts any finite azimuth and wraps it into [0, 2 pi).
    pub fn wrapped(theta: f64, phi: f64) -> Result<Self> {
        let mut phi = phi.rem_euclid(2.0 * PI);
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        Self::new(theta, phi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn cos_theta(&self) -> f64 {
        self.theta.cos()
    }

    /// Cosine of the angle between two directions.
    pub fn cos_angle_to(&self, other: &AngularPoint) -> f64 {
        let c = self.theta.cos() * other.theta.cos()
            + self.theta.sin() * other.theta.sin() * (self.phi - other.phi).cos();
        c.clamp(-1.0, 1.0)
    }
}

// ---------------------------------------------------------------------------
// log-gamma

/// Even Bernoulli numbers B_2 .. B_16 divided by 2k(2k-1).
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Natural logarithm of the gamma function for `x > 0`.
///
/// Arguments below 10 are shifted upward with the functional equation and
/// the Stirling series with eight Bernoulli terms is applied at `x >= 10`,
/// where its truncation error is below 1e-17 relative.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(KgoError::domain("log_gamma", format!("x = {x} must be > 0")));
    }
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    let mut shifted = x;
    let mut product = 1.0;
    while shifted < 10.0 {
        product *= shifted;
        shifted += 1.0;
    }
    let z = shifted;
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut power = inv;
    for c in STIRLING_COEFFS {
        series += c * power;
        power *= inv2;
    }
    let stirling = (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series;
    stirling - product.ln()
}

// ---------------------------------------------------------------------------
// Hermite

/// Physicists' Hermite polynomial H_n(xi) by the three-term recurrence.
///
/// Overflows quickly for large n or |xi|; in that case the error points the
/// caller at [`hermite_function`].
pub fn hermite_poly(n: usize, xi: f64) -> Result<f64> {
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * xi;
    for k in 1..n {
        let next = 2.0 * xi * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    if cur.is_finite() {
        Ok(cur)
    } else {
        Err(KgoError::HermiteOverflow { n, xi })
    }
}

/// Runs the normalized Hermite-function recurrence up to degree `n_max`,
/// calling `visit(k, h_k)` for every degree with the value as a
/// [`PolyValue`].
fn hermite_recurrence(n_max: usize, xi: f64, mut visit: impl FnMut(usize, PolyValue)) {
    let mut log_scale = -0.5 * xi * xi;
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    visit(0, PolyValue::new(cur, log_scale));
    for k in 0..n_max {
        let kf = k as f64;
        let next = xi * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_THRESHOLD {
            cur *= RESCALE_FACTOR;
            prev *= RESCALE_FACTOR;
            log_scale += RESCALE_LOG;
        }
        visit(k + 1, PolyValue::new(cur, log_scale));
    }
}

/// Normalized Hermite function h_n(xi) = H_n(xi) e^{-xi^2/2} / sqrt(sqrt(pi) 2^n n!)
/// with its exponent kept separate.
pub fn hermite_function_scaled(n: usize, xi: f64) -> PolyValue {
    let mut out = PolyValue::ZERO;
    hermite_recurrence(n, xi, |k, v| {
        if k == n {
            out = v;
        }
    });
    out
}

/// Normalized Hermite function h_n(xi).
///
/// Underflows to zero once the Gaussian factor leaves the double range
/// (|xi| beyond roughly 38 for moderate n).
pub fn hermite_function(n: usize, xi: f64) -> f64 {
    hermite_function_scaled(n, xi).to_f64()
}

/// h_0(xi) .. h_{n_max}(xi) in one pass.
pub fn hermite_functions(n_max: usize, xi: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    hermite_recurrence(n_max, xi, |_, v| out.push(v.to_f64()));
    out
}

/// Last two normalized functions (h_{n-1}, h_n) on a shared exponent, plus
/// the number of roots of H_n lying strictly above `xi` (sign changes of the
/// recurrence sequence). Used by the quadrature node search.
pub(crate) fn hermite_pair_with_sign_changes(n: usize, xi: f64) -> (f64, f64, f64, usize) {
    let mut log_scale = -0.5 * xi * xi;
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    let mut changes = 0;
    let mut last_sign = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let next = xi * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_THRESHOLD {
            cur *= RESCALE_FACTOR;
            prev *= RESCALE_FACTOR;
            log_scale += RESCALE_LOG;
        }
        if cur != 0.0 {
            let s = cur.signum();
            if s != last_sign {
                changes += 1;
            }
            last_sign = s;
        }
    }
    (prev, cur, log_scale, changes)
}

// ---------------------------------------------------------------------------
// Laguerre

/// Generalized Laguerre polynomial L_n^{(alpha)}(rho).
pub fn laguerre_poly(n: usize, alpha: f64, rho: f64) -> f64 {
    // difference form: d_k = L_k - L_{k-1},
    // (k+1) d_{k+1} = (k + alpha) d_k - rho L_k
    let mut value = 1.0;
    let mut diff = 1.0;
    for k in 0..n {
        let kf = k as f64;
        diff = ((kf + alpha) * diff - rho * value) / (kf + 1.0);
        value += diff;
    }
    value
}

/// ln of e^{-rho/2} rho^{alpha/2} / sqrt(Gamma(alpha+1)), or `None` at the
/// origin where the power factor vanishes or diverges.
fn laguerre_start(alpha: f64, rho: f64) -> std::result::Result<f64, PolyValue> {
    let base = -0.5 * log_gamma_unchecked(alpha + 1.0);
    if rho == 0.0 {
        if alpha == 0.0 {
            return Ok(base);
        }
        if alpha > 0.0 {
            return Err(PolyValue::ZERO);
        }
        return Err(PolyValue::new(f64::INFINITY, 0.0));
    }
    Ok(base - 0.5 * rho + 0.5 * alpha * rho.ln())
}

fn laguerre_recurrence(
    n_max: usize,
    alpha: f64,
    rho: f64,
    mut visit: impl FnMut(usize, PolyValue),
) {
    let mut log_scale = match laguerre_start(alpha, rho) {
        Ok(l) => l,
        Err(fixed) => {
            (0..=n_max).for_each(|k| visit(k, fixed));
            return;
        }
    };
    let mut step = LaguerreStep::new();
    visit(0, PolyValue::new(step.cur, log_scale));
    for k in 0..n_max {
        if step.advance(k, alpha, rho) {
            log_scale += RESCALE_LOG;
        }
        visit(k + 1, PolyValue::new(step.cur, log_scale));
    }
}

/// Normalized Laguerre recurrence in difference form. With
/// l_k = c_k L_k, delta_k = c_k (L_k - L_{k-1}) and
/// c_{k+1} / c_k = sqrt((k+1) / (k+alpha+1)):
///
///   delta_{k+1} = c_{k+1}/c_k ((k + alpha) delta_k - rho l_k) / (k + 1)
///   l_{k+1}     = c_{k+1}/c_k l_k + delta_{k+1}
///
/// Unlike the three-term form this does not cancel near rho = 0.
struct LaguerreStep {
    prev: f64,
    cur: f64,
    delta: f64,
}

impl LaguerreStep {
    fn new() -> Self {
        Self { prev: 0.0, cur: 1.0, delta: 1.0 }
    }

    /// Moves from degree k to k + 1; true if the values were rescaled.
    fn advance(&mut self, k: usize, alpha: f64, rho: f64) -> bool {
        let kf = k as f64;
        let ratio = ((kf + 1.0) / (kf + alpha + 1.0)).sqrt();
        self.delta = ratio * ((kf + alpha) * self.delta - rho * self.cur) / (kf + 1.0);
        self.prev = self.cur;
        self.cur = ratio * self.cur + self.delta;
        if self.cur.abs() > RESCALE_THRESHOLD {
            self.cur *= RESCALE_FACTOR;
            self.prev *= RESCALE_FACTOR;
            self.delta *= RESCALE_FACTOR;
            true
        } else {
            false
        }
    }
}

/// Generalized Laguerre function
/// sqrt(n!/Gamma(n+alpha+1)) e^{-rho/2} rho^{alpha/2} L_n^{(alpha)}(rho)
/// with its exponent kept separate.
pub fn laguerre_function_scaled(n: usize, alpha: f64, rho: f64) -> PolyValue {
    let mut out = PolyValue::ZERO;
    laguerre_recurrence(n, alpha, rho, |k, v| {
        if k == n {
            out = v;
        }
    });
    out
}

/// Generalized Laguerre function, orthonormal on (0, inf) with unit weight.
///
/// At `rho = 0` the result is 0 for `alpha > 0`; for `-1 < alpha < 0` the
/// power factor diverges and the result is infinite.
pub fn laguerre_function(n: usize, alpha: f64, rho: f64) -> f64 {
    laguerre_function_scaled(n, alpha, rho).to_f64()
}

/// Laguerre functions of degrees 0 ..= n_max at one point.
pub fn laguerre_functions(n_max: usize, alpha: f64, rho: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    laguerre_recurrence(n_max, alpha, rho, |_, v| out.push(v.to_f64()));
    out
}

/// Normalized pair (l_{n-1}, l_n) without the weight prefactor on a shared
/// exponent, and the number of roots of L_n^{(alpha)} strictly below `rho`.
pub(crate) fn laguerre_pair_with_sign_changes(
    n: usize,
    alpha: f64,
    rho: f64,
) -> (f64, f64, f64, usize) {
    let mut log_scale = -0.5 * log_gamma_unchecked(alpha + 1.0);
    let mut step = LaguerreStep::new();
    let mut changes = 0;
    let mut last_sign = 1.0;
    for k in 0..n {
        if step.advance(k, alpha, rho) {
            log_scale += RESCALE_LOG;
        }
        if step.cur != 0.0 {
            let s = step.cur.signum();
            if s != last_sign {
                changes += 1;
            }
            last_sign = s;
        }
    }
    (step.prev, step.cur, log_scale, changes)
}

// ---------------------------------------------------------------------------
// Legendre and spherical harmonics

/// Legendre polynomial P_l(x).
pub fn legendre_p(ell: usize, x: f64) -> f64 {
    legendre_pair(ell, x).1
}

/// (P_{l-1}(x), P_l(x)), with P_{-1} taken as 0.
pub(crate) fn legendre_pair(ell: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..ell {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// Fully normalized associated Legendre values sqrt((2l+1)/4pi (l-m)!/(l+m)!) P_l^m
/// (Condon-Shortley phase included) for all `m <= l <= ell_max`, `m >= 0`.
/// Index with [`sph_index`] using non-negative `m`.
fn normalized_assoc_legendre_table(ell_max: usize, cos_t: f64, sin_t: f64) -> Vec<f64> {
    let mut table = vec![0.0; (ell_max + 1) * (ell_max + 1)];
    let mut diag = 0.5 / PI.sqrt();
    for m in 0..=ell_max {
        if m > 0 {
            let mf = m as f64;
            diag *= -((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * sin_t;
        }
        table[sph_index(m, m as i64)] = diag;
        if m == ell_max {
            break;
        }
        let mf = m as f64;
        let mut prev = diag;
        let mut cur = (2.0 * mf + 3.0).sqrt() * cos_t * diag;
        table[sph_index(m + 1, m as i64)] = cur;
        let mut a_prev = (2.0 * mf + 3.0).sqrt();
        for ell in (m + 2)..=ell_max {
            let lf = ell as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let next = a * (cos_t * cur - prev / a_prev);
            prev = cur;
            cur = next;
            a_prev = a;
            table[sph_index(ell, m as i64)] = cur;
        }
    }
    table
}

/// Flat index of (l, m) in a table holding all |m| <= l <= l_max.
#[inline]
pub fn sph_index(ell: usize, m: i64) -> usize {
    ((ell * ell + ell) as i64 + m) as usize
}

/// All Y_l^m(point) for l <= ell_max, stored at [`sph_index`]`(l, m)`.
pub fn sph_harm_table(ell_max: usize, point: &AngularPoint) -> Vec<Complex64> {
    let (sin_t, cos_t) = point.theta.sin_cos();
    let legendre = normalized_assoc_legendre_table(ell_max, cos_t, sin_t);
    let mut out = vec![Complex64::new(0.0, 0.0); (ell_max + 1) * (ell_max + 1)];
    for ell in 0..=ell_max {
        for m in 0..=ell as i64 {
            let p = legendre[sph_index(ell, m)];
            let phase = Complex64::from_polar(1.0, m as f64 * point.phi);
            let y = phase * p;
            out[sph_index(ell, m)] = y;
            if m > 0 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                out[sph_index(ell, -m)] = y.conj() * sign;
            }
        }
    }
    out
}

/// Spherical harmonic Y_l^m(theta, phi), Condon-Shortley phase.
pub fn sph_harm(ell: usize, m: i64, point: &AngularPoint) -> Result<Complex64> {
    if m.unsigned_abs() as usize > ell {
        return Err(KgoError::domain(
            "sph_harm",
            format!("|m| = {} exceeds l = {ell}", m.abs()),
        ));
    }
    let (sin_t, cos_t) = point.theta.sin_cos();
    let ma = m.unsigned_abs() as usize;
    // single column of the table: start on the diagonal and climb in l
    let mf = ma as f64;
    let mut diag = 0.5 / PI.sqrt();
    for k in 1..=ma {
        let kf = k as f64;
        diag *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * sin_t;
    }
    let p = if ell == ma {
        diag
    } else {
        let mut prev = diag;
        let mut cur = (2.0 * mf + 3.0).sqrt() * cos_t * diag;
        let mut a_prev = (2.0 * mf + 3.0).sqrt();
        for l in (ma + 2)..=ell {
            let lf = l as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let next = a * (cos_t * cur - prev / a_prev);
            prev = cur;
            cur = next;
            a_prev = a;
        }
        cur
    };
    let y = Complex64::from_polar(1.0, mf * point.phi) * p;
    if m >= 0 {
        Ok(y)
    } else {
        let sign = if ma.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(y.conj() * sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn hermite_poly_small_cases() {
        assert_eq!(hermite_poly(0, 3.7).unwrap(), 1.0);
        assert_eq!(hermite_poly(2, 1.0).unwrap(), 2.0);
        assert_eq!(hermite_poly(3, 2.0).unwrap(), 40.0);
    }

    #[test]
    fn hermite_poly_reports_overflow() {
        let err = hermite_poly(400, 30.0).unwrap_err();
        assert!(matches!(err, KgoError::HermiteOverflow { n: 400, .. }));
        assert!(err.to_string().contains("hermite_function"));
    }

    #[test]
    fn hermite_function_at_origin() {
        assert_relative_eq!(hermite_function(0, 0.0), 0.751_125_544_4, epsilon = 1e-10);
        assert_eq!(hermite_function(1, 0.0), 0.0);
    }

    #[test]
    fn hermite_function_high_degree_extended_precision() {
        // 50-digit reference value of h_200(5)
        let reference = 0.020_719_980_741_444_191_874;
        let v = hermite_function(200, 5.0);
        assert_relative_eq!(v, reference, max_relative = 1e-10);
    }

    #[test]
    fn hermite_function_bounded_for_large_degree() {
        for n in [0usize, 1, 7, 50, 200, 499, 500] {
            for i in 0..=120 {
                let xi = -30.0 + 0.5 * i as f64;
                let v = hermite_function(n, xi);
                assert!(v.is_finite());
                assert!(v.abs() <= 1.0, "h_{n}({xi}) = {v}");
            }
        }
    }

    #[test]
    fn hermite_function_far_tail_uses_exponent() {
        let v = hermite_function_scaled(10, 60.0);
        assert!(v.value.is_finite() && v.value != 0.0);
        assert!(v.ln_abs() < -1700.0);
        assert_eq!(v.to_f64(), 0.0);
    }

    #[test]
    fn laguerre_small_cases() {
        assert_eq!(laguerre_poly(0, 0.5, 2.3), 1.0);
        assert_eq!(laguerre_poly(1, 0.5, 1.0), 0.5);
        assert_relative_eq!(laguerre_poly(2, 1.5, 2.0), -0.625, epsilon = 1e-15);
    }

    #[test]
    fn laguerre_function_special_points() {
        assert_relative_eq!(laguerre_function(0, 0.0, 0.0), 1.0, epsilon = 1e-14);
        assert_eq!(laguerre_function(1, 0.5, 0.0), 0.0);
        assert!(laguerre_function(2, -0.5, 0.0).is_infinite());
    }

    #[test]
    fn laguerre_function_extended_precision() {
        let reference = 0.102_332_732_545_406_218_32;
        assert_relative_eq!(laguerre_function(30, 2.5, 40.0), reference, max_relative = 1e-10);
    }

    #[test]
    fn laguerre_function_finite_over_contract_range() {
        for n in [0usize, 3, 100, 500] {
            for rho in [1e-8, 0.3, 10.0, 500.0, 2000.0, 1e4] {
                let v = laguerre_function(n, 3.5, rho);
                assert!(v.is_finite(), "n = {n}, rho = {rho}");
            }
        }
    }

    #[test]
    fn log_gamma_known_values() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-14);
        assert_relative_eq!(log_gamma(0.5).unwrap(), 0.572_364_942_924_700_1, epsilon = 1e-14);
        assert_relative_eq!(log_gamma(10.0).unwrap(), 362_880f64.ln(), epsilon = 1e-13);
        assert_relative_eq!(
            log_gamma(1.0 / 3.0).unwrap(),
            0.985_420_646_927_767_069,
            epsilon = 1e-14
        );
        assert_relative_eq!(
            log_gamma(1e4).unwrap(),
            82_099.717_496_442_377_27,
            max_relative = 1e-15
        );
    }

    #[test]
    fn log_gamma_rejects_non_positive() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-2.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn legendre_small_cases() {
        assert_eq!(legendre_p(0, 0.3), 1.0);
        assert_eq!(legendre_p(1, 0.3), 0.3);
        assert_relative_eq!(legendre_p(2, 1.0), 1.0, epsilon = 1e-15);
        assert_relative_eq!(legendre_p(7, 1.0), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn sph_harm_low_orders() {
        let p = AngularPoint::new(0.7, 2.1).unwrap();
        let y00 = sph_harm(0, 0, &p).unwrap();
        assert_relative_eq!(y00.re, 0.282_094_791_8, epsilon = 1e-10);
        assert_eq!(y00.im, 0.0);
        let north = AngularPoint::new(0.0, 0.0).unwrap();
        let y10 = sph_harm(1, 0, &north).unwrap();
        assert_relative_eq!(y10.re, (3.0 / (4.0 * PI)).sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn sph_harm_extended_precision() {
        let p = AngularPoint::new(1.0, 0.5).unwrap();
        let y = sph_harm(5, 3, &p).unwrap();
        assert_relative_eq!(y.re, -0.023_727_329_276_682_815, epsilon = 1e-14);
        assert_relative_eq!(y.im, -0.334_589_034_355_326_57, epsilon = 1e-14);
        let ym = sph_harm(5, -3, &p).unwrap();
        assert_relative_eq!(ym.re, 0.023_727_329_276_682_815, epsilon = 1e-14);
        assert_relative_eq!(ym.im, -0.334_589_034_355_326_57, epsilon = 1e-14);
    }

    #[test]
    fn sph_harm_rejects_large_m() {
        let p = AngularPoint::new(0.3, 0.0).unwrap();
        assert!(sph_harm(2, 3, &p).is_err());
        assert!(sph_harm(2, -3, &p).is_err());
    }

    #[test]
    fn table_matches_single_evaluation() {
        let p = AngularPoint::new(2.3, 4.0).unwrap();
        let table = sph_harm_table(12, &p);
        for ell in 0..=12usize {
            for m in -(ell as i64)..=(ell as i64) {
                let y = sph_harm(ell, m, &p).unwrap();
                let t = table[sph_index(ell, m)];
                assert!((y - t).norm() < 1e-14, "l={ell} m={m}");
            }
        }
    }

    #[test]
    fn angular_point_ranges() {
        assert!(AngularPoint::new(-0.1, 0.0).is_err());
        assert!(AngularPoint::new(0.1, 2.0 * PI).is_err());
        let w = AngularPoint::wrapped(0.1, -0.5).unwrap();
        assert_relative_eq!(w.phi(), 2.0 * PI - 0.5, epsilon = 1e-15);
    }

    #[test]
    fn poly_value_reconstruction() {
        let v = PolyValue::new(2.0, 3.0);
        assert_relative_eq!(v.to_f64(), 2.0 * 3f64.exp(), max_relative = 1e-15);
        let neg = PolyValue::new(-0.5, -800.0);
        assert_eq!(neg.to_f64(), -0.0);
        assert_eq!(neg.signum(), -1.0);
    }
}
