//! Finite-difference check of the squared-energy spectrum.
//!
//! The second-order central-difference discretizations of
//!
//!   1D:     -psi'' + (m^2 w^2 x^2 - m w) psi          = (E^2 - m^2) psi
//!   radial: -R'' + (l(l+1)/r^2 + m^2 w^2 r^2) R       = (E^2 - m^2 + 3 m w) R
//!
//! are symmetric tridiagonal matrices; their lowest eigenvalues are found by
//! Sturm-sequence bisection. Comparing them with both closed-form
//! conventions under grid refinement decides which convention the operator
//! actually has: the consistent one shows an O(h^2) error that drops by
//! about 4x per halving, the inconsistent one stays a full quantum away.

use serde::{Deserialize, Serialize};

use crate::error::{KgoError, Result};
use crate::kgo1d::energy_gap_sq_1d;
use crate::kgo3d::energy_gap_sq_3d;
use crate::params::{OscillatorParams, SpectrumConvention};

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below
/// `x`, from the signs of the LDL^T pivots of T - xI.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] / d };
        d = diag[i] - x - coupling;
        if d == 0.0 {
            d = -f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `count` smallest eigenvalues of a symmetric tridiagonal matrix with
/// diagonal `diag` and off-diagonal `off`, ascending.
pub fn tridiagonal_lowest_eigenvalues(diag: &[f64], off: &[f64], count: usize) -> Result<Vec<f64>> {
    if off.len() + 1 != diag.len() {
        return Err(KgoError::InvalidParameter(
            "off-diagonal must be one shorter than the diagonal".into(),
        ));
    }
    if count > diag.len() {
        return Err(KgoError::InvalidParameter(format!(
            "requested {count} eigenvalues of a {}x{} matrix",
            diag.len(),
            diag.len()
        )));
    }
    // Gershgorin bounds
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let radius = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    let scale = lo.abs().max(hi.abs());
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let (mut a, mut b) = (lo, hi);
        while b - a > 4.0 * f64::EPSILON * scale {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if sturm_count(diag, off, mid) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Lowest eigenvalues (estimates of E^2 - m^2) of the 1D operator on
/// [-half_width, half_width] with Dirichlet ends and spacing `h`.
pub fn fd_levels_1d(params: &OscillatorParams, count: usize, half_width: f64, h: f64) -> Result<Vec<f64>> {
    let intervals = (2.0 * half_width / h).round() as usize;
    if intervals < 4 {
        return Err(KgoError::GridTooShort { len: intervals + 1 });
    }
    let mw = params.lambda_sq();
    let inv_h2 = 1.0 / (h * h);
    let diag: Vec<f64> = (1..intervals)
        .map(|i| {
            let x = -half_width + h * i as f64;
            2.0 * inv_h2 + mw * mw * x * x - mw
        })
        .collect();
    let off = vec![-inv_h2; diag.len() - 1];
    tridiagonal_lowest_eigenvalues(&diag, &off, count)
}

/// Lowest eigenvalues (estimates of E^2 - m^2 + 3 m w) of the radial
/// operator at angular momentum `ell` on (0, r_max] with R(0) = R(r_max) = 0.
pub fn fd_levels_radial(
    params: &OscillatorParams,
    ell: usize,
    count: usize,
    r_max: f64,
    h: f64,
) -> Result<Vec<f64>> {
    let intervals = (r_max / h).round() as usize;
    if intervals < 4 {
        return Err(KgoError::GridTooShort { len: intervals + 1 });
    }
    let mw = params.lambda_sq();
    let l2 = (ell * (ell + 1)) as f64;
    let inv_h2 = 1.0 / (h * h);
    let diag: Vec<f64> = (1..intervals)
        .map(|i| {
            let r = h * i as f64;
            2.0 * inv_h2 + l2 / (r * r) + mw * mw * r * r
        })
        .collect();
    let off = vec![-inv_h2; diag.len() - 1];
    tridiagonal_lowest_eigenvalues(&diag, &off, count)
}

/// One level of the comparison between the discretized operator and the
/// two closed-form conventions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelCheck {
    /// n in 1D, n_r for a radial partial wave.
    pub index: usize,
    /// E^2 - m^2 from the finite-difference operator at h and h/2.
    pub fd_coarse: f64,
    pub fd_fine: f64,
    pub ode_derived: f64,
    pub as_printed: f64,
    /// |fd - ode_derived| at h and h/2.
    pub error_coarse: f64,
    pub error_fine: f64,
    /// error_coarse / error_fine; 4 for a second-order stencil.
    pub error_ratio: f64,
    /// |fd_fine - as_printed|.
    pub printed_deviation: f64,
}

impl LevelCheck {
    fn build(index: usize, fd_coarse: f64, fd_fine: f64, ode_derived: f64, as_printed: f64) -> Self {
        let error_coarse = (fd_coarse - ode_derived).abs();
        let error_fine = (fd_fine - ode_derived).abs();
        Self {
            index,
            fd_coarse,
            fd_fine,
            ode_derived,
            as_printed,
            error_coarse,
            error_fine,
            error_ratio: error_coarse / error_fine,
            printed_deviation: (fd_fine - as_printed).abs(),
        }
    }

    /// Second-order convergence onto the ODE-derived value.
    pub fn ode_derived_consistent(&self, ratio_tol: f64) -> bool {
        (self.error_ratio - 4.0).abs() <= ratio_tol
    }

    /// The printed value sits far outside the discretization error.
    pub fn printed_inconsistent(&self) -> bool {
        self.printed_deviation > 100.0 * self.error_coarse
    }
}

/// Compares the lowest `levels` 1D eigenvalues at spacings h and h/2.
pub fn adjudicate_1d(params: &OscillatorParams, levels: usize, half_width: f64, h: f64) -> Result<Vec<LevelCheck>> {
    let coarse = fd_levels_1d(params, levels, half_width, h)?;
    let fine = fd_levels_1d(params, levels, half_width, 0.5 * h)?;
    let ode = params.using(SpectrumConvention::OdeDerived);
    let printed = params.using(SpectrumConvention::AsPrinted);
    Ok((0..levels)
        .map(|n| {
            LevelCheck::build(
                n,
                coarse[n],
                fine[n],
                energy_gap_sq_1d(&ode, n),
                energy_gap_sq_1d(&printed, n),
            )
        })
        .collect())
}

/// Compares the lowest `levels` radial eigenvalues of partial wave `ell`,
/// after removing the 3 m w shift, at spacings h and h/2.
pub fn adjudicate_radial(
    params: &OscillatorParams,
    ell: usize,
    levels: usize,
    r_max: f64,
    h: f64,
) -> Result<Vec<LevelCheck>> {
    let shift = 3.0 * params.lambda_sq();
    let coarse = fd_levels_radial(params, ell, levels, r_max, h)?;
    let fine = fd_levels_radial(params, ell, levels, r_max, 0.5 * h)?;
    let ode = params.using(SpectrumConvention::OdeDerived);
    let printed = params.using(SpectrumConvention::AsPrinted);
    Ok((0..levels)
        .map(|n_r| {
            let big_n = 2 * n_r + ell;
            LevelCheck::build(
                n_r,
                coarse[n_r] - shift,
                fine[n_r] - shift,
                energy_gap_sq_3d(&ode, big_n),
                energy_gap_sq_3d(&printed, big_n),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tridiagonal_known_spectrum() {
        // tridiag(-1, 2, -1) of size n: 2 - 2 cos(k pi / (n + 1))
        let n = 50;
        let diag = vec![2.0; n];
        let off = vec![-1.0; n - 1];
        let eig = tridiagonal_lowest_eigenvalues(&diag, &off, 5).unwrap();
        for (k, e) in eig.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((e - exact).abs() < 1e-13, "k={k}: {e} vs {exact}");
        }
    }

    #[test]
    fn bad_shapes_are_rejected() {
        assert!(tridiagonal_lowest_eigenvalues(&[1.0, 2.0], &[], 1).is_err());
        assert!(tridiagonal_lowest_eigenvalues(&[1.0], &[], 2).is_err());
    }

    #[test]
    fn third_level_matches_sqrt_seven() {
        let p = OscillatorParams::new(1.0, 1.0).unwrap();
        let fd = fd_levels_1d(&p, 4, 10.0, 0.01).unwrap();
        let e3 = (1.0 + fd[3]).sqrt();
        assert!((e3 - 7f64.sqrt()).abs() < 1e-4);
    }

    #[test]
    fn radial_level_for_shell_two() {
        let p = OscillatorParams::new(1.0, 1.0).unwrap();
        let fd = fd_levels_radial(&p, 0, 2, 10.0, 0.01).unwrap();
        // n_r = 1, l = 0 is N = 2
        let e = (1.0 + fd[1] - 3.0).sqrt();
        assert!((e - 5f64.sqrt()).abs() < 1e-4);
    }
}
