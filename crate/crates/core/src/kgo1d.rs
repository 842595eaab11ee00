//! One-dimensional Klein-Gordon oscillator.
//!
//! The squared-energy problem is a harmonic oscillator in the scaled
//! coordinate xi = lambda x, so the spatial eigenfunctions are scaled
//! Hermite functions, psi_n(x) = sqrt(lambda) h_n(lambda x), shared by both
//! energy branches.
//!
//! All integrals are done in xi with Gauss-Hermite rules. Completeness is
//! checked weakly through projection and reconstruction; the truncated
//! kernel K_N(x, x') has no pointwise limit.

use serde::{Deserialize, Serialize};

use crate::error::{KgoError, Result};
use crate::gram::GramMatrix;
use crate::params::{Branch, OscillatorParams, SpectrumConvention};
use crate::quad::{QuadFamily, QuadratureRule, MAX_NODES};
use crate::special::{hermite_function, hermite_functions, laguerre_functions};
use crate::summation::NeumaierSum;

/// A 1D level on one energy branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode1D {
    pub n: usize,
    pub branch: Branch,
    pub energy: f64,
}

impl Mode1D {
    pub fn new(params: &OscillatorParams, n: usize, branch: Branch) -> Self {
        Self {
            n,
            branch,
            energy: energy_1d(params, n, branch),
        }
    }
}

/// E_n^2 - m^2 under the configured convention.
pub fn energy_gap_sq_1d(params: &OscillatorParams, n: usize) -> f64 {
    let quantum = params.lambda_sq();
    match params.convention() {
        SpectrumConvention::OdeDerived => 2.0 * quantum * n as f64,
        SpectrumConvention::AsPrinted => quantum * (2.0 * n as f64 + 1.0),
    }
}

/// E_n^2 under the configured convention.
pub fn energy_sq_1d(params: &OscillatorParams, n: usize) -> f64 {
    params.mass() * params.mass() + energy_gap_sq_1d(params, n)
}

/// Signed energy of level `n` on the given branch.
pub fn energy_1d(params: &OscillatorParams, n: usize, branch: Branch) -> f64 {
    branch.sign() * energy_sq_1d(params, n).sqrt()
}

/// E_n - m on the positive branch, without the cancellation of a direct
/// subtraction when m dominates.
pub fn energy_above_rest_1d(params: &OscillatorParams, n: usize) -> f64 {
    let gap = energy_gap_sq_1d(params, n);
    gap / (energy_sq_1d(params, n).sqrt() + params.mass())
}

/// Non-relativistic limit m + w (n + 1/2).
pub fn nonrel_energy(params: &OscillatorParams, n: usize) -> f64 {
    params.mass() + params.frequency() * (n as f64 + 0.5)
}

/// Leading remainder bound w^2 (2n+1)^2 / (8m) for the printed spectrum
/// against [`nonrel_energy`].
pub fn nonrel_remainder_bound(params: &OscillatorParams, n: usize) -> f64 {
    let w = params.frequency();
    let k = 2.0 * n as f64 + 1.0;
    w * w * k * k / (8.0 * params.mass())
}

/// psi_n(x) = sqrt(lambda) h_n(lambda x).
pub fn eigenfunction_1d(params: &OscillatorParams, n: usize, x: f64) -> f64 {
    let lambda = params.lambda();
    lambda.sqrt() * hermite_function(n, lambda * x)
}

/// psi_0(x) .. psi_{n_max}(x).
pub fn eigenfunctions_1d(params: &OscillatorParams, n_max: usize, x: f64) -> Vec<f64> {
    let lambda = params.lambda();
    let s = lambda.sqrt();
    let mut v = hermite_functions(n_max, lambda * x);
    v.iter_mut().for_each(|h| *h *= s);
    v
}

/// Feshbach-Villars components (phi, chi) = (1 +- 1/E) psi_n / 2.
///
/// The coefficients are taken literally as 1 +- 1/E; phi + chi = psi_n
/// holds to rounding.
pub fn fv_components(params: &OscillatorParams, mode: &Mode1D, x: f64) -> Result<(f64, f64)> {
    if mode.energy == 0.0 {
        return Err(KgoError::ZeroEnergy);
    }
    let psi = eigenfunction_1d(params, mode.n, x);
    let inv = 1.0 / mode.energy;
    let phi = 0.5 * (1.0 + inv) * psi;
    // chi as the remainder; exact whenever phi lies in [psi/2, 2 psi]
    let chi = psi - phi;
    Ok((phi, chi))
}

fn require_hermite(rule: &QuadratureRule, required: usize) -> Result<()> {
    if rule.family() != QuadFamily::GaussHermite {
        return Err(KgoError::WrongRule {
            expected: QuadFamily::GaussHermite.name(),
            found: rule.family().name(),
        });
    }
    if rule.count() < required {
        return Err(KgoError::InsufficientQuadrature {
            count: rule.count(),
            required,
        });
    }
    Ok(())
}

/// Values of h_0 .. h_{n_max} at every node of a Hermite rule.
fn basis_at_nodes(n_max: usize, rule: &QuadratureRule) -> Vec<Vec<f64>> {
    rule.nodes().iter().map(|&xi| hermite_functions(n_max, xi)).collect()
}

/// Sums `w_k f(k)` pairing node k with its mirror image so that odd
/// integrands cancel exactly on a symmetric rule.
fn symmetric_sum(weights: &[f64], f: impl Fn(usize) -> f64) -> f64 {
    let n = weights.len();
    let mut acc = NeumaierSum::new();
    for k in 0..n / 2 {
        let j = n - 1 - k;
        acc.add(weights[k] * (f(k) + f(j)));
    }
    if n % 2 == 1 {
        acc.add(weights[n / 2] * f(n / 2));
    }
    acc.value()
}

/// Gram matrix of psi_0 .. psi_{n_max} by Gauss-Hermite quadrature in
/// xi = lambda x. The rule must have at least `n_max + 1` nodes, which
/// makes every entry exact up to rounding.
pub fn gram_matrix_1d(
    _params: &OscillatorParams,
    n_max: usize,
    rule: &QuadratureRule,
) -> Result<GramMatrix> {
    require_hermite(rule, n_max + 1)?;
    let values = basis_at_nodes(n_max, rule);
    let w = rule.bare_weights();
    let mut gram = GramMatrix::zeros(n_max + 1);
    for i in 0..=n_max {
        for j in i..=n_max {
            let g = symmetric_sum(w, |k| values[k][i] * values[k][j]);
            gram.set_symmetric(i, j, g);
        }
    }
    Ok(gram)
}

/// K_N(x, x') = sum_{n <= N} psi_n(x) psi_n(x').
pub fn closure_kernel_1d(params: &OscillatorParams, truncation: usize, x: f64, x2: f64) -> f64 {
    let a = eigenfunctions_1d(params, truncation, x);
    let b = eigenfunctions_1d(params, truncation, x2);
    let mut acc = NeumaierSum::new();
    acc.extend(a.iter().zip(&b).map(|(p, q)| p * q));
    acc.value()
}

/// Which orthonormal family a projection's coefficients refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Basis {
    OneD,
    Radial { ell: usize },
}

/// Coefficients of a function in a truncated eigenbasis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralProjection {
    pub basis: Basis,
    pub coefficients: Vec<f64>,
    pub truncation: usize,
    pub params: OscillatorParams,
    pub quadrature_count: usize,
}

impl SpectralProjection {
    /// Sum of squared coefficients.
    pub fn norm_sq(&self) -> f64 {
        let mut acc = NeumaierSum::new();
        acc.extend(self.coefficients.iter().map(|c| c * c));
        acc.value()
    }

    /// Evaluates the truncated expansion at `x` (a radius for radial bases).
    pub fn reconstruct(&self, x: f64) -> f64 {
        let values = match self.basis {
            Basis::OneD => eigenfunctions_1d(&self.params, self.truncation, x),
            Basis::Radial { ell } => radial_values(&self.params, ell, self.truncation, x),
        };
        let mut acc = NeumaierSum::new();
        acc.extend(self.coefficients.iter().zip(&values).map(|(c, v)| c * v));
        acc.value()
    }
}

/// R_{0,l}(r) .. R_{n_max,l}(r); mirrors the radial eigenfunction
/// evaluation so reconstruction does not depend on the 3D module.
pub(crate) fn radial_values(params: &OscillatorParams, ell: usize, n_max: usize, r: f64) -> Vec<f64> {
    let lambda = params.lambda();
    let rho = lambda * lambda * r * r;
    let prefactor = lambda * (2.0 * r).sqrt();
    let mut v = laguerre_functions(n_max, ell as f64 + 0.5, rho);
    v.iter_mut().for_each(|f| *f *= prefactor);
    v
}

/// Default Gauss-Hermite size for projecting functions outside the span.
pub fn auto_quadrature_count_1d(truncation: usize) -> usize {
    (2 * truncation + 2).clamp(128, MAX_NODES)
}

/// Coefficients c_n = <psi_n, f> for n = 0 ..= N by Gauss-Hermite
/// quadrature in xi. The rule needs at least N + 1 nodes so that members of
/// the span are projected exactly.
pub fn project_1d(
    params: &OscillatorParams,
    truncation: usize,
    f: impl Fn(f64) -> f64,
    rule: &QuadratureRule,
) -> Result<SpectralProjection> {
    require_hermite(rule, truncation + 1)?;
    let lambda = params.lambda();
    let mut samples = Vec::with_capacity(rule.count());
    for (index, &xi) in rule.nodes().iter().enumerate() {
        let v = f(xi / lambda);
        if !v.is_finite() {
            return Err(KgoError::NonFinite { index, node: xi / lambda });
        }
        samples.push(v);
    }
    let values = basis_at_nodes(truncation, rule);
    let w = rule.bare_weights();
    let scale = 1.0 / lambda.sqrt();
    let coefficients = (0..=truncation)
        .map(|n| scale * symmetric_sum(w, |k| values[k][n] * samples[k]))
        .collect();
    Ok(SpectralProjection {
        basis: Basis::OneD,
        coefficients,
        truncation,
        params: *params,
        quadrature_count: rule.count(),
    })
}

/// sum_n c_n psi_n(x).
pub fn reconstruct_1d(projection: &SpectralProjection, x: f64) -> f64 {
    projection.reconstruct(x)
}

/// Largest residual of the second-order finite-difference form of
///   -psi'' + (m^2 w^2 x^2 - m w) psi = (E_n^2 - m^2) psi
/// over the interior points of a uniform grid with spacing `h`, using the
/// convention configured in `params`.
pub fn ode_residual_1d(params: &OscillatorParams, n: usize, grid: &[f64], h: f64) -> Result<f64> {
    if grid.len() < 3 {
        return Err(KgoError::GridTooShort { len: grid.len() });
    }
    if !(h > 0.0) {
        return Err(KgoError::InvalidParameter(format!("grid spacing h = {h} must be positive")));
    }
    let mw = params.lambda_sq();
    let eig = energy_gap_sq_1d(params, n);
    let psi: Vec<f64> = grid.iter().map(|&x| eigenfunction_1d(params, n, x)).collect();
    let inv_h2 = 1.0 / (h * h);
    let worst = (1..grid.len() - 1)
        .map(|i| {
            let x = grid[i];
            let d2 = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) * inv_h2;
            (-d2 + (mw * mw * x * x - mw) * psi[i] - eig * psi[i]).abs()
        })
        .fold(0.0, f64::max);
    Ok(worst)
}

/// Uniform grid of `count` points on [a, b].
pub fn uniform_grid(a: f64, b: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![a];
    }
    let step = (b - a) / (count - 1) as f64;
    (0..count).map(|i| a + step * i as f64).collect()
}
