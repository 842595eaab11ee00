//! Three-dimensional Klein-Gordon oscillator in spherical coordinates.
//!
//! Eigenfunctions are Psi_{n_r l m} = R_{n_r l}(r) / r * Y_l^m(r_hat) with
//! radial parts built from generalized Laguerre functions of order
//! alpha = l + 1/2 in rho = lambda^2 r^2:
//!
//! R_{n_r l}(r) = lambda sqrt(2 r) * ell_{n_r}^{(l+1/2)}(rho)
//!
//! where ell_n^{(alpha)} is the unit-weight orthonormal Laguerre function.
//! All radial integrals are carried out in rho with Gauss-Laguerre rules of
//! the same alpha, so orthonormality checks are exact up to rounding.
//!
//! Closure and projection routines take no spectrum input at all.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{KgoError, Result};
use crate::gram::GramMatrix;
use crate::kgo1d::{radial_values, Basis, SpectralProjection};
use crate::params::{Branch, OscillatorParams, SpectrumConvention};
use crate::quad::{gauss_laguerre, gauss_legendre, QuadFamily, QuadratureRule, MAX_NODES};
use crate::special::{
    laguerre_function, laguerre_functions, legendre_p, log_gamma_unchecked, sph_harm,
    sph_harm_table, sph_index, AngularPoint,
};
use crate::summation::NeumaierSum;

/// Largest angular momentum the 3D routines are validated for.
pub const MAX_ELL: usize = 64;

/// Radial quantum numbers of a partial wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RadialMode {
    pub n_r: usize,
    pub ell: usize,
    pub branch: Branch,
}

impl RadialMode {
    pub fn new(n_r: usize, ell: usize, branch: Branch) -> Self {
        Self { n_r, ell, branch }
    }

    /// Principal quantum number N = 2 n_r + l.
    pub fn principal(&self) -> usize {
        2 * self.n_r + self.ell
    }
}

/// Full index triple (n_r, l, m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mode3D {
    radial: RadialMode,
    m: i64,
}

impl Mode3D {
    pub fn new(radial: RadialMode, m: i64) -> Result<Self> {
        if m.unsigned_abs() as usize > radial.ell {
            return Err(KgoError::domain(
                "Mode3D::new",
                format!("|m| = {} exceeds l = {}", m.abs(), radial.ell),
            ));
        }
        Ok(Self { radial, m })
    }

    pub fn radial(&self) -> RadialMode {
        self.radial
    }

    pub fn m(&self) -> i64 {
        self.m
    }
}

/// A point in space in spherical coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    r: f64,
    angular: AngularPoint,
}

impl Point3 {
    pub fn new(r: f64, angular: AngularPoint) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(KgoError::domain("Point3::new", format!("r = {r} must be >= 0")));
        }
        Ok(Self { r, angular })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn angular(&self) -> AngularPoint {
        self.angular
    }
}

// ---------------------------------------------------------------------------
// spectrum

/// E_N^2 - m^2 under the configured convention.
pub fn energy_gap_sq_3d(params: &OscillatorParams, principal: usize) -> f64 {
    let quantum = params.lambda_sq();
    match params.convention() {
        SpectrumConvention::OdeDerived => 2.0 * quantum * principal as f64,
        SpectrumConvention::AsPrinted => quantum * (2.0 * principal as f64 + 3.0),
    }
}

pub fn energy_sq_3d(params: &OscillatorParams, principal: usize) -> f64 {
    params.mass() * params.mass() + energy_gap_sq_3d(params, principal)
}

/// Signed energy of shell N on the given branch.
pub fn energy_3d(params: &OscillatorParams, principal: usize, branch: Branch) -> f64 {
    branch.sign() * energy_sq_3d(params, principal).sqrt()
}

/// E_N - m on the positive branch, computed without cancellation.
pub fn energy_above_rest_3d(params: &OscillatorParams, principal: usize) -> f64 {
    energy_gap_sq_3d(params, principal) / (energy_sq_3d(params, principal).sqrt() + params.mass())
}

/// Non-relativistic limit m + w (N + 3/2).
pub fn nonrel_energy_3d(params: &OscillatorParams, principal: usize) -> f64 {
    params.mass() + params.frequency() * (principal as f64 + 1.5)
}

/// Energy of a radial mode; depends on (n_r, l) only through N.
pub fn mode_energy(params: &OscillatorParams, mode: &RadialMode) -> f64 {
    energy_3d(params, mode.principal(), mode.branch)
}

/// Number of (l, m) states in shell N: (N+1)(N+2)/2.
pub fn degeneracy(principal: usize) -> u64 {
    let n = principal as u64;
    (n + 1) * (n + 2) / 2
}

/// All (n_r, l) with 2 n_r + l = N, by descending l.
pub fn shell_modes(principal: usize) -> Vec<(usize, usize)> {
    (0..=principal)
        .rev()
        .filter(|ell| (principal - ell).is_multiple_of(2))
        .map(|ell| ((principal - ell) / 2, ell))
        .collect()
}

// ---------------------------------------------------------------------------
// radial eigenfunctions

/// Normalized radial eigenfunction R_{n_r l}(r); vanishes at r = 0.
pub fn radial_eigenfunction(params: &OscillatorParams, n_r: usize, ell: usize, r: f64) -> f64 {
    let lambda = params.lambda();
    let rho = lambda * lambda * r * r;
    lambda * (2.0 * r).sqrt() * laguerre_function(n_r, ell as f64 + 0.5, rho)
}

/// R_{0 l}(r) .. R_{n_max l}(r).
pub fn radial_eigenfunctions(params: &OscillatorParams, ell: usize, n_max: usize, r: f64) -> Vec<f64> {
    radial_values(params, ell, n_max, r)
}

fn require_laguerre(rule: &QuadratureRule, ell: usize, required: usize) -> Result<()> {
    let alpha = ell as f64 + 0.5;
    match rule.family() {
        QuadFamily::GaussLaguerre { alpha: a } if (a - alpha).abs() <= 1e-12 => {}
        other => {
            return Err(KgoError::WrongRule {
                expected: QuadFamily::GaussLaguerre { alpha }.name(),
                found: other.name(),
            })
        }
    }
    if rule.count() < required {
        return Err(KgoError::InsufficientQuadrature {
            count: rule.count(),
            required,
        });
    }
    Ok(())
}

/// Gram matrix of R_{0 l} .. R_{n_max l} with a Gauss-Laguerre rule of
/// alpha = l + 1/2 and at least n_max + 1 nodes.
pub fn radial_gram(
    _params: &OscillatorParams,
    ell: usize,
    n_max: usize,
    rule: &QuadratureRule,
) -> Result<GramMatrix> {
    require_laguerre(rule, ell, n_max + 1)?;
    let alpha = ell as f64 + 0.5;
    let values: Vec<Vec<f64>> = rule
        .nodes()
        .iter()
        .map(|&rho| laguerre_functions(n_max, alpha, rho))
        .collect();
    let w = rule.bare_weights();
    let mut gram = GramMatrix::zeros(n_max + 1);
    for i in 0..=n_max {
        for j in i..=n_max {
            let mut acc = NeumaierSum::new();
            acc.extend(values.iter().zip(w).map(|(v, wk)| wk * v[i] * v[j]));
            gram.set_symmetric(i, j, acc.value());
        }
    }
    Ok(gram)
}

/// sum_{n_r <= N} R_{n_r l}(r) R_{n_r l}(r').
pub fn radial_closure_kernel(
    params: &OscillatorParams,
    ell: usize,
    truncation: usize,
    r: f64,
    r2: f64,
) -> f64 {
    let a = radial_values(params, ell, truncation, r);
    let b = radial_values(params, ell, truncation, r2);
    let mut acc = NeumaierSum::new();
    acc.extend(a.iter().zip(&b).map(|(p, q)| p * q));
    acc.value()
}

pub fn auto_quadrature_count_radial(truncation: usize) -> usize {
    (2 * truncation + 2).clamp(128, MAX_NODES)
}

/// Generic radial coefficient routine on samples of g(r) taken at the
/// rule's nodes: c_n = int R_n g dr
///   = int ell_n(rho) g(sqrt(rho)/lambda) / (sqrt(2 lambda) rho^{1/4}) d rho.
fn radial_coefficients<S, A: Clone>(
    params: &OscillatorParams,
    ell: usize,
    truncation: usize,
    rule: &QuadratureRule,
    samples: &[S],
    zero: A,
    accumulate: impl Fn(&mut A, f64, &S),
) -> Vec<A> {
    let alpha = ell as f64 + 0.5;
    let scale = 1.0 / (2.0 * params.lambda()).sqrt();
    let mut coeffs = vec![zero; truncation + 1];
    for ((&rho, &w), s) in rule.nodes().iter().zip(rule.bare_weights()).zip(samples) {
        let basis = laguerre_functions(truncation, alpha, rho);
        let factor = w * scale * rho.powf(-0.25);
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            accumulate(c, factor * b, s);
        }
    }
    coeffs
}

/// Coefficients c_{n_r} = <R_{n_r l}, f> for n_r = 0 ..= N.
pub fn project_radial(
    params: &OscillatorParams,
    ell: usize,
    truncation: usize,
    f: impl Fn(f64) -> f64,
    rule: &QuadratureRule,
) -> Result<SpectralProjection> {
    require_laguerre(rule, ell, truncation + 1)?;
    let lambda = params.lambda();
    let mut samples = Vec::with_capacity(rule.count());
    for (index, &rho) in rule.nodes().iter().enumerate() {
        let r = rho.sqrt() / lambda;
        let v = f(r);
        if !v.is_finite() {
            return Err(KgoError::NonFinite { index, node: r });
        }
        samples.push(v);
    }
    // compensated accumulation per coefficient
    let coeffs = radial_coefficients(
        params,
        ell,
        truncation,
        rule,
        &samples,
        NeumaierSum::new(),
        |acc, x, s| acc.add(x * s),
    );
    Ok(SpectralProjection {
        basis: Basis::Radial { ell },
        coefficients: coeffs.iter().map(NeumaierSum::value).collect(),
        truncation,
        params: *params,
        quadrature_count: rule.count(),
    })
}

/// sum_{n_r} c_{n_r} R_{n_r l}(r).
pub fn reconstruct_radial(projection: &SpectralProjection, r: f64) -> f64 {
    projection.reconstruct(r)
}

/// Largest residual of the finite-difference radial equation
///   -R'' + l(l+1)/r^2 R + m^2 w^2 r^2 R = (E^2 - m^2 + 3 m w) R
/// over interior points of a uniform grid on r > 0.
pub fn ode_residual_radial(
    params: &OscillatorParams,
    n_r: usize,
    ell: usize,
    grid: &[f64],
    h: f64,
) -> Result<f64> {
    if grid.len() < 3 {
        return Err(KgoError::GridTooShort { len: grid.len() });
    }
    if grid[0] < 0.0 {
        return Err(KgoError::InvalidParameter("radial grid must lie in r >= 0".into()));
    }
    let mw = params.lambda_sq();
    let eig = energy_gap_sq_3d(params, 2 * n_r + ell) + 3.0 * mw;
    let l2 = (ell * (ell + 1)) as f64;
    let vals: Vec<f64> = grid.iter().map(|&r| radial_eigenfunction(params, n_r, ell, r)).collect();
    let inv_h2 = 1.0 / (h * h);
    let worst = (1..grid.len() - 1)
        .map(|i| {
            let r = grid[i];
            let d2 = (vals[i + 1] - 2.0 * vals[i] + vals[i - 1]) * inv_h2;
            (-d2 + (l2 / (r * r) + mw * mw * r * r - eig) * vals[i]).abs()
        })
        .fold(0.0, f64::max);
    Ok(worst)
}

// ---------------------------------------------------------------------------
// full eigenfunctions and angular sums

/// Psi_{n_r l m}(p) = R(r)/r Y_l^m(p). Undefined at r = 0; see
/// [`full_eigenfunction_at_origin`].
pub fn full_eigenfunction(params: &OscillatorParams, mode: &Mode3D, p: &Point3) -> Result<Complex64> {
    if p.r == 0.0 {
        return Err(KgoError::domain(
            "full_eigenfunction",
            "r = 0; use full_eigenfunction_at_origin",
        ));
    }
    let radial = mode.radial;
    let rv = radial_eigenfunction(params, radial.n_r, radial.ell, p.r) / p.r;
    Ok(sph_harm(radial.ell, mode.m, &p.angular)? * rv)
}

/// The r -> 0 limit of Psi. Nonzero only for l = 0, where it equals
/// sqrt(2) lambda^{3/2} sqrt(Gamma(n_r + 3/2) / n_r!) / Gamma(3/2) * Y_0^0.
pub fn full_eigenfunction_at_origin(params: &OscillatorParams, mode: &Mode3D) -> Complex64 {
    if mode.radial.ell != 0 {
        return Complex64::new(0.0, 0.0);
    }
    let n = mode.radial.n_r as f64;
    let ln_ratio = 0.5 * (log_gamma_unchecked(n + 1.5) - log_gamma_unchecked(n + 1.0))
        - log_gamma_unchecked(1.5);
    let y00 = 0.5 / std::f64::consts::PI.sqrt();
    Complex64::new(2f64.sqrt() * params.lambda().powf(1.5) * ln_ratio.exp() * y00, 0.0)
}

/// sum_{l <= l_max} sum_m Y_l^m(a) conj(Y_l^m(b)) by direct summation over m.
pub fn angular_kernel(ell_max: usize, a: &AngularPoint, b: &AngularPoint) -> f64 {
    let ya = sph_harm_table(ell_max, a);
    let yb = sph_harm_table(ell_max, b);
    let mut re = NeumaierSum::new();
    for (p, q) in ya.iter().zip(&yb) {
        re.add((p * q.conj()).re);
    }
    re.value()
}

/// The same truncated sum through the addition theorem,
/// sum_l (2l+1)/(4 pi) P_l(cos gamma).
pub fn angular_kernel_addition(ell_max: usize, a: &AngularPoint, b: &AngularPoint) -> f64 {
    let c = a.cos_angle_to(b);
    let mut acc = NeumaierSum::new();
    for ell in 0..=ell_max {
        acc.add((2.0 * ell as f64 + 1.0) * legendre_p(ell, c));
    }
    acc.value() / (4.0 * std::f64::consts::PI)
}

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) times the
/// uniform trapezoid in phi. Integrates Y_l^m Y_l'^m'* exactly when
/// l + l' < 2 n_theta and |m - m'| < n_phi.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    points: Vec<AngularPoint>,
    weights: Vec<f64>,
}

impl SphereGrid {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_phi == 0 {
            return Err(KgoError::InvalidParameter("n_phi must be positive".into()));
        }
        let legendre = gauss_legendre(n_theta, -1.0, 1.0)?;
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let mut points = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for (&x, &w) in legendre.nodes().iter().zip(legendre.weights()) {
            let theta = x.clamp(-1.0, 1.0).acos();
            for j in 0..n_phi {
                points.push(AngularPoint::new(theta, dphi * j as f64)?);
                weights.push(w * dphi);
            }
        }
        Ok(Self { points, weights })
    }

    pub fn points(&self) -> &[AngularPoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// b_{lm} = int conj(Y_l^m) g dOmega for all l <= l_max, indexed by
/// [`sph_index`].
pub fn project_angular(
    ell_max: usize,
    g: impl Fn(&AngularPoint) -> Complex64,
    grid: &SphereGrid,
) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); (ell_max + 1) * (ell_max + 1)];
    for (p, &w) in grid.points.iter().zip(&grid.weights) {
        let gv = g(p) * w;
        let ys = sph_harm_table(ell_max, p);
        for (o, y) in out.iter_mut().zip(&ys) {
            *o += y.conj() * gv;
        }
    }
    out
}

/// <Psi_a, Psi_b> over R^3 by a product rule: Gauss-Laguerre in rho with
/// alpha = (l_a + l_b + 1)/2 (which makes the radial factor polynomial
/// times weight) and `grid` on the sphere.
pub fn inner_product_3d(
    params: &OscillatorParams,
    a: &Mode3D,
    b: &Mode3D,
    radial_count: usize,
    grid: &SphereGrid,
) -> Result<Complex64> {
    let alpha = 0.5 * (a.radial.ell + b.radial.ell + 1) as f64;
    let rule = gauss_laguerre(radial_count, alpha)?;
    let lambda = params.lambda();
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for (&rho, &w) in rule.nodes().iter().zip(rule.bare_weights()) {
        let r = rho.sqrt() / lambda;
        // d^3r = r^2 dr dOmega, dr = d rho / (2 lambda sqrt(rho))
        let jac = w * r * r / (2.0 * lambda * rho.sqrt());
        for (ang, &wa) in grid.points.iter().zip(&grid.weights) {
            let p = Point3 { r, angular: *ang };
            let va = full_eigenfunction(params, a, &p)?;
            let vb = full_eigenfunction(params, b, &p)?;
            let term = va.conj() * vb * (jac * wa);
            re.add(term.re);
            im.add(term.im);
        }
    }
    Ok(Complex64::new(re.value(), im.value()))
}

/// Coefficients of a 3D function in {Psi_{n_r l m}}, l <= l_max,
/// n_r <= n_r_max.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection3D {
    pub ell_max: usize,
    pub n_r_max: usize,
    pub params: OscillatorParams,
    coefficients: Vec<Complex64>,
}

impl Projection3D {
    fn slot(&self, n_r: usize, ell: usize, m: i64) -> usize {
        sph_index(ell, m) * (self.n_r_max + 1) + n_r
    }

    pub fn coefficient(&self, n_r: usize, ell: usize, m: i64) -> Complex64 {
        self.coefficients[self.slot(n_r, ell, m)]
    }

    /// sum c_{n_r l m} Psi_{n_r l m}(p), p.r > 0.
    pub fn reconstruct(&self, p: &Point3) -> Complex64 {
        let ys = sph_harm_table(self.ell_max, &p.angular);
        let mut total = Complex64::new(0.0, 0.0);
        for ell in 0..=self.ell_max {
            let radial = radial_values(&self.params, ell, self.n_r_max, p.r);
            for m in -(ell as i64)..=(ell as i64) {
                let mut acc = Complex64::new(0.0, 0.0);
                for (n_r, rv) in radial.iter().enumerate() {
                    acc += self.coefficient(n_r, ell, m) * rv;
                }
                total += acc * ys[sph_index(ell, m)] / p.r;
            }
        }
        total
    }
}

/// Projects an arbitrary (not necessarily separable) function of position.
///
/// For each l the angular moments A_{lm}(r) = int conj(Y_l^m) F(r, .) dOmega
/// are taken at the Gauss-Laguerre(l + 1/2) radial nodes, and the radial
/// coefficients follow from int R_{n_r l}(r) r A_{lm}(r) dr.
pub fn project_3d(
    params: &OscillatorParams,
    ell_max: usize,
    n_r_max: usize,
    f: impl Fn(&Point3) -> Complex64,
    radial_count: usize,
    grid: &SphereGrid,
) -> Result<Projection3D> {
    if ell_max > MAX_ELL {
        return Err(KgoError::InvalidParameter(format!("l_max = {ell_max} exceeds {MAX_ELL}")));
    }
    let lambda = params.lambda();
    let tables: Vec<Vec<Complex64>> =
        grid.points.iter().map(|p| sph_harm_table(ell_max, p)).collect();
    let mut proj = Projection3D {
        ell_max,
        n_r_max,
        params: *params,
        coefficients: vec![Complex64::new(0.0, 0.0); (ell_max + 1) * (ell_max + 1) * (n_r_max + 1)],
    };
    for ell in 0..=ell_max {
        let rule = gauss_laguerre(radial_count, ell as f64 + 0.5)?;
        require_laguerre(&rule, ell, n_r_max + 1)?;
        let n_m = 2 * ell + 1;
        // samples[k][m_offset] = r_k A_{lm}(r_k)
        let mut samples: Vec<Vec<Complex64>> = Vec::with_capacity(rule.count());
        for (index, &rho) in rule.nodes().iter().enumerate() {
            let r = rho.sqrt() / lambda;
            let mut moments = vec![Complex64::new(0.0, 0.0); n_m];
            for ((ang, &w), ys) in grid.points.iter().zip(&grid.weights).zip(&tables) {
                let v = f(&Point3 { r, angular: *ang });
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(KgoError::NonFinite { index, node: r });
                }
                for (mo, m) in moments.iter_mut().zip(-(ell as i64)..=(ell as i64)) {
                    *mo += ys[sph_index(ell, m)].conj() * v * w;
                }
            }
            moments.iter_mut().for_each(|mo| *mo *= r);
            samples.push(moments);
        }
        let coeffs = radial_coefficients(
            params,
            ell,
            n_r_max,
            &rule,
            &samples,
            vec![Complex64::new(0.0, 0.0); n_m],
            |acc, x, s| acc.iter_mut().zip(s).for_each(|(a, v)| *a += v * x),
        );
        for (n_r, per_m) in coeffs.iter().enumerate() {
            for (mi, c) in per_m.iter().enumerate() {
                let m = mi as i64 - ell as i64;
                let slot = proj.slot(n_r, ell, m);
                proj.coefficients[slot] = *c;
            }
        }
    }
    Ok(proj)
}

/// Projection of a separable function f(r) g(r_hat), built from independent
/// radial and angular projections: c_{n_r l m} = a_{n_r l} b_{lm} with
/// a_{n_r l} = <R_{n_r l}, r f> and b_{lm} = <Y_l^m, g>.
#[derive(Debug, Clone)]
pub struct SeparableProjection {
    pub radial: Vec<SpectralProjection>,
    pub angular: Vec<Complex64>,
    pub ell_max: usize,
}

impl SeparableProjection {
    pub fn coefficient(&self, n_r: usize, ell: usize, m: i64) -> Complex64 {
        self.angular[sph_index(ell, m)] * self.radial[ell].coefficients[n_r]
    }

    pub fn reconstruct(&self, p: &Point3) -> Complex64 {
        let ys = sph_harm_table(self.ell_max, &p.angular);
        let mut total = Complex64::new(0.0, 0.0);
        for ell in 0..=self.ell_max {
            let radial_part = self.radial[ell].reconstruct(p.r) / p.r;
            for m in -(ell as i64)..=(ell as i64) {
                let idx = sph_index(ell, m);
                total += self.angular[idx] * ys[idx] * radial_part;
            }
        }
        total
    }
}

pub fn project_separable(
    params: &OscillatorParams,
    ell_max: usize,
    n_r_max: usize,
    f: impl Fn(f64) -> f64,
    g: impl Fn(&AngularPoint) -> Complex64,
    radial_count: usize,
    grid: &SphereGrid,
) -> Result<SeparableProjection> {
    let mut radial = Vec::with_capacity(ell_max + 1);
    for ell in 0..=ell_max {
        let rule = gauss_laguerre(radial_count, ell as f64 + 0.5)?;
        radial.push(project_radial(params, ell, n_r_max, |r| r * f(r), &rule)?);
    }
    Ok(SeparableProjection {
        radial,
        angular: project_angular(ell_max, g, grid),
        ell_max,
    })
}
