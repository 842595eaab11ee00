//! Gaussian quadrature rules for the Hermite, generalized Laguerre and
//! Legendre weights.
//!
//! Nodes are located without an eigensolver. Each root is first isolated
//! by bisection on the sign-change count of the three-term recurrence
//! sequence (the recurrence sequence of an orthogonal family is a Sturm
//! sequence, so the count equals the number of roots on one side of the
//! probe point), then polished by safeguarded Newton iteration inside that
//! bracket. Weights come from the Christoffel formulas evaluated in log
//! space.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{KgoError, Result};
use crate::special::{
    hermite_pair_with_sign_changes, laguerre_pair_with_sign_changes, legendre_pair,
    log_gamma_unchecked,
};
use crate::summation::NeumaierSum;

/// Largest rule any generator will build.
pub const MAX_NODES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum QuadFamily {
    /// Weight e^{-x^2} on the real line.
    GaussHermite,
    /// Weight x^alpha e^{-x} on (0, inf).
    GaussLaguerre { alpha: f64 },
    /// Unit weight on [a, b].
    GaussLegendre { a: f64, b: f64 },
}

impl QuadFamily {
    /// Integral of the weight function.
    pub fn total_mass(&self) -> f64 {
        match *self {
            QuadFamily::GaussHermite => PI.sqrt(),
            QuadFamily::GaussLaguerre { alpha } => log_gamma_unchecked(alpha + 1.0).exp(),
            QuadFamily::GaussLegendre { a, b } => b - a,
        }
    }

    /// Weight function at `x`.
    pub fn weight_fn(&self, x: f64) -> f64 {
        match *self {
            QuadFamily::GaussHermite => (-x * x).exp(),
            QuadFamily::GaussLaguerre { alpha } => x.powf(alpha) * (-x).exp(),
            QuadFamily::GaussLegendre { .. } => 1.0,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            QuadFamily::GaussHermite => "gauss-hermite".into(),
            QuadFamily::GaussLaguerre { alpha } => format!("gauss-laguerre(alpha={alpha})"),
            QuadFamily::GaussLegendre { a, b } => format!("gauss-legendre([{a}, {b}])"),
        }
    }
}

/// An immutable Gaussian rule.
///
/// `weights` are the classical Christoffel weights for the family's weight
/// function. `bare_weights` are the same weights divided by the weight
/// function at each node, for integrands that already contain the weight
/// (e.g. products of Hermite functions). Classical weights of very large
/// rules can underflow; `log_weights` stays finite in every case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    family: QuadFamily,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    log_weights: Vec<f64>,
    bare_weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn family(&self) -> QuadFamily {
        self.family
    }

    pub fn count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn bare_weights(&self) -> &[f64] {
        &self.bare_weights
    }

    /// Highest polynomial degree integrated exactly against the weight.
    pub fn exactness_degree(&self) -> usize {
        2 * self.count() - 1
    }

    /// Sum of `w_k f(x_k)`. For the Hermite and Laguerre families `f` is the
    /// integrand with the weight function already divided out.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        weighted_sum(&self.nodes, &self.weights, f)
    }

    /// Sum of `(w_k / weight(x_k)) f(x_k)`, i.e. the plain integral of `f`
    /// over the family's domain.
    pub fn integrate_bare(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        weighted_sum(&self.nodes, &self.bare_weights, f)
    }
}

fn weighted_sum(nodes: &[f64], weights: &[f64], f: impl Fn(f64) -> f64) -> Result<f64> {
    let mut acc = NeumaierSum::new();
    for (index, (&x, &w)) in nodes.iter().zip(weights).enumerate() {
        let v = f(x);
        if !v.is_finite() {
            return Err(KgoError::NonFinite { index, node: x });
        }
        acc.add(w * v);
    }
    Ok(acc.value())
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(KgoError::InvalidParameter("quadrature needs at least one node".into()));
    }
    if count > MAX_NODES {
        return Err(KgoError::RuleTooLarge {
            requested: count,
            max: MAX_NODES,
        });
    }
    Ok(())
}

/// A polynomial family as seen by the root finder.
trait RootProblem {
    fn count(&self) -> usize;
    /// Number of roots strictly below `x`.
    fn roots_below(&self, x: f64) -> usize;
    /// Sign of the polynomial at `x` and the Newton correction p/p'.
    fn newton(&self, x: f64) -> (f64, f64);
}

struct HermiteRoots(usize);

impl RootProblem for HermiteRoots {
    fn count(&self) -> usize {
        self.0
    }
    fn roots_below(&self, x: f64) -> usize {
        let (_, _, _, above) = hermite_pair_with_sign_changes(self.0, x);
        self.0 - above
    }
    fn newton(&self, x: f64) -> (f64, f64) {
        let n = self.0;
        let (prev, cur, _, _) = hermite_pair_with_sign_changes(n, x);
        (cur.signum(), cur / ((2.0 * n as f64).sqrt() * prev))
    }
}

struct LaguerreRoots {
    n: usize,
    alpha: f64,
}

impl RootProblem for LaguerreRoots {
    fn count(&self) -> usize {
        self.n
    }
    fn roots_below(&self, x: f64) -> usize {
        laguerre_pair_with_sign_changes(self.n, self.alpha, x).3
    }
    fn newton(&self, x: f64) -> (f64, f64) {
        let nf = self.n as f64;
        let (prev, cur, _, _) = laguerre_pair_with_sign_changes(self.n, self.alpha, x);
        let denom = nf * cur - (nf * (nf + self.alpha)).sqrt() * prev;
        (cur.signum(), x * cur / denom)
    }
}

struct LegendreRoots(usize);

impl RootProblem for LegendreRoots {
    fn count(&self) -> usize {
        self.0
    }
    fn roots_below(&self, x: f64) -> usize {
        // sign changes of P_0 .. P_n count roots above x
        let mut prev_sign = 1.0;
        let mut changes = 0;
        let mut p0 = 0.0;
        let mut p1 = 1.0;
        for k in 0..self.0 {
            let kf = k as f64;
            let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
            p0 = p1;
            p1 = p2;
            if p1 != 0.0 {
                let s = p1.signum();
                if s != prev_sign {
                    changes += 1;
                }
                prev_sign = s;
            }
        }
        self.0 - changes
    }
    fn newton(&self, x: f64) -> (f64, f64) {
        let n = self.0 as f64;
        let (prev, cur) = legendre_pair(self.0, x);
        let deriv = n * (x * cur - prev) / (x * x - 1.0);
        (cur.signum(), cur / deriv)
    }
}

/// All roots of the family in ascending order, searched inside (lo, hi).
fn find_roots(problem: &impl RootProblem, lo: f64, hi: f64) -> Vec<f64> {
    let n = problem.count();
    let mut roots = Vec::with_capacity(n);
    let mut lo = lo;
    let mut lo_count = problem.roots_below(lo);
    debug_assert_eq!(lo_count, 0);
    let hi_count_global = problem.roots_below(hi);
    debug_assert_eq!(hi_count_global, n);
    for i in 0..n {
        // isolate root i in (a, b) with exactly i roots below a and i+1 below b
        let (mut a, mut a_count) = (lo, lo_count);
        let (mut b, mut b_count) = (hi, hi_count_global);
        while !(a_count == i && b_count == i + 1) {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let c = problem.roots_below(mid);
            if c <= i {
                a = mid;
                a_count = c;
            } else {
                b = mid;
                b_count = c;
            }
        }
        let root = polish(problem, a, b);
        roots.push(root);
        lo = b;
        lo_count = b_count;
    }
    roots
}

/// Safeguarded Newton on a bracket holding one simple root.
fn polish(problem: &impl RootProblem, mut a: f64, mut b: f64) -> f64 {
    let (sign_a, _) = problem.newton(a);
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let (sign, step) = problem.newton(x);
        if sign == 0.0 || step == 0.0 {
            return x;
        }
        if sign == sign_a {
            a = x;
        } else {
            b = x;
        }
        let mut next = x - step;
        if !(next > a && next < b) || !next.is_finite() {
            next = 0.5 * (a + b);
        }
        let converged = (next - x).abs() <= 2.0 * f64::EPSILON * x.abs().max(1e-300);
        x = next;
        if converged || b - a <= 2.0 * f64::EPSILON * x.abs().max(1e-300) {
            break;
        }
    }
    x
}

/// Averages the rule with its mirror image about the centre of symmetry.
fn symmetrize(nodes: &mut [f64], log_weights: &mut [f64], centre: f64) {
    let n = nodes.len();
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let half = 0.5 * ((centre - nodes[i]) + (nodes[j] - centre));
        nodes[i] = centre - half;
        nodes[j] = centre + half;
        let lw = 0.5 * (log_weights[i] + log_weights[j]);
        log_weights[i] = lw;
        log_weights[j] = lw;
    }
    if n % 2 == 1 {
        nodes[n / 2] = centre;
    }
}

/// Gauss-Hermite rule with `count` nodes for the weight e^{-x^2}.
pub fn gauss_hermite(count: usize) -> Result<QuadratureRule> {
    check_count(count)?;
    let bound = (2.0 * count as f64 + 1.0).sqrt() + 1.0;
    let mut nodes = find_roots(&HermiteRoots(count), -bound, bound);
    let n = count as f64;
    let mut log_bare: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let (prev, _, log_scale, _) = hermite_pair_with_sign_changes(count, x);
            // bare weight 1 / (n h_{n-1}(x)^2)
            -n.ln() - 2.0 * (prev.abs().ln() + log_scale)
        })
        .collect();
    symmetrize(&mut nodes, &mut log_bare, 0.0);
    let log_weights: Vec<f64> = nodes.iter().zip(&log_bare).map(|(x, lb)| lb - x * x).collect();
    Ok(QuadratureRule {
        family: QuadFamily::GaussHermite,
        weights: log_weights.iter().map(|l| l.exp()).collect(),
        bare_weights: log_bare.iter().map(|l| l.exp()).collect(),
        log_weights,
        nodes,
    })
}

/// Gauss-Laguerre rule with `count` nodes for the weight x^alpha e^{-x}.
pub fn gauss_laguerre(count: usize, alpha: f64) -> Result<QuadratureRule> {
    check_count(count)?;
    if !(alpha > -1.0 && alpha.is_finite()) {
        return Err(KgoError::InvalidParameter(format!("alpha = {alpha} must exceed -1")));
    }
    let n = count as f64;
    let bound = 4.0 * n + 2.0 * alpha.abs() + 10.0;
    let nodes = find_roots(&LaguerreRoots { n: count, alpha }, 0.0, bound);
    let log_weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let (prev, _, log_scale, _) = laguerre_pair_with_sign_changes(count, alpha, x);
            // w = x / (n (n + alpha) l_{n-1}(x)^2)
            x.ln() - (n * (n + alpha)).ln() - 2.0 * (prev.abs().ln() + log_scale)
        })
        .collect();
    let log_bare: Vec<f64> = nodes
        .iter()
        .zip(&log_weights)
        .map(|(&x, lw)| lw + x - alpha * x.ln())
        .collect();
    Ok(QuadratureRule {
        family: QuadFamily::GaussLaguerre { alpha },
        weights: log_weights.iter().map(|l| l.exp()).collect(),
        bare_weights: log_bare.iter().map(|l| l.exp()).collect(),
        log_weights,
        nodes,
    })
}

/// Gauss-Legendre rule with `count` nodes mapped affinely onto [a, b].
pub fn gauss_legendre(count: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    check_count(count)?;
    if !(b > a) || !a.is_finite() || !b.is_finite() {
        return Err(KgoError::InvalidParameter(format!("interval [{a}, {b}] is empty")));
    }
    let mut nodes = find_roots(&LegendreRoots(count), -1.0, 1.0);
    let n = count as f64;
    let mut log_weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let (prev, _) = legendre_pair(count, x);
            // w = 2 (1 - x^2) / (n P_{n-1}(x))^2
            (2.0 * (1.0 - x * x)).ln() - 2.0 * (n * prev.abs()).ln()
        })
        .collect();
    symmetrize(&mut nodes, &mut log_weights, 0.0);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let nodes: Vec<f64> = nodes.iter().map(|x| mid + half * x).collect();
    let log_weights: Vec<f64> = log_weights.iter().map(|l| l + half.ln()).collect();
    let weights: Vec<f64> = log_weights.iter().map(|l| l.exp()).collect();
    Ok(QuadratureRule {
        family: QuadFamily::GaussLegendre { a, b },
        bare_weights: weights.clone(),
        weights,
        log_weights,
        nodes,
    })
}
