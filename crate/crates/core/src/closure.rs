//! Weak completeness checks: project a catalogue test function onto a
//! truncated eigenbasis, reconstruct it on a grid and record the sup-error
//! for a sequence of truncations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{KgoError, Result};
use crate::kgo1d::{auto_quadrature_count_1d, project_1d, uniform_grid};
use crate::kgo3d::{auto_quadrature_count_radial, project_radial};
use crate::params::OscillatorParams;
use crate::quad::{gauss_hermite, gauss_laguerre};

/// Built-in one-dimensional test functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestFunction1D {
    /// exp(-x^2)
    Gaussian,
    /// exp(-(x - 1)^2)
    ShiftedGaussian,
    /// (1 + x/2 - x^3/4) exp(-lambda^2 x^2 / 2); in the span of psi_0..psi_3.
    InSpanCubic,
}

/// Built-in radial test functions at angular momentum l.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestFunctionRadial {
    /// r^(l+1) exp(-r^2)
    Gaussian,
    /// r^(l+1) exp(-r^2 / 4)
    WideGaussian,
    /// r^(l+1) (1 - lambda^2 r^2) exp(-lambda^2 r^2 / 2); in the span of n_r <= 1.
    InSpanLinear,
}

impl TestFunction1D {
    pub const ALL: [Self; 3] = [Self::Gaussian, Self::ShiftedGaussian, Self::InSpanCubic];

    pub fn id(self) -> &'static str {
        match self {
            Self::Gaussian => "gaussian",
            Self::ShiftedGaussian => "shifted-gaussian",
            Self::InSpanCubic => "in-span-cubic",
        }
    }

    /// Highest basis index present, for functions inside the span.
    pub fn span_degree(self) -> Option<usize> {
        match self {
            Self::InSpanCubic => Some(3),
            _ => None,
        }
    }

    pub fn eval(self, params: &OscillatorParams, x: f64) -> f64 {
        match self {
            Self::Gaussian => (-x * x).exp(),
            Self::ShiftedGaussian => (-(x - 1.0) * (x - 1.0)).exp(),
            Self::InSpanCubic => {
                let l2 = params.lambda_sq();
                (1.0 + 0.5 * x - 0.25 * x * x * x) * (-0.5 * l2 * x * x).exp()
            }
        }
    }
}

impl TestFunctionRadial {
    pub const ALL: [Self; 3] = [Self::Gaussian, Self::WideGaussian, Self::InSpanLinear];

    pub fn id(self) -> &'static str {
        match self {
            Self::Gaussian => "gaussian",
            Self::WideGaussian => "wide-gaussian",
            Self::InSpanLinear => "in-span-linear",
        }
    }

    pub fn span_degree(self) -> Option<usize> {
        match self {
            Self::InSpanLinear => Some(1),
            _ => None,
        }
    }

    pub fn eval(self, params: &OscillatorParams, ell: usize, r: f64) -> f64 {
        let lead = r.powi(ell as i32 + 1);
        match self {
            Self::Gaussian => lead * (-r * r).exp(),
            Self::WideGaussian => lead * (-0.25 * r * r).exp(),
            Self::InSpanLinear => {
                let rho = params.lambda_sq() * r * r;
                lead * (1.0 - rho) * (-0.5 * rho).exp()
            }
        }
    }
}

macro_rules! catalogue_text {
    ($t:ty) => {
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.id())
            }
        }

        impl FromStr for $t {
            type Err = KgoError;

            fn from_str(s: &str) -> Result<Self> {
                Self::ALL
                    .into_iter()
                    .find(|t| t.id() == s)
                    .ok_or_else(|| KgoError::UnknownTestFunction(s.to_string()))
            }
        }
    };
}

catalogue_text!(TestFunction1D);
catalogue_text!(TestFunctionRadial);

/// Which truncated basis a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Dimension {
    OneD,
    RadialEll { ell: usize },
}

/// Reconstruction sup-errors of one test function over several truncations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelReport {
    pub dimension: Dimension,
    pub truncations: Vec<usize>,
    pub test_function_id: String,
    pub errors: Vec<f64>,
    pub grid_spec: String,
    pub quadrature_counts: Vec<usize>,
}

impl KernelReport {
    /// errors[i + 1] <= errors[i] + slack for consecutive truncations.
    pub fn is_non_increasing(&self, slack: f64) -> bool {
        self.errors.windows(2).all(|w| w[1] <= w[0] + slack)
    }

    pub fn max_error(&self) -> f64 {
        self.errors.iter().copied().fold(0.0, f64::max)
    }
}

/// Evaluation grid of a closure sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl SweepGrid {
    /// 101 points on [-6, 6].
    pub const DEFAULT_1D: Self = Self { start: -6.0, end: 6.0, points: 101 };
    /// 101 points on [0.05, 6].
    pub const DEFAULT_RADIAL: Self = Self { start: 0.05, end: 6.0, points: 101 };

    fn describe(&self, coordinate: &str) -> String {
        format!("{} uniform points, {coordinate} in [{}, {}]", self.points, self.start, self.end)
    }

    fn values(&self) -> Vec<f64> {
        uniform_grid(self.start, self.end, self.points)
    }
}

fn check_truncations(truncations: &[usize]) -> Result<()> {
    if truncations.is_empty() {
        return Err(KgoError::InvalidParameter("at least one truncation is required".into()));
    }
    Ok(())
}

/// Projects `test` onto psi_0..psi_N for each N and records the grid
/// sup-error of the reconstruction. `quad_count` overrides the automatic
/// Gauss-Hermite size.
pub fn closure_sweep_1d(
    params: &OscillatorParams,
    test: TestFunction1D,
    truncations: &[usize],
    grid: SweepGrid,
    quad_count: Option<usize>,
) -> Result<KernelReport> {
    check_truncations(truncations)?;
    let xs = grid.values();
    let mut errors = Vec::with_capacity(truncations.len());
    let mut counts = Vec::with_capacity(truncations.len());
    for &n in truncations {
        let count = quad_count.unwrap_or_else(|| auto_quadrature_count_1d(n));
        let rule = gauss_hermite(count)?;
        let proj = project_1d(params, n, |x| test.eval(params, x), &rule)?;
        let err = xs
            .iter()
            .map(|&x| (proj.reconstruct(x) - test.eval(params, x)).abs())
            .fold(0.0, f64::max);
        errors.push(err);
        counts.push(count);
    }
    Ok(KernelReport {
        dimension: Dimension::OneD,
        truncations: truncations.to_vec(),
        test_function_id: test.id().to_string(),
        errors,
        grid_spec: grid.describe("x"),
        quadrature_counts: counts,
    })
}

/// Radial counterpart of [`closure_sweep_1d`] at angular momentum `ell`.
pub fn closure_sweep_radial(
    params: &OscillatorParams,
    ell: usize,
    test: TestFunctionRadial,
    truncations: &[usize],
    grid: SweepGrid,
    quad_count: Option<usize>,
) -> Result<KernelReport> {
    check_truncations(truncations)?;
    let rs = grid.values();
    let mut errors = Vec::with_capacity(truncations.len());
    let mut counts = Vec::with_capacity(truncations.len());
    for &n in truncations {
        let count = quad_count.unwrap_or_else(|| auto_quadrature_count_radial(n));
        let rule = gauss_laguerre(count, ell as f64 + 0.5)?;
        let proj = project_radial(params, ell, n, |r| test.eval(params, ell, r), &rule)?;
        let err = rs
            .iter()
            .map(|&r| (proj.reconstruct(r) - test.eval(params, ell, r)).abs())
            .fold(0.0, f64::max);
        errors.push(err);
        counts.push(count);
    }
    Ok(KernelReport {
        dimension: Dimension::RadialEll { ell },
        truncations: truncations.to_vec(),
        test_function_id: test.id().to_string(),
        errors,
        grid_spec: grid.describe("r"),
        quadrature_counts: counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> OscillatorParams {
        OscillatorParams::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for t in TestFunction1D::ALL {
            assert_eq!(t.id().parse::<TestFunction1D>().unwrap(), t);
        }
        for t in TestFunctionRadial::ALL {
            assert_eq!(t.to_string().parse::<TestFunctionRadial>().unwrap(), t);
        }
        assert!(matches!(
            "lorentzian".parse::<TestFunction1D>(),
            Err(KgoError::UnknownTestFunction(_))
        ));
    }

    #[test]
    fn in_span_cubic_is_exact() {
        let p = OscillatorParams::new(1.3, 0.7).unwrap();
        let rep = closure_sweep_1d(&p, TestFunction1D::InSpanCubic, &[3, 10, 40], SweepGrid::DEFAULT_1D, None)
            .unwrap();
        assert!(rep.max_error() < 1e-10, "{:?}", rep.errors);
    }

    #[test]
    fn gaussian_sweep_decreases() {
        let rep =
            closure_sweep_1d(&unit(), TestFunction1D::Gaussian, &[10, 20, 40], SweepGrid::DEFAULT_1D, None).unwrap();
        assert!(rep.errors.windows(2).all(|w| w[1] < w[0]), "{:?}", rep.errors);
    }

    #[test]
    fn radial_gaussian_decreases() {
        for ell in [0, 1, 3] {
            let rep = closure_sweep_radial(
                &unit(),
                ell,
                TestFunctionRadial::Gaussian,
                &[10, 40],
                SweepGrid::DEFAULT_RADIAL,
                None,
            )
            .unwrap();
            assert!(rep.errors[1] < rep.errors[0], "ell={ell}: {:?}", rep.errors);
        }
    }

    #[test]
    fn radial_in_span_is_exact() {
        let p = OscillatorParams::new(2.0, 0.4).unwrap();
        let rep = closure_sweep_radial(
            &p,
            2,
            TestFunctionRadial::InSpanLinear,
            &[1, 5, 20],
            SweepGrid::DEFAULT_RADIAL,
            None,
        )
        .unwrap();
        assert!(rep.max_error() < 1e-10, "{:?}", rep.errors);
    }

    #[test]
    fn empty_truncation_list_is_rejected() {
        assert!(closure_sweep_1d(&unit(), TestFunction1D::Gaussian, &[], SweepGrid::DEFAULT_1D, None).is_err());
    }
}
