//! Truncated spectral Green's functions,
//!
//!   G(x, x') = sum_n psi_n(x) psi_n(x') / (E^2 - E_n^2),
//!
//! for the 1D oscillator and for a single 3D partial wave. The angular
//! factor of the full 3D sum comes from [`crate::kgo3d::angular_kernel`]
//! style compositions and is not duplicated here.
//!
//! There is no i-epsilon prescription: probe energies closer than
//! `pole_guard` to any retained level are rejected.

use serde::{Deserialize, Serialize};

use crate::error::{KgoError, Result};
use crate::kgo1d::{eigenfunctions_1d, energy_sq_1d};
use crate::kgo3d::{energy_sq_3d, radial_eigenfunctions};
use crate::params::OscillatorParams;
use crate::summation::NeumaierSum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreensQuery {
    probe_energy_sq: f64,
    truncation: usize,
    pole_guard: f64,
}

impl GreensQuery {
    pub fn new(probe_energy_sq: f64, truncation: usize, pole_guard: f64) -> Result<Self> {
        if !(pole_guard > 0.0) {
            return Err(KgoError::InvalidParameter(format!(
                "pole guard {pole_guard} must be positive"
            )));
        }
        if !probe_energy_sq.is_finite() {
            return Err(KgoError::InvalidParameter("probe energy must be finite".into()));
        }
        Ok(Self {
            probe_energy_sq,
            truncation,
            pole_guard,
        })
    }

    pub fn probe_energy_sq(&self) -> f64 {
        self.probe_energy_sq
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn pole_guard(&self) -> f64 {
        self.pole_guard
    }
}

/// 1 / (E^2 - E_n^2) for n = 0 ..= N, or the first level violating the guard.
pub fn resolvent_factors_1d(params: &OscillatorParams, query: &GreensQuery) -> Result<Vec<f64>> {
    (0..=query.truncation)
        .map(|n| {
            let d = query.probe_energy_sq - energy_sq_1d(params, n);
            if d.abs() < query.pole_guard {
                Err(KgoError::PoleProximity1d { n })
            } else {
                Ok(1.0 / d)
            }
        })
        .collect()
}

/// 1 / (E^2 - E_{2 n_r + l}^2) for n_r = 0 ..= N at fixed l.
pub fn resolvent_factors_radial(
    params: &OscillatorParams,
    ell: usize,
    query: &GreensQuery,
) -> Result<Vec<f64>> {
    (0..=query.truncation)
        .map(|n_r| {
            let d = query.probe_energy_sq - energy_sq_3d(params, 2 * n_r + ell);
            if d.abs() < query.pole_guard {
                Err(KgoError::PoleProximityRadial { n_r, ell })
            } else {
                Ok(1.0 / d)
            }
        })
        .collect()
}

/// Individual terms psi_n(x) psi_n(x') / (E^2 - E_n^2) of the 1D sum.
pub fn greens_terms_1d(
    params: &OscillatorParams,
    query: &GreensQuery,
    x: f64,
    x2: f64,
) -> Result<Vec<f64>> {
    let factors = resolvent_factors_1d(params, query)?;
    let a = eigenfunctions_1d(params, query.truncation, x);
    let b = eigenfunctions_1d(params, query.truncation, x2);
    Ok(factors
        .iter()
        .zip(a.iter().zip(&b))
        .map(|(f, (p, q))| f * (p * q))
        .collect())
}

/// Truncated 1D Green's function.
pub fn greens_1d(params: &OscillatorParams, query: &GreensQuery, x: f64, x2: f64) -> Result<f64> {
    let terms = greens_terms_1d(params, query, x, x2)?;
    let mut acc = NeumaierSum::new();
    acc.extend(terms);
    Ok(acc.value())
}

/// Individual terms of the fixed-l radial sum.
pub fn greens_terms_radial(
    params: &OscillatorParams,
    ell: usize,
    query: &GreensQuery,
    r: f64,
    r2: f64,
) -> Result<Vec<f64>> {
    let factors = resolvent_factors_radial(params, ell, query)?;
    let a = radial_eigenfunctions(params, ell, query.truncation, r);
    let b = radial_eigenfunctions(params, ell, query.truncation, r2);
    Ok(factors
        .iter()
        .zip(a.iter().zip(&b))
        .map(|(f, (p, q))| f * (p * q))
        .collect())
}

/// sum_{n_r} R_{n_r l}(r) R_{n_r l}(r') / (E^2 - E_{2 n_r + l}^2).
pub fn greens_3d_partial_wave(
    params: &OscillatorParams,
    ell: usize,
    query: &GreensQuery,
    r: f64,
    r2: f64,
) -> Result<f64> {
    let terms = greens_terms_radial(params, ell, query, r, r2)?;
    let mut acc = NeumaierSum::new();
    acc.extend(terms);
    Ok(acc.value())
}

/// First index n* >= lag from which every term is smaller in magnitude than
/// the term `lag` places earlier, if the tail behaves that way at all.
/// Diagnostic only; the onset depends on where (x, x') sit relative to the
/// classical turning points.
pub fn tail_decay_onset(terms: &[f64], lag: usize) -> Option<usize> {
    if lag == 0 || terms.len() <= lag {
        return None;
    }
    let mut onset = None;
    for n in lag..terms.len() {
        if terms[n].abs() < terms[n - lag].abs() {
            onset.get_or_insert(n);
        } else {
            onset = None;
        }
    }
    onset
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgo1d::eigenfunction_1d;
    use crate::kgo3d::radial_eigenfunction;
    use approx::assert_relative_eq;

    fn unit() -> OscillatorParams {
        OscillatorParams::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn single_term_sums() {
        let p = unit();
        let q = GreensQuery::new(0.25, 0, 1e-6).unwrap();
        let g = greens_1d(&p, &q, 0.3, -0.2).unwrap();
        let expected = eigenfunction_1d(&p, 0, 0.3) * eigenfunction_1d(&p, 0, -0.2) / (0.25 - 1.0);
        assert_relative_eq!(g, expected, max_relative = 1e-15);

        let g = greens_3d_partial_wave(&p, 0, &q, 0.7, 1.1).unwrap();
        let expected =
            radial_eigenfunction(&p, 0, 0, 0.7) * radial_eigenfunction(&p, 0, 0, 1.1) / (0.25 - 1.0);
        assert_relative_eq!(g, expected, max_relative = 1e-15);
    }

    #[test]
    fn pole_guard_names_offending_level() {
        let p = unit();
        // E_3^2 = 7, E_4^2 = 9
        let q = GreensQuery::new(7.05, 10, 0.1).unwrap();
        assert_eq!(greens_1d(&p, &q, 0.0, 0.0), Err(KgoError::PoleProximity1d { n: 3 }));
        let q = GreensQuery::new(9.0 + 1e-3, 10, 1e-2).unwrap();
        assert_eq!(
            greens_3d_partial_wave(&p, 2, &q, 1.0, 1.0),
            Err(KgoError::PoleProximityRadial { n_r: 1, ell: 2 })
        );
        assert!(GreensQuery::new(1.0, 3, 0.0).is_err());
    }

    #[test]
    fn symmetric_and_negative_below_spectrum() {
        let p = OscillatorParams::new(1.2, 0.6).unwrap();
        let q = GreensQuery::new(0.5, 30, 1e-8).unwrap();
        assert_eq!(
            greens_3d_partial_wave(&p, 1, &q, 0.4, 2.0).unwrap(),
            greens_3d_partial_wave(&p, 1, &q, 2.0, 0.4).unwrap()
        );
        for x in [-2.0, 0.0, 0.7] {
            let terms = greens_terms_1d(&p, &q, x, x).unwrap();
            assert!(terms.iter().all(|t| *t <= 0.0));
            assert!(greens_1d(&p, &q, x, x).unwrap() < 0.0);
        }
    }

    #[test]
    fn decay_onset_detection() {
        let terms = [1.0, 3.0, 2.0, 5.0, 0.5, 0.4, 0.1, 0.05, 0.01];
        assert_eq!(tail_decay_onset(&terms, 4), Some(4));
        assert_eq!(tail_decay_onset(&[1.0, 2.0, 3.0], 1), None);
        assert_eq!(tail_decay_onset(&[1.0], 4), None);
    }
}
