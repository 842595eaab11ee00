use std::str::FromStr;

use kgo_core::closure::{closure_sweep_1d, closure_sweep_radial, SweepGrid};
use kgo_core::greens::{greens_1d, greens_3d_partial_wave};
use kgo_core::kgo1d::{
    auto_quadrature_count_1d, eigenfunction_1d, energy_above_rest_1d, energy_sq_1d, gram_matrix_1d, nonrel_energy,
    project_1d,
};
use kgo_core::kgo3d::{
    auto_quadrature_count_radial, degeneracy as shell_degeneracy, energy_above_rest_3d, energy_sq_3d,
    nonrel_energy_3d, project_radial, radial_eigenfunction, radial_gram, shell_modes,
};
use kgo_core::{
    gauss_hermite, gauss_laguerre, Branch, GreensQuery, KernelReport, OscillatorParams, SpectrumConvention,
    TestFunction1D, TestFunctionRadial,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{Report, Table};
use crate::{QuadCount, SpectrumDim};

/// Largest Gram deviation still counted as orthonormal.
pub const ORTHONORMALITY_TOL: f64 = 1e-9;
/// Allowed growth between consecutive closure errors.
pub const CLOSURE_SLACK: f64 = 1e-12;
/// Reconstruction error allowed for functions inside the truncated span.
pub const IN_SPAN_TOL: f64 = 1e-10;
/// Largest allowed deviation in the Green's function coefficient identity.
pub const COEFFICIENT_TOL: f64 = 1e-9;

fn config(params: &OscillatorParams, extra: Value) -> Value {
    let mut base = json!({
        "mass": params.mass(),
        "frequency": params.frequency(),
        "convention": params.convention().to_string(),
    });
    if let (Some(base), Value::Object(extra)) = (base.as_object_mut(), extra) {
        base.extend(extra);
    }
    base
}

fn dimension_name(ell: Option<usize>) -> &'static str {
    if ell.is_some() {
        "radial"
    } else {
        "1d"
    }
}

fn branch_name(branch: Branch) -> &'static str {
    match branch {
        Branch::Positive => "positive",
        Branch::Negative => "negative",
    }
}

pub fn spectrum(params: &OscillatorParams, n_max: usize, dimension: SpectrumDim) -> Report {
    let ode = params.using(SpectrumConvention::OdeDerived);
    let printed = params.using(SpectrumConvention::AsPrinted);
    let w = params.frequency();
    let (label, dim) = match dimension {
        SpectrumDim::OneD => ("n", "1d"),
        SpectrumDim::ThreeD => ("N", "3d"),
    };
    let mut table = Table::new(&["branch", label, "e_ode_derived", "e_as_printed", "nonrel", "difference"]);
    for branch in [Branch::Positive, Branch::Negative] {
        let s = branch.sign();
        for n in 0..=n_max {
            let (e_ode, e_printed, nonrel, above, quanta) = match dimension {
                SpectrumDim::OneD => (
                    energy_sq_1d(&ode, n).sqrt(),
                    energy_sq_1d(&printed, n).sqrt(),
                    nonrel_energy(params, n),
                    energy_above_rest_1d(&printed, n),
                    n as f64 + 0.5,
                ),
                SpectrumDim::ThreeD => (
                    energy_sq_3d(&ode, n).sqrt(),
                    energy_sq_3d(&printed, n).sqrt(),
                    nonrel_energy_3d(params, n),
                    energy_above_rest_3d(&printed, n),
                    n as f64 + 1.5,
                ),
            };
            // E - E_nonrel, formed from E - m so nothing cancels at large mass
            let difference = above - w * quanta;
            table.push(vec![
                branch_name(branch).into(),
                n.into(),
                (s * e_ode).into(),
                (s * e_printed).into(),
                (s * nonrel).into(),
                (s * difference).into(),
            ]);
        }
    }
    Report::new("spectrum", config(params, json!({ "dimension": dim, "n_max": n_max })), table)
}

pub fn orthonormality(
    params: &OscillatorParams,
    ell: Option<usize>,
    n_max: usize,
    quad_count: QuadCount,
) -> Result<Report, CliError> {
    let (gram, count) = match ell {
        None => {
            let count = quad_count.0.unwrap_or_else(|| auto_quadrature_count_1d(n_max));
            (gram_matrix_1d(params, n_max, &gauss_hermite(count)?)?, count)
        }
        Some(ell) => {
            let count = quad_count.0.unwrap_or_else(|| auto_quadrature_count_radial(n_max));
            (radial_gram(params, ell, n_max, &gauss_laguerre(count, ell as f64 + 0.5)?)?, count)
        }
    };
    let diag = gram.max_diagonal_deviation();
    let off = gram.max_off_diagonal();
    let mut table = Table::new(&["dimension", "ell", "n_max", "quadrature_count", "max_diagonal_deviation", "max_off_diagonal"]);
    table.push(vec![
        dimension_name(ell).into(),
        ell.unwrap_or(0).into(),
        n_max.into(),
        count.into(),
        diag.into(),
        off.into(),
    ]);
    let cfg = config(params, json!({ "dimension": dimension_name(ell), "ell": ell, "n_max": n_max, "quad_count": quad_count.0 }));
    let mut report = Report::new("orthonormality", cfg, table);
    let worst = diag.max(off);
    if !(worst <= ORTHONORMALITY_TOL) {
        report.failure = Some(format!("Gram matrix deviates from the identity by {worst:e} (tolerance {ORTHONORMALITY_TOL:e})"));
    }
    Ok(report)
}

pub fn closure(
    params: &OscillatorParams,
    ell: Option<usize>,
    truncations: &[usize],
    test_function: &str,
    quad_count: QuadCount,
) -> Result<Report, CliError> {
    let (report, span_degree) = match ell {
        None => {
            let test = TestFunction1D::from_str(test_function)?;
            let r = closure_sweep_1d(params, test, truncations, SweepGrid::DEFAULT_1D, quad_count.0)?;
            (r, test.span_degree())
        }
        Some(ell) => {
            let test = TestFunctionRadial::from_str(test_function)?;
            let r = closure_sweep_radial(params, ell, test, truncations, SweepGrid::DEFAULT_RADIAL, quad_count.0)?;
            (r, test.span_degree())
        }
    };
    let mut table = Table::new(&["truncation", "quadrature_count", "sup_error"]);
    for ((n, count), err) in report.truncations.iter().zip(&report.quadrature_counts).zip(&report.errors) {
        table.push(vec![(*n).into(), (*count).into(), (*err).into()]);
    }
    let cfg = config(
        params,
        json!({
            "dimension": dimension_name(ell),
            "ell": ell,
            "truncations": truncations,
            "test_function": test_function,
            "quad_count": quad_count.0,
        }),
    );
    let failure = closure_failure(&report, span_degree);
    let mut out = Report::new("closure", cfg, table);
    out.detail = Some(("report", serde_json::to_value(&report).expect("report is serializable")));
    out.failure = failure;
    Ok(out)
}

fn closure_failure(report: &KernelReport, span_degree: Option<usize>) -> Option<String> {
    if !report.is_non_increasing(CLOSURE_SLACK) {
        return Some(format!("reconstruction errors increase with truncation: {:?}", report.errors));
    }
    let degree = span_degree?;
    report
        .truncations
        .iter()
        .zip(&report.errors)
        .find(|(n, e)| **n >= degree && !(**e <= IN_SPAN_TOL))
        .map(|(n, e)| format!("in-span function reconstructed with error {e:e} at truncation {n}"))
}

pub fn degeneracy(params: &OscillatorParams, n_max: usize) -> Report {
    let mut table = Table::new(&["N", "shell_modes", "states", "formula", "mismatch"]);
    let mut mismatches = Vec::new();
    for principal in 0..=n_max {
        let modes = shell_modes(principal);
        let label = modes.iter().map(|(n_r, ell)| format!("{n_r}:{ell}")).collect::<Vec<_>>().join(" ");
        let states: u64 = modes.iter().map(|&(_, ell)| 2 * ell as u64 + 1).sum();
        let formula = shell_degeneracy(principal);
        if states != formula {
            mismatches.push(principal);
        }
        table.push(vec![principal.into(), label.into(), states.into(), formula.into(), (states != formula).into()]);
    }
    let mut report = Report::new("degeneracy", config(params, json!({ "n_max": n_max })), table);
    if !mismatches.is_empty() {
        report.failure = Some(format!("state count differs from (N+1)(N+2)/2 at N = {mismatches:?}"));
    }
    report
}

pub struct GreensProbe {
    pub ell: Option<usize>,
    pub energy_sq: f64,
    pub x: f64,
    pub x2: f64,
    pub n_max: usize,
    pub pole_guard: f64,
}

pub fn greens(params: &OscillatorParams, probe: &GreensProbe, quad_count: QuadCount) -> Result<Report, CliError> {
    let query = GreensQuery::new(probe.energy_sq, probe.n_max, probe.pole_guard)?;
    let n_max = probe.n_max;
    let (value, deviation, count) = match probe.ell {
        None => {
            let value = greens_1d(params, &query, probe.x, probe.x2)?;
            let count = quad_count.0.unwrap_or_else(|| auto_quadrature_count_1d(n_max));
            let source = |x: f64| greens_1d(params, &query, x, probe.x2).unwrap_or(f64::NAN);
            let proj = project_1d(params, n_max, source, &gauss_hermite(count)?)?;
            let expected = |k: usize| eigenfunction_1d(params, k, probe.x2) / (probe.energy_sq - energy_sq_1d(params, k));
            (value, max_deviation(&proj.coefficients, expected), count)
        }
        Some(ell) => {
            if probe.x < 0.0 || probe.x2 < 0.0 {
                return Err(CliError::Usage("radial points must be non-negative".into()));
            }
            let value = greens_3d_partial_wave(params, ell, &query, probe.x, probe.x2)?;
            let count = quad_count.0.unwrap_or_else(|| auto_quadrature_count_radial(n_max));
            let source = |r: f64| greens_3d_partial_wave(params, ell, &query, r, probe.x2).unwrap_or(f64::NAN);
            let proj = project_radial(params, ell, n_max, source, &gauss_laguerre(count, ell as f64 + 0.5)?)?;
            let expected = |k: usize| {
                radial_eigenfunction(params, k, ell, probe.x2) / (probe.energy_sq - energy_sq_3d(params, 2 * k + ell))
            };
            (value, max_deviation(&proj.coefficients, expected), count)
        }
    };
    let mut table = Table::new(&[
        "dimension",
        "ell",
        "energy_sq",
        "x",
        "x2",
        "n_max",
        "greens",
        "max_coefficient_deviation",
        "quadrature_count",
    ]);
    table.push(vec![
        dimension_name(probe.ell).into(),
        probe.ell.unwrap_or(0).into(),
        probe.energy_sq.into(),
        probe.x.into(),
        probe.x2.into(),
        n_max.into(),
        value.into(),
        deviation.into(),
        count.into(),
    ]);
    let cfg = config(
        params,
        json!({
            "dimension": dimension_name(probe.ell),
            "ell": probe.ell,
            "energy_sq": probe.energy_sq,
            "x": probe.x,
            "x2": probe.x2,
            "n_max": n_max,
            "pole_guard": probe.pole_guard,
            "quad_count": quad_count.0,
        }),
    );
    let mut report = Report::new("greens", cfg, table);
    if !(deviation <= COEFFICIENT_TOL) {
        report.failure = Some(format!("coefficient identity off by {deviation:e} (tolerance {COEFFICIENT_TOL:e})"));
    }
    Ok(report)
}

/// max_k |c_k - expected_k| / max(1, |expected_k|).
fn max_deviation(coefficients: &[f64], expected: impl Fn(usize) -> f64) -> f64 {
    coefficients
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let e = expected(k);
            (c - e).abs() / e.abs().max(1.0)
        })
        .fold(0.0, f64::max)
}
