use kgo_core::greens::{greens_1d, greens_3d_partial_wave, greens_terms_1d, tail_decay_onset};
use kgo_core::kgo1d::{eigenfunction_1d, energy_sq_1d};
use kgo_core::kgo3d::{energy_sq_3d, full_eigenfunction, radial_eigenfunction};
use kgo_core::special::legendre_p;
use kgo_core::{AngularPoint, Branch, GreensQuery, KgoError, Mode3D, OscillatorParams, Point3, RadialMode};
use num_complex::Complex64;
use std::f64::consts::PI;

fn unit() -> OscillatorParams {
    OscillatorParams::new(1.0, 1.0).unwrap()
}

/// Value at h = 0 of the interpolating polynomial through (h_i, y_i)
/// (Neville's scheme).
fn extrapolate_to_zero(h: &[f64], y: &[f64]) -> f64 {
    let mut t = y.to_vec();
    for level in 1..t.len() {
        for i in (level..t.len()).rev() {
            let (hi, hj) = (h[i], h[i - level]);
            t[i] = (hi * t[i - 1] - hj * t[i]) / (hi - hj);
        }
    }
    t[t.len() - 1]
}

#[test]
fn neville_recovers_polynomials() {
    let h = [0.4, 0.2, 0.1, 0.05];
    let y: Vec<f64> = h.iter().map(|x| 3.0 - 2.0 * x + 0.5 * x * x * x).collect();
    assert!((extrapolate_to_zero(&h, &y) - 3.0).abs() < 1e-13);
}

#[test]
fn residue_at_a_1d_level() {
    let p = OscillatorParams::new(1.2, 0.9).unwrap();
    let (x, x2) = (0.4, -0.7);
    for level in [0usize, 3, 6] {
        let e_sq = energy_sq_1d(&p, level);
        let h = [1e-2, 5e-3, 2.5e-3, 1.25e-3];
        let y: Vec<f64> = h
            .iter()
            .map(|&d| {
                let q = GreensQuery::new(e_sq + d, 12, 1e-9).unwrap();
                d * greens_1d(&p, &q, x, x2).unwrap()
            })
            .collect();
        let residue = extrapolate_to_zero(&h, &y);
        let expected = eigenfunction_1d(&p, level, x) * eigenfunction_1d(&p, level, x2);
        assert!((residue - expected).abs() < 1e-6, "n={level}: {residue} vs {expected}");
    }
}

#[test]
fn residue_at_a_radial_level() {
    let p = unit();
    let (r, r2) = (0.8, 1.9);
    for (n_r, ell) in [(0usize, 0usize), (1, 2), (3, 1)] {
        let e_sq = energy_sq_3d(&p, 2 * n_r + ell);
        let h = [1e-2, 5e-3, 2.5e-3, 1.25e-3];
        let y: Vec<f64> = h
            .iter()
            .map(|&d| {
                let q = GreensQuery::new(e_sq - d, 10, 1e-9).unwrap();
                -d * greens_3d_partial_wave(&p, ell, &q, r, r2).unwrap()
            })
            .collect();
        let residue = extrapolate_to_zero(&h, &y);
        let expected = radial_eigenfunction(&p, n_r, ell, r) * radial_eigenfunction(&p, n_r, ell, r2);
        assert!((residue - expected).abs() < 1e-6, "n_r={n_r} l={ell}: {residue} vs {expected}");
    }
}

#[test]
fn single_term_truncation() {
    let p = unit();
    let q = GreensQuery::new(0.3, 0, 1e-6).unwrap();
    let g = greens_1d(&p, &q, 0.2, 0.5).unwrap();
    let expected = eigenfunction_1d(&p, 0, 0.2) * eigenfunction_1d(&p, 0, 0.5) / (0.3 - 1.0);
    assert!((g - expected).abs() < 1e-15);
    let g = greens_3d_partial_wave(&p, 0, &q, 0.2, 0.5).unwrap();
    let expected = radial_eigenfunction(&p, 0, 0, 0.2) * radial_eigenfunction(&p, 0, 0, 0.5) / (0.3 - 1.0);
    assert!((g - expected).abs() < 1e-15);
}

#[test]
fn below_the_spectrum_every_term_is_negative() {
    let p = unit();
    let q = GreensQuery::new(0.5, 30, 1e-6).unwrap();
    for x in [-2.0, 0.0, 0.3, 1.7] {
        let terms = greens_terms_1d(&p, &q, x, x).unwrap();
        assert!(terms.iter().all(|t| *t <= 0.0));
        assert!(greens_1d(&p, &q, x, x).unwrap() < 0.0);
    }
}

#[test]
fn pole_guard_names_the_level() {
    let p = unit();
    // E_3^2 = 7, E_4^2 = 9
    let q = GreensQuery::new(7.0 + 1e-4, 10, 1e-3).unwrap();
    assert!(matches!(greens_1d(&p, &q, 0.0, 0.1), Err(KgoError::PoleProximity1d { n: 3 })));
    let q = GreensQuery::new(9.0 - 1e-4, 10, 1e-3).unwrap();
    assert!(matches!(
        greens_3d_partial_wave(&p, 0, &q, 0.5, 0.1),
        Err(KgoError::PoleProximityRadial { n_r: 2, ell: 0 })
    ));
}

#[test]
fn full_3d_sum_from_partial_waves() {
    // sum_{n_r, l, m} Psi(r) Psi*(r') / (E^2 - E_N^2)
    //   = sum_l (2l+1)/(4 pi) P_l(cos gamma) G_l(r, r') / (r r')
    let p = unit();
    let (n_r_max, ell_max) = (4usize, 5usize);
    let probe = 2.2;
    let a = Point3::new(0.9, AngularPoint::new(0.7, 1.1).unwrap()).unwrap();
    let b = Point3::new(1.4, AngularPoint::new(2.0, 4.0).unwrap()).unwrap();
    let mut direct = Complex64::new(0.0, 0.0);
    for ell in 0..=ell_max {
        for n_r in 0..=n_r_max {
            let d = probe - energy_sq_3d(&p, 2 * n_r + ell);
            for m in -(ell as i64)..=(ell as i64) {
                let mode = Mode3D::new(RadialMode::new(n_r, ell, Branch::Positive), m).unwrap();
                let pa = full_eigenfunction(&p, &mode, &a).unwrap();
                let pb = full_eigenfunction(&p, &mode, &b).unwrap();
                direct += pa * pb.conj() / d;
            }
        }
    }
    let q = GreensQuery::new(probe, n_r_max, 1e-6).unwrap();
    let c = a.angular().cos_angle_to(&b.angular());
    let assembled: f64 = (0..=ell_max)
        .map(|ell| {
            let g = greens_3d_partial_wave(&p, ell, &q, a.r(), b.r()).unwrap();
            (2 * ell + 1) as f64 / (4.0 * PI) * legendre_p(ell, c) * g / (a.r() * b.r())
        })
        .sum();
    assert!(direct.im.abs() < 1e-14);
    assert!((direct.re - assembled).abs() < 1e-13, "{} vs {assembled}", direct.re);
}

#[test]
fn tail_onset_on_a_known_sequence() {
    // every term from n = 7 on is below the one four places earlier
    let terms: Vec<f64> = (0..30)
        .map(|n| if n == 6 { 5.0 } else { 1.0 / (1.0 + n as f64) })
        .collect();
    assert_eq!(tail_decay_onset(&terms, 4), Some(7));
    assert_eq!(tail_decay_onset(&terms[..3], 4), None);
    assert_eq!(tail_decay_onset(&terms, 0), None);
}

#[test]
fn tail_envelope_decays() {
    let p = unit();
    let q = GreensQuery::new(2.0, 60, 1e-6).unwrap();
    for (x, x2) in [(0.3, 0.5), (1.0, -1.5), (2.5, 2.0)] {
        let terms = greens_terms_1d(&p, &q, x, x2).unwrap();
        let envelope = |s: &[f64]| s.iter().map(|t| t.abs()).fold(0.0, f64::max);
        let (head, tail) = (envelope(&terms[..20]), envelope(&terms[41..]));
        println!("x={x} x'={x2}: head {head:.2e}, tail {tail:.2e}, onset {:?}", tail_decay_onset(&terms, 4));
        assert!(tail < head);
    }
}
