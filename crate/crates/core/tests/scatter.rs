#![allow(clippy::excessive_precision)]

use std::f64::consts::{FRAC_PI_4, PI};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use zeta_kkr::scatter::*;
use zeta_kkr::specfun::{gamma_phase_ratio, phase_turning_point};
use zeta_kkr::Error;

/// W(a, 0) and W′(a, 0) from a 30-digit parabolic-cylinder reference.
const W_REFERENCE: [(f64, f64, f64); 5] = [
    (0.5, 0.8771749988445534643, -0.57001168599038735473),
    (1.0, 0.73148109024543072148, -0.68354466939430674636),
    (2.0, 0.60027462289575187385, -0.83295208714301036553),
    (5.0, 0.47347857648660443349, -1.0560139884473651695),
    (10.0, 0.3977604382523928027, -1.257038035750384625),
];

#[test]
fn w_initial_values_match_reference() {
    for (a, w, dw) in W_REFERENCE {
        let (ours, dours) = w_initial_values(a);
        assert!((ours - w).abs() < 1e-13 && (dours - dw).abs() < 1e-13, "a = {a}");
    }
}

#[test]
fn solutions_satisfy_the_equation() {
    for (e, ic) in [
        (0.0, InitialCondition::Even),
        (2.0, InitialCondition::Odd),
        (7.5, InitialCondition::WFunction),
        (20.0, InitialCondition::Even),
    ] {
        let s = integrate_iho(e, 30.0, ic).unwrap();
        assert!(s.max_ode_residual() < 1e-9, "{e} {ic:?}");
    }
}

#[test]
fn far_field_amplitude_decays_like_inverse_root() {
    let s = integrate_iho(2.0, 30.0, InitialCondition::Odd).unwrap();
    let envelope = |lo: f64, hi: f64| {
        s.xi_grid
            .iter()
            .zip(&s.values)
            .filter(|(x, _)| (lo..=hi).contains(*x))
            .map(|(x, v)| (v * x.sqrt()).abs())
            .fold(0.0, f64::max)
    };
    let (near, far) = (envelope(20.0, 22.0), envelope(28.0, 30.0));
    assert!((near / far - 1.0).abs() < 0.01, "{near} vs {far}");
}

#[test]
fn adiabatic_invariant_is_flat() {
    let s = integrate_iho(5.0, 30.0, InitialCondition::Even).unwrap();
    let inv: Vec<f64> = s
        .xi_grid
        .iter()
        .enumerate()
        .filter(|(_, x)| (25.0..=30.0).contains(*x))
        .map(|(i, x)| {
            let q = x * x - 10.0;
            (s.derivatives[i].powi(2) + q * s.values[i].powi(2)) / q.sqrt()
        })
        .collect();
    let (lo, hi) = inv.iter().fold((f64::MAX, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    assert!((hi - lo) / lo < 0.01);
}

#[test]
fn fits_on_real_solutions() {
    for e in [0.0, 0.7, 2.0, 5.0, 12.0] {
        for ic in [InitialCondition::Even, InitialCondition::Odd] {
            let s = integrate_iho(e, 30.0, ic).unwrap();
            let a = fit_asymptotic(&s, (20.0, 28.0)).unwrap();
            let b = fit_asymptotic(&s, (22.0, 30.0)).unwrap();
            assert!(a.conjugacy_defect() < 1e-8);
            assert!((a.c2.norm() - a.c1.norm()).abs() < 1e-8 * a.c1.norm());
            assert!(a.residual_rms < 1e-6, "{e} {ic:?}: {}", a.residual_rms);
            assert!((a.ratio_phase() - b.ratio_phase()).abs() < 1e-5);
            assert!((a.c1 - b.c1).norm() < 1e-5 * a.c1.norm());
        }
    }
}

#[test]
fn w_phase_law() {
    for e in [1.0, 2.0, 5.0] {
        let r = verify_w_phase(e, 40.0).unwrap();
        assert!(r.gap < 1e-3, "Ê = {e}: gap {}", r.gap);
        assert!(r.fit.conjugacy_defect() < 1e-8 && r.fit.residual_rms < 1e-6);
    }
    assert!(matches!(verify_w_phase(50.0, 40.0), Err(Error::Domain { .. })));
}

#[test]
fn analytic_phase_properties() {
    assert!((analytic_phase(0.0, 0.0) - FRAC_PI_4).abs() < 1e-15);
    let big = analytic_phase(1000.0, 0.0);
    let stirling = FRAC_PI_4 + 2.0 * (1000.0 * 1000f64.ln() - 1000.0);
    assert!((big - stirling).abs() < 1e-3);
    for e in [0.3, 4.0, 77.0] {
        assert!((analytic_phase(e, 1.0 + 2.0 * PI) - analytic_phase(e, 1.0) - 2.0 * PI).abs() < 1e-12);
    }
}

fn problem(m: u32, theta: f64, n_max: i64) -> QuantizationProblem {
    QuantizationProblem { m, theta, n_range: -5..=n_max }
}

#[test]
fn quantization_residuals_and_order() {
    let p = problem(1, 1.5 * PI, 120);
    let q = krein_quantization(&p).unwrap();
    assert!(!q.below_domain.is_empty());
    for l in &q.levels {
        assert!(p.residual(l.n, l.e_hat).abs() < 1e-9);
        let count = (1.5 * PI + FRAC_PI_4 + gamma_phase_ratio(l.e_hat, 0.5)) / (2.0 * PI);
        assert!((count - l.n as f64).abs() < 1e-9);
        assert!(l.e_hat > phase_turning_point());
    }
    assert!(q.levels.windows(2).all(|w| w[0].e_hat < w[1].e_hat && w[0].n + 1 == w[1].n));
}

#[test]
fn quantization_spacing_follows_asymptote() {
    let q = krein_quantization(&problem(3, 0.0, 400)).unwrap();
    let tail = &q.levels[q.levels.len() - 2..];
    let gap = tail[1].e_hat - tail[0].e_hat;
    let mid = 0.5 * (tail[0].e_hat + tail[1].e_hat);
    let predicted = 2.0 * PI / (3.0 * 2.0 * mid.ln());
    assert!(((gap - predicted) / predicted).abs() < 0.05);
}

#[test]
fn doubled_chain_contains_single_chain() {
    let one = krein_quantization(&problem(1, 0.4, 60)).unwrap();
    let two = krein_quantization(&problem(2, 0.4, 120)).unwrap();
    for l in &one.levels {
        let twin = two.levels.iter().find(|t| t.n == 2 * l.n).expect("even index present");
        assert!((twin.e_hat - l.e_hat).abs() < 1e-9);
    }
}

#[test]
fn determinant_roots_equal_quantization_roots() {
    for theta in [1.5 * PI, 0.0, 2.2] {
        let q = krein_quantization(&problem(1, theta, 200)).unwrap();
        let krein: Vec<f64> = q.levels.iter().map(|l| l.e_hat).filter(|&e| e <= 50.0).collect();
        let det = kkr_det_roots(0.0, 50.0, theta).unwrap();
        assert_eq!(krein.len(), det.len(), "ϑ = {theta}");
        for (a, b) in krein.iter().zip(&det) {
            assert!((a - b).abs() < 1e-9);
            assert!(kkr_det(*b, theta + FRAC_PI_4).norm() < 1e-9);
        }
    }
}

#[test]
fn determinant_at_origin_vanishes() {
    assert_eq!(kkr_det(0.0, 0.0).norm(), 0.0);
}

#[test]
fn physical_t_is_not_unimodular() {
    let t = physical_t_matrix(10.0, 0.3);
    let delta = 0.5 * analytic_phase(10.0, 0.3);
    assert!((t.norm() - 10f64.sqrt() * delta.sin().abs()).abs() < 1e-12);
}

fn kp(p: f64, points: usize) -> KronigPenneyParams {
    KronigPenneyParams::uniform(1.0, p, points).unwrap()
}

#[test]
fn kp_det_root_matches_transfer_matrix() {
    let params = kp(3.0, 2);
    let bands = kp_bands(&params, 1).unwrap();
    for pt in &bands.bands {
        let tm = transfer_matrix_band(&params, pt.k, 1).unwrap();
        assert!((pt.e - tm).abs() < 1e-10, "k = {}", pt.k);
        let u = pt.e.sqrt();
        assert!(((pt.k).cos() - (u.cos() + 3.0 * u.sin() / u)).abs() < 1e-10);
    }
}

#[test]
fn free_limit_is_exact() {
    let params = kp(0.0, 33);
    let bands = kp_bands(&params, 4).unwrap();
    for pt in &bands.bands {
        let j = ((pt.band_index) / 2) as f64;
        let u = if pt.band_index % 2 == 1 { 2.0 * PI * j + pt.k } else { 2.0 * PI * j - pt.k };
        assert_eq!(pt.e, u * u);
        assert!(kp_det(pt.e.max(1e-300), pt.k, &params).unwrap().abs() < 1e-12);
    }
}

#[test]
fn bands_match_oracle_for_several_strengths() {
    for p in [0.5, 3.0, 10.0] {
        let params = kp(p, 64);
        let bands = kp_bands(&params, 3).unwrap();
        assert!(bands.transfer_matrix_deviation(&params).unwrap() < 1e-10, "P = {p}");
        for w in bands.bands.chunks(3) {
            assert!(w[0].e < w[1].e && w[1].e < w[2].e);
        }
    }
}

#[test]
fn gaps_grow_with_strength() {
    let gaps = |p: f64| {
        let params = kp(p, 2);
        let b = kp_bands(&params, 4).unwrap().bands;
        // k = 0 samples are b[0..4], k = π samples are b[4..8]
        vec![b[5].e - b[4].e, b[2].e - b[1].e, b[7].e - b[6].e]
    };
    let (weak, strong) = (gaps(3.0), gaps(6.0));
    for (w, s) in weak.iter().zip(&strong) {
        assert!(*w > 0.0 && s > w);
    }
    let first = kp(3.0, 2);
    let tm_gap = transfer_matrix_band(&first, PI, 2).unwrap() - transfer_matrix_band(&first, PI, 1).unwrap();
    assert!((weak[0] - tm_gap).abs() < 1e-10);
}

#[test]
fn lloyd_count_matches_band_counting() {
    let params = kp(3.0, 256);
    let bands = kp_bands(&params, 8).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let e = rng.gen_range(0.5..300.0);
        let lloyd = lloyd_integrated_dos(&params, e).unwrap();
        let counted = bands.counting_measure(e);
        assert!((lloyd.integrated - counted).abs() <= 2.0 / 256.0, "E = {e}");
        assert!((lloyd.free_count + lloyd.phase_shift / PI - lloyd.integrated).abs() < 1e-12);
    }
    let midgap = lloyd_integrated_dos(&params, 12.0).unwrap();
    assert!(midgap.in_gap && (midgap.integrated - 1.0).abs() < 1e-6);
}

#[test]
fn lloyd_free_limit() {
    let params = kp(0.0, 8);
    for e in [0.3, 7.0, 55.5] {
        let d = lloyd_integrated_dos(&params, e).unwrap();
        assert_eq!(d.integrated, e.sqrt() / PI);
        assert_eq!(d.phase_shift, 0.0);
    }
}

#[test]
fn lloyd_refuses_band_edges() {
    let params = kp(3.0, 8);
    let edge = transfer_matrix_band(&params, PI, 1).unwrap();
    assert!(matches!(lloyd_integrated_dos(&params, edge), Err(Error::NearPole { .. })));
}

proptest! {
    #[test]
    fn determinant_modulus_identity(e in 0.0f64..200.0, theta in -10.0f64..10.0) {
        let det = kkr_det(e, theta);
        let expected = 2.0 * ((gamma_phase_ratio(e, 0.5) + theta) / 2.0).sin().abs();
        prop_assert!((det.norm() - expected).abs() < 1e-12);
    }
}
