use std::f64::consts::{E, PI};
use std::sync::OnceLock;

use proptest::prelude::*;
use zeta_kkr::countmodels::*;
use zeta_kkr::zeroscan::{find_zeros, ScanConfig, ZeroCatalog};
use zeta_kkr::Error;

fn catalog() -> &'static ZeroCatalog {
    static CAT: OnceLock<ZeroCatalog> = OnceLock::new();
    CAT.get_or_init(|| find_zeros(&ScanConfig::with_range(0.0, 1000.0)).unwrap())
}

fn model(id: ModelId) -> CountingModel {
    CountingModel::new(id)
}

#[test]
fn table_values_at_one_hundred() {
    let polya = model(ModelId::Polya).smooth_count(100.0).unwrap();
    let direct = 0.875 + 100.0 / (2.0 * PI) * (100.0 / (2.0 * PI * E)).ln();
    assert!((polya - direct).abs() < 1e-13);
    assert!((polya - 29.0).abs() < 0.2);

    let kkr = model(ModelId::KkrGamma).with_exact_gamma(false).smooth_count(100.0).unwrap();
    assert!((kkr - 47.22).abs() < 0.01, "{kkr}");
    let exact = model(ModelId::KkrGamma).smooth_count(100.0).unwrap();
    assert!((exact - 47.22).abs() < 0.05);
    assert!((exact / 29.0 - 1.63).abs() < 0.05);
}

#[test]
fn kkr_gamma_exact_tracks_asymptote() {
    let m = model(ModelId::KkrGamma);
    let d = m.smooth_count(1000.0).unwrap() - m.with_exact_gamma(false).smooth_count(1000.0).unwrap();
    assert!(d.abs() < 1e-3);
}

#[test]
fn first_estimates() {
    let rs = model(ModelId::RiemannSiegelSmooth).estimate_zero(1).unwrap();
    assert!((rs - 14.52).abs() < 0.01, "{rs}");
    let polya = model(ModelId::Polya).estimate_zero(1).unwrap();
    assert!((polya - 14.5).abs() < 0.1);
    let tenth = model(ModelId::Polya).estimate_zero(10).unwrap();
    assert!((tenth - 50.2).abs() < 0.1, "{tenth}");
}

#[test]
fn estimates_hit_half_integer_counts() {
    for id in ModelId::ALL {
        let m = model(id);
        for n in [2, 5, 30, 400] {
            let e = m.estimate_zero(n).unwrap();
            assert!((m.smooth_count(e).unwrap() - (n as f64 - 0.5)).abs() < 1e-8, "{id} n = {n}");
        }
    }
}

#[test]
fn two_term_residual_vanishes() {
    for id in ModelId::ALL {
        for theta in [0.0, 0.3, -1.1] {
            let m = model(id).with_theta(if id == ModelId::KkrGamma { 1.5 * PI + theta } else { theta });
            for n in 2..60 {
                let e = m.estimate_zero(n).unwrap();
                let r = m.two_term_residual(n, e).unwrap();
                assert!(r.abs() < 1e-8, "{id} n = {n}: {r}");
            }
        }
    }
}

#[test]
fn comparisons_against_scan() {
    let rs = compare_catalog(&model(ModelId::RiemannSiegelSmooth), catalog(), 29).unwrap();
    assert!(rs.mae < 0.5, "{}", rs.mae);
    assert_eq!(rs.entries.len(), 29);
    assert!(rs.entries.windows(2).all(|w| w[0].n < w[1].n));
    let polya = compare_catalog(&model(ModelId::Polya), catalog(), 29).unwrap();
    assert!(polya.mae < 0.6);
    let mean = polya.entries.iter().map(|e| e.error.abs()).sum::<f64>() / 29.0;
    assert_eq!(polya.mae, mean);
    let kkr = compare_catalog(&model(ModelId::KkrGamma), catalog(), 29).unwrap();
    assert!(kkr.mae > 5.0);
    assert_eq!(kkr.skipped, vec![1]);
    assert!(kkr.mean_spacing_estimate.unwrap() < kkr.mean_spacing_actual.unwrap());
}

#[test]
fn comparison_needs_enough_zeros() {
    let err = compare_catalog(&model(ModelId::Polya), catalog(), 10_000).unwrap_err();
    assert!(matches!(err, Error::InsufficientCatalog { available: 649, required: 10_000 }));
}

#[test]
fn smooth_counts_increase_on_their_domains() {
    for id in ModelId::ALL {
        let m = model(id);
        let mut e = m.domain_min() + 1e-3;
        let mut prev = m.smooth_count(e).unwrap();
        while e < 2000.0 {
            e += 0.01 * e.sqrt();
            let v = m.smooth_count(e).unwrap();
            assert!(v > prev, "{id} at {e}");
            prev = v;
        }
    }
}

#[test]
fn polya_approaches_riemann_siegel() {
    let (polya, rs) = (model(ModelId::Polya), model(ModelId::RiemannSiegelSmooth));
    let mut prev = f64::INFINITY;
    for e in [100.0, 200.0, 500.0, 1000.0, 5000.0, 1e5] {
        let d = (polya.smooth_count(e).unwrap() - rs.smooth_count(e).unwrap()).abs();
        assert!(d < 1e-3 && d < prev, "E = {e}: {d}");
        prev = d;
    }
}

#[test]
fn theta_shift_moves_estimates_as_predicted() {
    let dtheta = 1e-4;
    for id in [ModelId::LeclairMussardo, ModelId::Sierra] {
        let m = model(id);
        for n in [5, 20, 100] {
            let e0 = m.estimate_zero(n).unwrap();
            let e1 = m.with_theta(dtheta).estimate_zero(n).unwrap();
            let predicted = -m.theta_sensitivity() * dtheta / m.count_derivative(e0).unwrap();
            assert!(((e1 - e0) - predicted).abs() < 1e-3 * predicted.abs() + 2e-9, "{id} n = {n}");
        }
    }
}

#[test]
fn ratio_scan_values() {
    let r = ratio_scan(&[1e2, 1e6, 1e12]).unwrap();
    for (p, want) in r.iter().zip([0.607, 0.906, 0.956]) {
        assert!((p.ratio - want).abs() < 1e-3, "{p:?}");
    }
    assert!(matches!(ratio_scan(&[15.0]), Err(Error::Domain { .. })));
}

proptest! {
    #[test]
    fn ratios_increase_toward_one(mut es in proptest::collection::vec(18.0f64..1e15, 2..30)) {
        es.sort_by(f64::total_cmp);
        es.dedup();
        let r = ratio_scan(&es).unwrap();
        prop_assert!(r.iter().all(|p| p.ratio < 1.0));
        prop_assert!(r.windows(2).all(|w| w[0].ratio < w[1].ratio));
    }
}
