use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::ln_gamma_right;
use crate::error::{Error, Result};
use crate::roots;

/// Smallest height accepted by [`theta_series`].
pub const THETA_SERIES_MIN_HEIGHT: f64 = 10.0;

/// Riemann–Siegel theta through the gamma function:
/// θ(t) = Im ln Γ(1/4 + it/2) − (t/2) ln π.
///
/// Odd in `t`; negative heights are accepted so the symmetry can be checked.
pub fn theta_exact(t: f64) -> f64 {
    ln_gamma_right(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln()
}

/// The five-term asymptotic expansion
/// θ(t) ≈ (t/2) ln(t/2π) − t/2 − π/8 + 1/(48t) + 7/(5760t³).
///
/// No further terms are added. Rejects `t < 10`, where the expansion is
/// not meant to be used.
pub fn theta_series(t: f64) -> Result<f64> {
    if !(t >= THETA_SERIES_MIN_HEIGHT) {
        return Err(Error::domain("theta_series height", t, "t >= 10"));
    }
    let half = 0.5 * t;
    Ok(half * (t / (2.0 * PI)).ln() - half - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t))
}

/// Im ln[Γ(s0 + it) / Γ(s0 − it)] = 2 Im ln Γ(s0 + it), the gamma-ratio
/// scattering phase, unwrapped (continuous in `t`, zero at `t = 0`).
///
/// # Panics
///
/// If `s0 <= 0`.
pub fn gamma_phase_ratio(t: f64, s0: f64) -> f64 {
    assert!(s0 > 0.0, "gamma_phase_ratio needs s0 > 0, got {s0}");
    2.0 * ln_gamma_right(Complex64::new(s0, t)).im
}

/// Height where θ(t) stops decreasing (θ′ = 0), ≈ 6.2898.
///
/// Smooth counts built on θ are strictly increasing above this point.
pub fn theta_turning_point() -> f64 {
    roots::stationary_point(theta_exact, 3.0, 10.0, "theta turning point")
        .expect("theta' changes sign on [3, 10]")
}

/// Height Ê* where the phase `gamma_phase_ratio(Ê, 1/2)` stops decreasing.
///
/// Root searches over Ê that need a one-to-one phase are restricted to Ê > Ê*.
pub fn phase_turning_point() -> f64 {
    roots::stationary_point(|e| gamma_phase_ratio(e, 0.5), 0.2, 3.0, "phase turning point")
        .expect("phase derivative changes sign on [0.2, 3]")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_vanishes_at_origin() {
        assert_eq!(theta_exact(0.0), 0.0);
    }

    #[test]
    fn series_rejects_small_heights() {
        assert!(matches!(theta_series(5.0), Err(Error::Domain { .. })));
        assert!(theta_series(f64::NAN).is_err());
        assert!(theta_series(10.0).is_ok());
    }

    #[test]
    fn phase_ratio_zero_at_origin() {
        for s0 in [0.25, 0.5, 1.0, 3.0] {
            assert_eq!(gamma_phase_ratio(0.0, s0), 0.0);
        }
    }

    #[test]
    fn turning_points() {
        // frozen from a 40-digit evaluation of theta' and Re digamma(1/2 + iE)
        assert!((theta_turning_point() - 6.289_835_988_836_903).abs() < 1e-8);
        assert!((phase_turning_point() - 1.047_662_675_461_732).abs() < 1e-8);
    }

    #[test]
    #[should_panic]
    fn phase_ratio_requires_positive_s0() {
        gamma_phase_ratio(1.0, 0.0);
    }
}
