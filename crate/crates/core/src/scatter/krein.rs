use std::f64::consts::{FRAC_PI_4, PI};
use std::ops::RangeInclusive;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::iho::analytic_phase;
use crate::error::{Error, Result};
use crate::roots;
use crate::specfun::{gamma_phase_ratio, phase_turning_point};

const TWO_PI: f64 = 2.0 * PI;

/// Root-scan step in Ê for the determinant. The phase advances by about
/// 2 ln Ê per unit, so this stays well under one sign change per step.
const DET_SCAN_STEP: f64 = 1e-2;

/// A chain of `m` identical, independent scatterers with phase ϑ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantizationProblem {
    pub m: u32,
    pub theta: f64,
    pub n_range: RangeInclusive<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantizedLevel {
    pub n: i64,
    pub e_hat: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantization {
    pub levels: Vec<QuantizedLevel>,
    /// Indices whose target phase lies below the monotone domain.
    pub below_domain: Vec<i64>,
}

impl QuantizationProblem {
    /// m(ϑ + π/4) + m·phase(Ê) − 2nπ.
    pub fn residual(&self, n: i64, e_hat: f64) -> f64 {
        let m = f64::from(self.m);
        m * analytic_phase(e_hat, self.theta) - TWO_PI * n as f64
    }
}

/// Solves m(ϑ + π/4) + m·Im ln[Γ(1/2 + iÊ)/Γ(1/2 − iÊ)] = 2nπ for each n on
/// Ê > Ê*, where the phase is increasing.
pub fn krein_quantization(problem: &QuantizationProblem) -> Result<Quantization> {
    if problem.m == 0 {
        return Err(Error::InvalidParameter {
            name: "m",
            reason: "scatterer count must be at least 1".into(),
        });
    }
    let floor = phase_turning_point();
    let at_floor = problem.residual(0, floor);
    let solved: Vec<(i64, Option<f64>)> = problem
        .n_range
        .clone()
        .into_par_iter()
        .map(|n| {
            let target = TWO_PI * n as f64;
            if at_floor >= target {
                return Ok((n, None));
            }
            let m = f64::from(problem.m);
            let root = roots::solve_increasing(
                |e| m * analytic_phase(e, problem.theta),
                floor,
                2.0 * floor,
                target,
                0.0,
                "Krein quantization",
            )?;
            Ok((n, Some(root)))
        })
        .collect::<Result<_>>()?;
    let mut levels = Vec::new();
    let mut below_domain = Vec::new();
    for (n, root) in solved {
        match root {
            Some(e_hat) => levels.push(QuantizedLevel { n, e_hat }),
            None => below_domain.push(n),
        }
    }
    Ok(Quantization { levels, below_domain })
}

/// The 1×1 determinant t′⁻¹ − G′ with t′ = e^{iϑ} and
/// G′ = Γ(1/2 + iÊ)/Γ(1/2 − iÊ).
///
/// ```
/// use zeta_kkr::scatter::kkr_det;
///
/// assert!(kkr_det(0.0, 0.0).norm() < 1e-15);
/// ```
pub fn kkr_det(e_hat: f64, theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, -theta) - Complex64::from_polar(1.0, gamma_phase_ratio(e_hat, 0.5))
}

/// Zeros of the determinant on `(max(lo, Ê*), hi]`, with the scatterer phase
/// factor carrying the far-field e^{iπ/4}: t′ = e^{i(ϑ + π/4)}.
///
/// The zeros are located where t′G′ crosses the positive real axis, i.e. the
/// sign changes of Im(t′G′) with Re(t′G′) > 0, and refined by bisection.
pub fn kkr_det_roots(lo: f64, hi: f64, theta: f64) -> Result<Vec<f64>> {
    let floor = phase_turning_point().max(lo);
    if !(hi > floor) || !hi.is_finite() {
        return Err(Error::domain("e_hat range", hi, format!("upper end > {floor}")));
    }
    let shifted = theta + FRAC_PI_4;
    let loop_value = |e: f64| Complex64::from_polar(1.0, shifted) * Complex64::from_polar(1.0, gamma_phase_ratio(e, 0.5));
    let steps = ((hi - floor) / DET_SCAN_STEP).ceil() as usize;
    let node = |i: usize| if i == steps { hi } else { floor + i as f64 * DET_SCAN_STEP };
    let hits: Vec<Option<f64>> = (0..steps)
        .into_par_iter()
        .map(|i| {
            let (a, b) = (node(i), node(i + 1));
            let (va, vb) = (loop_value(a), loop_value(b));
            if va.im < 0.0 && vb.im >= 0.0 && va.re > 0.0 && vb.re > 0.0 {
                if vb.im == 0.0 {
                    return Ok(Some(b));
                }
                roots::bisect_with_sign(|e| loop_value(e).im, a, b, false, 0.0, 200, "determinant root").map(Some)
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}

/// t′ = −√Ê sin δ e^{iδ} with 2δ = analytic_phase(Ê, ϑ).
///
/// Its modulus is not one, so it is not used by the determinant.
pub fn physical_t_matrix(e_hat: f64, theta: f64) -> Complex64 {
    let delta = 0.5 * analytic_phase(e_hat, theta);
    Complex64::from_polar(-e_hat.sqrt() * delta.sin(), delta)
}
