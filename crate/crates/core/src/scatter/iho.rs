use std::f64::consts::{FRAC_PI_4, LN_2, SQRT_2};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{gamma_phase_ratio, log_gamma, wrap_pi};

/// Output grid spacing in ξ. Each grid interval is one Taylor step.
pub const GRID_SPACING: f64 = 0.002;
pub const MAX_E_HAT: f64 = 20.0;
pub const MIN_XI_MAX: f64 = 20.0;
/// Smallest ξ a fit window may start at.
pub const MIN_FIT_XI: f64 = 15.0;
pub const MIN_FIT_SAMPLES: usize = 200;
/// Gram-matrix condition number above which a fit is refused.
pub const MAX_FIT_CONDITION: f64 = 1e8;

const MAX_TAYLOR_ORDER: usize = 60;
const MIN_SUBSTEP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialCondition {
    /// φ(0) = 1, φ′(0) = 0
    Even,
    /// φ(0) = 0, φ′(0) = 1
    Odd,
    /// The parabolic cylinder function W(Ê, √2 ξ).
    WFunction,
}

/// A real solution of φ″ + (ξ² − 2Ê)φ = 0 sampled on a uniform grid from ξ = 0.
///
/// The same spectral problem arises from the attractive inverse-square
/// potential −g/Q² with coupling 2g = Ê² + 1/4; only the oscillator form is
/// integrated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IhoSolution {
    pub e_hat: f64,
    pub ic_kind: InitialCondition,
    pub xi_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub derivatives: Vec<f64>,
}

/// W(a, 0) and dW/dx(a, 0) for the parabolic cylinder function W(a, x).
pub fn w_initial_values(a: f64) -> (f64, f64) {
    let quarter = log_gamma(Complex64::new(0.25, 0.5 * a)).expect("Re > 0").re;
    let three_quarter = log_gamma(Complex64::new(0.75, 0.5 * a)).expect("Re > 0").re;
    let half_log_ratio = 0.5 * (quarter - three_quarter);
    let w = (-0.75 * LN_2 + half_log_ratio).exp();
    let dw = -(-0.25 * LN_2 - half_log_ratio).exp();
    (w, dw)
}

/// Integrates the oscillator equation from ξ = 0 to `xi_max`.
///
/// Each grid interval is covered by a Taylor series whose order grows until
/// the tail drops below 1e−17 of the leading terms; intervals where that
/// fails are split in half.
pub fn integrate_iho(e_hat: f64, xi_max: f64, ic_kind: InitialCondition) -> Result<IhoSolution> {
    if !(0.0..=MAX_E_HAT).contains(&e_hat) {
        return Err(Error::domain("e_hat", e_hat, format!("0 <= e_hat <= {MAX_E_HAT}")));
    }
    if !(xi_max >= MIN_XI_MAX) || !xi_max.is_finite() {
        return Err(Error::domain("xi_max", xi_max, format!("finite and >= {MIN_XI_MAX}")));
    }
    let (mut phi, mut dphi) = match ic_kind {
        InitialCondition::Even => (1.0, 0.0),
        InitialCondition::Odd => (0.0, 1.0),
        InitialCondition::WFunction => {
            let (w, dw) = w_initial_values(e_hat);
            (w, SQRT_2 * dw)
        }
    };
    let steps = (xi_max / GRID_SPACING).ceil() as usize;
    let h = xi_max / steps as f64;
    let two_e = 2.0 * e_hat;
    let mut xi_grid = Vec::with_capacity(steps + 1);
    let mut values = Vec::with_capacity(steps + 1);
    let mut derivatives = Vec::with_capacity(steps + 1);
    xi_grid.push(0.0);
    values.push(phi);
    derivatives.push(dphi);
    for i in 0..steps {
        let xi0 = i as f64 * h;
        (phi, dphi) = advance(xi0, phi, dphi, h, two_e)?;
        if !(phi.is_finite() && dphi.is_finite()) {
            return Err(Error::NonFinite("oscillator integration"));
        }
        xi_grid.push((i + 1) as f64 * h);
        values.push(phi);
        derivatives.push(dphi);
    }
    Ok(IhoSolution {
        e_hat,
        ic_kind,
        xi_grid,
        values,
        derivatives,
    })
}

fn advance(xi0: f64, phi: f64, dphi: f64, h: f64, two_e: f64) -> Result<(f64, f64)> {
    if let Some(next) = taylor_step(xi0, phi, dphi, h, two_e) {
        return Ok(next);
    }
    let half = 0.5 * h;
    if half < MIN_SUBSTEP {
        return Err(Error::StepUnderflow(xi0));
    }
    let (p, d) = advance(xi0, phi, dphi, half, two_e)?;
    advance(xi0 + half, p, d, half, two_e)
}

/// One Taylor step about ξ0; `None` if the series has not converged by the
/// maximum order.
fn taylor_step(xi0: f64, phi: f64, dphi: f64, h: f64, two_e: f64) -> Option<(f64, f64)> {
    // φ″ = q φ with q(ξ0 + s) = (2Ê − ξ0²) − 2ξ0 s − s²
    let q0 = two_e - xi0 * xi0;
    let q1 = -2.0 * xi0;
    let mut a = [0.0f64; MAX_TAYLOR_ORDER + 1];
    a[0] = phi;
    a[1] = dphi;
    let mut value = a[0] + a[1] * h;
    let mut slope = a[1];
    let mut largest = a[0].abs().max((a[1] * h).abs());
    let mut hk = h;
    let mut quiet = 0;
    for k in 2..=MAX_TAYLOR_ORDER {
        let m = k - 2;
        let mut rhs = q0 * a[m];
        if m >= 1 {
            rhs += q1 * a[m - 1];
        }
        if m >= 2 {
            rhs -= a[m - 2];
        }
        a[k] = rhs / (k * (k - 1)) as f64;
        slope += k as f64 * a[k] * hk;
        hk *= h;
        let term = a[k] * hk;
        value += term;
        largest = largest.max(term.abs());
        // q is quadratic, so three negligible terms in a row end the series
        if term.abs() <= 1e-17 * largest {
            quiet += 1;
            if quiet == 3 {
                return Some((value, slope));
            }
        } else {
            quiet = 0;
        }
    }
    None
}

impl IhoSolution {
    /// Largest relative ODE residual at interior grid points, with φ″ taken
    /// from an 8th-order central difference of the sampled φ′.
    pub fn max_ode_residual(&self) -> f64 {
        const C: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
        let n = self.xi_grid.len();
        if n < 9 {
            return 0.0;
        }
        let h = self.xi_grid[1] - self.xi_grid[0];
        let d = &self.derivatives;
        let mut worst: f64 = 0.0;
        for i in 4..n - 4 {
            let second = C
                .iter()
                .enumerate()
                .map(|(j, c)| c * (d[i + j + 1] - d[i - j - 1]))
                .sum::<f64>()
                / h;
            let xi = self.xi_grid[i];
            let q = xi * xi - 2.0 * self.e_hat;
            let omega2 = q.abs() + 1.0;
            let amplitude = (self.values[i].powi(2) + d[i].powi(2) / omega2).sqrt();
            if amplitude == 0.0 {
                continue;
            }
            worst = worst.max((second + q * self.values[i]).abs() / (omega2 * amplitude));
        }
        worst
    }

    fn window_range(&self, window: (f64, f64)) -> Result<std::ops::Range<usize>> {
        let (lo, hi) = window;
        let last = *self.xi_grid.last().expect("non-empty grid");
        if !(lo >= MIN_FIT_XI && hi > lo && hi <= last + 1e-12) {
            return Err(Error::InvalidParameter {
                name: "window",
                reason: format!("[{lo}, {hi}] must satisfy {MIN_FIT_XI} <= lo < hi <= {last}"),
            });
        }
        let start = self.xi_grid.partition_point(|&x| x < lo);
        let end = self.xi_grid.partition_point(|&x| x <= hi + 1e-12);
        if end - start < MIN_FIT_SAMPLES {
            return Err(Error::InvalidParameter {
                name: "window",
                reason: format!("{} samples, need at least {MIN_FIT_SAMPLES}", end - start),
            });
        }
        Ok(start..end)
    }
}

/// Outgoing far-field solution ξ^{−1/2} e^{i(ξ²/2 − Ê ln(√2 ξ))} w(ξ), where
/// w = 1 + O(ξ⁻²) is the asymptotic series that makes it an exact solution.
pub fn outgoing_wave(e_hat: f64, xi: f64) -> Complex64 {
    let mu = Complex64::new(-0.5, -e_hat);
    let inv_xi2 = 1.0 / (xi * xi);
    let denom_unit = Complex64::new(0.0, 4.0);
    let mut b = Complex64::new(1.0, 0.0);
    let mut power = 1.0;
    let mut w = b;
    let mut previous = f64::INFINITY;
    for k in 1..400 {
        let kf = k as f64;
        b = b * (mu - 2.0 * kf + 2.0) * (mu - 2.0 * kf + 1.0) / (denom_unit * kf);
        power *= inv_xi2;
        let term = b * power;
        let size = term.norm();
        // asymptotic series: stop once terms are negligible or start growing
        if size > previous {
            break;
        }
        w += term;
        if size < 1e-18 {
            break;
        }
        previous = size;
    }
    let phase = 0.5 * xi * xi - e_hat * (SQRT_2 * xi).ln();
    Complex64::from_polar(xi.powf(-0.5), phase) * w
}

/// Far-field amplitudes of φ ≈ c1·u₊ + c2·u₋ with u₋ = conj(u₊).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticFit {
    pub c1: Complex64,
    pub c2: Complex64,
    pub window: (f64, f64),
    /// RMS misfit divided by the RMS of φ on the window.
    pub residual_rms: f64,
    pub condition: f64,
}

impl AsymptoticFit {
    /// |c2 − conj(c1)| / |c1|; zero for an exactly real solution.
    pub fn conjugacy_defect(&self) -> f64 {
        (self.c2 - self.c1.conj()).norm() / self.c1.norm()
    }

    /// arg c1: the constant phase left after removing ξ²/2 − Ê ln(√2 ξ).
    pub fn phase_offset(&self) -> f64 {
        self.c1.arg()
    }

    /// arg(c2/c1) in (−π, π].
    pub fn ratio_phase(&self) -> f64 {
        wrap_pi(self.c2.arg() - self.c1.arg())
    }
}

/// Least-squares fit of the solution on `window` to the far-field basis.
pub fn fit_asymptotic(sol: &IhoSolution, window: (f64, f64)) -> Result<AsymptoticFit> {
    let range = sol.window_range(window)?;
    let samples: Vec<(Complex64, f64)> = range
        .map(|i| (outgoing_wave(sol.e_hat, sol.xi_grid[i]), sol.values[i]))
        .collect();
    // Hermitian Gram matrix [[g11, g12], [conj g12, g22]] and right-hand side
    let (mut g11, mut g22, mut g12) = (0.0, 0.0, Complex64::new(0.0, 0.0));
    let (mut r1, mut r2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    let mut phi2 = 0.0;
    for &(u, phi) in &samples {
        g11 += u.norm_sqr();
        g22 += u.norm_sqr();
        g12 += u.conj() * u.conj();
        r1 += u.conj() * phi;
        r2 += u * phi;
        phi2 += phi * phi;
    }
    let trace = g11 + g22;
    let det = g11 * g22 - g12.norm_sqr();
    let disc = (0.25 * trace * trace - det).max(0.0).sqrt();
    let (lam_max, lam_min) = (0.5 * trace + disc, 0.5 * trace - disc);
    let condition = if lam_min > 0.0 { lam_max / lam_min } else { f64::INFINITY };
    if !(condition <= MAX_FIT_CONDITION) {
        return Err(Error::IllConditioned(condition));
    }
    let c1 = (r1 * g22 - g12 * r2) / det;
    let c2 = (r2 * g11 - g12.conj() * r1) / det;
    let misfit: f64 = samples
        .iter()
        .map(|&(u, phi)| (phi - (c1 * u + c2 * u.conj()).re).powi(2) + (c1 * u + c2 * u.conj()).im.powi(2))
        .sum();
    let residual_rms = if phi2 > 0.0 { (misfit / phi2).sqrt() } else { 0.0 };
    Ok(AsymptoticFit {
        c1,
        c2,
        window,
        residual_rms,
        condition,
    })
}

/// Window `[xi_max/2, xi_max]` (never starting below the fit minimum).
pub fn default_window(xi_max: f64) -> (f64, f64) {
    ((0.5 * xi_max).max(MIN_FIT_XI), xi_max)
}

/// 2δ = ϑ + π/4 + Im ln[Γ(1/2 + iÊ)/Γ(1/2 − iÊ)], not reduced mod 2π.
pub fn analytic_phase(e_hat: f64, theta: f64) -> f64 {
    theta + FRAC_PI_4 + gamma_phase_ratio(e_hat, 0.5)
}

pub const W_PHASE_MIN_E_HAT: f64 = 0.5;
pub const W_PHASE_MAX_E_HAT: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WPhaseReport {
    pub e_hat: f64,
    pub measured_offset: f64,
    /// π/4 + ½ arg Γ(1/2 + iÊ), reduced to (−π, π].
    pub predicted_offset: f64,
    /// |measured − predicted| reduced to [0, π].
    pub gap: f64,
    pub fit: AsymptoticFit,
    pub ode_residual: f64,
}

/// Integrates W(Ê, √2 ξ) and compares its fitted far-field phase with the
/// gamma-function prediction.
///
/// ```
/// use zeta_kkr::scatter::verify_w_phase;
///
/// let report = verify_w_phase(2.0, 40.0).unwrap();
/// assert!(report.gap < 1e-3);
/// ```
pub fn verify_w_phase(e_hat: f64, xi_max: f64) -> Result<WPhaseReport> {
    if !(W_PHASE_MIN_E_HAT..=W_PHASE_MAX_E_HAT).contains(&e_hat) {
        return Err(Error::domain(
            "e_hat",
            e_hat,
            format!("{W_PHASE_MIN_E_HAT} <= e_hat <= {W_PHASE_MAX_E_HAT}"),
        ));
    }
    let sol = integrate_iho(e_hat, xi_max, InitialCondition::WFunction)?;
    let fit = fit_asymptotic(&sol, default_window(xi_max))?;
    let measured = fit.phase_offset();
    let predicted = wrap_pi(FRAC_PI_4 + 0.25 * gamma_phase_ratio(e_hat, 0.5));
    Ok(WPhaseReport {
        e_hat,
        measured_offset: measured,
        predicted_offset: predicted,
        gap: wrap_pi(measured - predicted).abs(),
        fit,
        ode_residual: sol.max_ode_residual(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preconditions() {
        assert!(integrate_iho(25.0, 30.0, InitialCondition::Even).is_err());
        assert!(integrate_iho(1.0, 10.0, InitialCondition::Even).is_err());
        assert!(integrate_iho(-1.0, 30.0, InitialCondition::Even).is_err());
        assert!(verify_w_phase(50.0, 40.0).is_err());
        assert!(verify_w_phase(0.1, 40.0).is_err());
    }

    #[test]
    fn grid_ends_at_xi_max() {
        let s = integrate_iho(1.0, 20.0, InitialCondition::Odd).unwrap();
        assert_eq!(*s.xi_grid.last().unwrap(), 20.0);
        assert_eq!(s.values.len(), s.xi_grid.len());
        assert_eq!((s.values[0], s.derivatives[0]), (0.0, 1.0));
    }

    #[test]
    fn outgoing_wave_solves_the_equation() {
        // second difference of u₊ against (2Ê − ξ²) u₊
        let (e, xi, h) = (3.0, 18.0, 1e-4);
        let u = |x| outgoing_wave(e, x);
        let second = (u(xi + h) - 2.0 * u(xi) + u(xi - h)) / (h * h);
        let rel = (second + (xi * xi - 2.0 * e) * u(xi)).norm() / ((xi * xi) * u(xi).norm());
        assert!(rel < 1e-6, "{rel}");
    }

    #[test]
    fn window_validation() {
        let s = integrate_iho(1.0, 30.0, InitialCondition::Even).unwrap();
        assert!(fit_asymptotic(&s, (10.0, 30.0)).is_err());
        assert!(fit_asymptotic(&s, (20.0, 20.1)).is_err());
        assert!(fit_asymptotic(&s, (20.0, 31.0)).is_err());
        assert!(fit_asymptotic(&s, (20.0, 30.0)).is_ok());
    }

    #[test]
    fn analytic_phase_at_origin() {
        assert!((analytic_phase(0.0, 0.0) - FRAC_PI_4).abs() < 1e-15);
    }
}
