//! Special functions on the critical line.
//!
//! | Function | Description |
//! |----------|-------------|
//! | [`log_gamma`] | principal ln Γ(z), continuous along vertical lines |
//! | [`theta_exact`] | Riemann–Siegel θ(t) through ln Γ(1/4 + it/2) |
//! | [`theta_series`] | five-term asymptotic expansion of θ |
//! | [`gamma_phase_ratio`] | Im ln[Γ(s0 + it)/Γ(s0 − it)] |
//! | [`hardy_z`] | Hardy's Z(t), real on the critical line |
//! | [`zeta_critical`] | ζ(1/2 + it) = Z(t) e^{−iθ(t)} |
//!
//! Every function here is pure and can be called from any thread.

mod gamma;
#[allow(clippy::excessive_precision)]
mod rs_coeffs;
mod theta;
mod zeta;

use num_complex::Complex64;

pub(crate) use gamma::wrap_pi;
pub use gamma::log_gamma;
pub use theta::{
    gamma_phase_ratio, phase_turning_point, theta_exact, theta_series, theta_turning_point,
    THETA_SERIES_MIN_HEIGHT,
};
pub use zeta::{hardy_z, zeta_critical, EULER_MACLAURIN_MAX_HEIGHT, REGIME_MAX_HEIGHT, VALIDATED_MAX_HEIGHT};

/// Complex number used for Γ arguments, ζ values and fitted amplitudes.
pub type ComplexValue = Complex64;
