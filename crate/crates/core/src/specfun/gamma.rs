use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// ½ ln 2π
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// B₂ₖ / (2k(2k−1)) for k = 1..10.
const STIRLING: [f64; 10] = [
    8.333_333_333_333_333_333_3e-2,
    -2.777_777_777_777_777_777_8e-3,
    7.936_507_936_507_936_507_9e-4,
    -5.952_380_952_380_952_381e-4,
    8.417_508_417_508_417_508_4e-4,
    -1.917_526_917_526_917_526_9e-3,
    6.410_256_410_256_410_256_4e-3,
    -2.955_065_359_477_124_183e-2,
    1.796_443_723_688_305_731_6e-1,
    -1.392_432_216_905_901_116_4,
];

/// Below this modulus the argument is shifted upward before the Stirling sum.
const STIRLING_MIN_MODULUS: f64 = 15.0;

/// Principal branch of ln Γ(z).
///
/// The branch is the one continuous on ℂ minus the non-positive real axis,
/// so `Im ln Γ(σ + it)` varies smoothly along vertical lines with `σ > 0`
/// instead of wrapping into (−π, π].
///
/// ```
/// use num_complex::Complex64;
/// use zeta_kkr::specfun::log_gamma;
///
/// let half = log_gamma(Complex64::new(0.5, 0.0)).unwrap();
/// assert!((half.re - std::f64::consts::PI.ln() / 2.0).abs() < 1e-14);
/// ```
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("log_gamma input"));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::Pole(z.re));
    }
    let value = if z.re < 0.0 { reflected(z) } else { ln_gamma_right(z) };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite("log_gamma"))
    }
}

/// ln Γ(z) for Re z ≥ 0 away from the origin. Infallible fast path used by
/// the phase functions, which only ever evaluate on the right half-plane.
pub(crate) fn ln_gamma_right(z: Complex64) -> Complex64 {
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    // ln Γ(z) = ln Γ(z + n) − Σ ln(z + k); summing principal logs keeps the
    // imaginary part continuous because every z + k stays in the right half-plane
    while z.norm() < STIRLING_MIN_MODULUS {
        shift += z.ln();
        z += 1.0;
    }
    stirling(z) - shift
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// ln Γ(z) = ln π − ln sin(πz) − ln Γ(1 − z), with the 2πi multiple that
/// restores continuity off the negative real axis.
fn reflected(z: Complex64) -> Complex64 {
    let branch = 2.0 * PI * (0.5 * z.re + 0.25).floor() * z.im.signum();
    let branch = if z.im == 0.0 { 0.0 } else { branch };
    Complex64::new(PI.ln(), branch) - ln_sin_pi(z) - ln_gamma_right(Complex64::new(1.0, 0.0) - z)
}

/// Principal logarithm of sin(πz), stable for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 10.0 {
        return (z * PI).sin().ln();
    }
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin πz = e^{−iπz} (e^{2iπz} − 1) / 2i, and |e^{2iπz}| = e^{−2π Im z} is tiny
    let i = Complex64::i();
    let small = (i * 2.0 * PI * z).exp();
    let mut v = -i * PI * z + ((small - 1.0) / (2.0 * i)).ln();
    v.im = wrap_pi(v.im);
    v
}

/// Reduces an angle to (−π, π].
pub(crate) fn wrap_pi(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = x.rem_euclid(two_pi);
    if r > PI {
        r -= two_pi;
    }
    r
}
