//! Bracketing root finders shared by the zero scan, the counting models and
//! the scattering quantization.

use crate::error::{Error, Result};

/// Bisection on `[lo, hi]` for a function with opposite signs at the ends.
///
/// Stops when the bracket is narrower than `x_tol` or cannot be split any
/// further in floating point. The sign at `lo` is given explicitly so that a
/// root sitting exactly on an endpoint is still approached correctly.
pub fn bisect_with_sign<F>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    lo_positive: bool,
    x_tol: f64,
    max_iter: usize,
    what: &'static str,
) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= x_tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let v = f(mid);
        if v.is_nan() {
            return Err(Error::NonFinite(what));
        }
        if v == 0.0 {
            return Ok(mid);
        }
        if (v > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if hi - lo <= x_tol {
        Ok(0.5 * (lo + hi))
    } else {
        Err(Error::NonConvergence {
            what,
            iterations: max_iter,
        })
    }
}

/// Bisection given function values already known at both ends.
pub fn bisect<F>(f: F, lo: f64, hi: f64, f_lo: f64, f_hi: f64, x_tol: f64, max_iter: usize, what: &'static str) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::NoBracket { what: what.to_string() });
    }
    bisect_with_sign(f, lo, hi, f_lo > 0.0, x_tol, max_iter, what)
}

/// Solves `f(x) = target` for an increasing `f` on `[lo, ∞)`.
///
/// The upper end starts at `hi` and is doubled until `f` exceeds the target.
pub fn solve_increasing<F>(mut f: F, lo: f64, hi: f64, target: f64, x_tol: f64, what: &'static str) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let f_lo = f(lo) - target;
    if f_lo > 0.0 {
        return Err(Error::NoBracket { what: what.to_string() });
    }
    let mut hi = hi.max(lo * 2.0).max(lo + 1.0);
    let mut f_hi = f(hi) - target;
    let mut doublings = 0;
    while f_hi < 0.0 {
        doublings += 1;
        if doublings > 200 || !hi.is_finite() {
            return Err(Error::NoBracket { what: what.to_string() });
        }
        hi *= 2.0;
        f_hi = f(hi) - target;
    }
    bisect(|x| f(x) - target, lo, hi, f_lo, f_hi, x_tol, 200, what)
}

/// Locates the sign change of a central-difference derivative on `[lo, hi]`.
///
/// Used to find where a smooth phase or counting function turns from
/// decreasing to increasing.
pub fn stationary_point<F>(f: F, lo: f64, hi: f64, what: &'static str) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let h = 1e-5;
    let slope = |x: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    let (s_lo, s_hi) = (slope(lo), slope(hi));
    // the difference quotient is only good to ~1e-10, so stop there
    bisect(slope, lo, hi, s_lo, s_hi, 1e-12, 200, what)
}
