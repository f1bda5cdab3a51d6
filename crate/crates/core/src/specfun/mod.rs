//! Special functions and quadrature shared by the solvers and bounds.

mod bessel;
mod quad;

pub use bessel::{bessel_first_zero, bessel_j};
pub use quad::{integral_t2_csch2, integrate, QuadratureResult};

use crate::error::{domain, Result};

/// Above this argument `1/sinh²` is evaluated from `exp(-2t)`.
const CSCH_SWITCH: f64 = 20.0;

/// `1 / sinh²(t)` for `t > 0`, without overflow for large `t`.
pub fn csch_sq(t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return domain(format!("csch_sq requires t > 0, got {t}"));
    }
    Ok(csch_sq_pos(t))
}

/// Unchecked variant for hot loops; `t` must be positive.
#[inline]
pub(crate) fn csch_sq_pos(t: f64) -> f64 {
    if t < CSCH_SWITCH {
        let s = t.sinh();
        1.0 / (s * s)
    } else {
        let q = (-2.0 * t).exp_m1();
        4.0 * (-2.0 * t).exp() / (q * q)
    }
}

/// `coth(t)` for `t > 0`.
#[inline]
pub(crate) fn coth_pos(t: f64) -> f64 {
    if t < CSCH_SWITCH {
        1.0 / t.tanh()
    } else {
        1.0 - 2.0 * (-2.0 * t).exp() / (-2.0 * t).exp_m1()
    }
}

/// `ln sinh(t)` for `t > 0`, valid far beyond the overflow point of `sinh`.
#[inline]
pub(crate) fn ln_sinh_pos(t: f64) -> f64 {
    if t < CSCH_SWITCH {
        t.sinh().ln()
    } else {
        t - std::f64::consts::LN_2 + (-(-2.0 * t).exp_m1()).ln()
    }
}
