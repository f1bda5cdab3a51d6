use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{domain, Result};
use crate::roots::brent;

/// Bessel function of the first kind `J_p(x)` for `p ≥ 0`, `x ≥ 0`.
///
/// Ascending series for `x ≤ max(12, 2p)`, Hankel asymptotics beyond.
/// Intended for locating low-order zeros, not as a general implementation.
pub fn bessel_j(p: f64, x: f64) -> f64 {
    if x <= 12f64.max(2.0 * p) {
        series(p, x)
    } else {
        asymptotic(p, x)
    }
}

fn series(p: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if p == 0.0 { 1.0 } else { 0.0 };
    }
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + p));
        sum += term;
        if k > 0.5 * x && term.abs() <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
        if k > 500.0 {
            break;
        }
    }
    (0.5 * x).powf(p) / gamma(p + 1.0) * sum
}

fn asymptotic(p: f64, x: f64) -> f64 {
    let mu = 4.0 * p * p;
    let chi = x - (0.5 * p + 0.25) * PI;
    // a_k = prod_{j=1..k} (mu - (2j-1)^2) / (k! 8^k)
    let mut big_p = 0.0;
    let mut big_q = 0.0;
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..40 {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            a *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        }
        let mag = a.abs();
        if mag > prev {
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            big_p += sign * a;
        } else {
            big_q += sign * a;
        }
        if mag < 1e-17 {
            break;
        }
        prev = mag;
    }
    (2.0 / (PI * x)).sqrt() * (big_p * chi.cos() - big_q * chi.sin())
}

/// First positive zero `j_{p,1}` of `J_p`.
///
/// Scans `[p, p + 10]` in steps of 0.1 for the first sign change, then
/// refines with Brent's method.
pub fn bessel_first_zero(p: f64) -> Result<f64> {
    if !(p >= 0.0) || !p.is_finite() {
        return domain(format!("Bessel order must be finite and >= 0, got {p}"));
    }
    let step = 0.1;
    let mut a = p;
    let mut fa = bessel_j(p, a);
    let end = p + 10.0;
    while a < end {
        let b = a + step;
        let fb = bessel_j(p, b);
        if fa.signum() != fb.signum() || fb == 0.0 {
            let root = brent(|x| Ok(bessel_j(p, x)), a, b, fa, fb, 1e-15, 1e-15, 200)?;
            return Ok(root.x);
        }
        a = b;
        fa = fb;
    }
    domain(format!("no zero of J_{p} found in [{p}, {end}]"))
}
