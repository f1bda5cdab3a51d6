//! Dormand–Prince 5(4) embedded Runge–Kutta pair with mixed absolute and
//! relative error control per component.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// difference between the 5th- and 4th-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Step-size controller settings.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Tolerances<const N: usize> {
    pub rtol: f64,
    pub atol: [f64; N],
    pub max_steps: usize,
}

/// Integrator state carried between consecutive segments.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Progress<const N: usize> {
    pub y: [f64; N],
    /// Step size to try first on the next segment.
    pub h: f64,
}

#[inline]
fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        let mut acc = 0.0;
        for (c, k) in terms {
            acc += c * k[i];
        }
        out[i] += h * acc;
    }
    out
}

/// Integrates `y' = f(t, y)` from `t0` to `t1 > t0`, landing exactly on `t1`.
pub(crate) fn integrate<const N: usize, F>(
    f: &mut F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    h0: f64,
    tol: &Tolerances<N>,
) -> Result<Progress<N>>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let mut t = t0;
    let mut y = y0;
    let span = t1 - t0;
    if span <= 0.0 {
        return Ok(Progress { y, h: h0 });
    }
    let mut h = h0.min(span).max(f64::EPSILON * t1.abs());
    let mut k1 = f(t, &y);
    let mut steps = 0usize;
    let mut h_keep = h;

    loop {
        if steps >= tol.max_steps {
            return Err(Error::Integration {
                t,
                reason: format!("exceeded {} steps", tol.max_steps),
            });
        }
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }

        let k2 = f(t + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
        let k3 = f(t + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(
            t + C4 * h,
            &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
        );
        let k5 = f(
            t + C5 * h,
            &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + h,
            &axpy(
                &y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y_new = axpy(
            &y,
            h,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let k7 = f(t + h, &y_new);
        steps += 1;

        let mut err = 0.0f64;
        let mut finite = true;
        for i in 0..N {
            let e =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = tol.atol[i] + tol.rtol * y[i].abs().max(y_new[i].abs());
            finite &= y_new[i].is_finite();
            err = err.max((e / sc).abs());
        }
        if !finite || err.is_nan() {
            err = f64::INFINITY;
        }

        if err <= 1.0 {
            t = if last { t1 } else { t + h };
            y = y_new;
            k1 = k7;
            let grow = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if !last {
                h_keep = h;
            }
            if last {
                return Ok(Progress {
                    y,
                    h: h_keep.max(h),
                });
            }
            h *= grow;
        } else {
            let shrink = if err.is_finite() {
                (0.9 * err.powf(-0.25)).clamp(0.1, 0.9)
            } else {
                0.1
            };
            h *= shrink;
            if h < 1e-15 * t.abs().max(1e-300) || h == 0.0 {
                return Err(Error::Integration {
                    t,
                    reason: "step size underflow".into(),
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        let tol = Tolerances {
            rtol: 1e-12,
            atol: [1e-14],
            max_steps: 100_000,
        };
        let p = integrate(&mut |_t, y: &[f64; 1]| [y[0]], 0.0, [1.0], 2.0, 1e-3, &tol).unwrap();
        assert!((p.y[0] - 2f64.exp()).abs() < 1e-10);
    }

    #[test]
    fn harmonic_oscillator_lands_on_endpoint() {
        let tol = Tolerances {
            rtol: 1e-12,
            atol: [1e-14; 2],
            max_steps: 100_000,
        };
        let mut f = |_t: f64, y: &[f64; 2]| [y[1], -y[0]];
        let half = integrate(&mut f, 0.0, [0.0, 1.0], 1.5, 1e-3, &tol).unwrap();
        let full = integrate(&mut f, 1.5, half.y, 3.0, half.h, &tol).unwrap();
        assert!((full.y[0] - 3f64.sin()).abs() < 1e-10);
        assert!((full.y[1] - 3f64.cos()).abs() < 1e-10);
    }

    #[test]
    fn step_budget_exhaustion_reports_position() {
        let tol = Tolerances {
            rtol: 1e-14,
            atol: [1e-16],
            max_steps: 5,
        };
        let err = integrate(
            &mut |t, _y: &[f64; 1]| [t.cos() * 100.0],
            0.0,
            [0.0],
            100.0,
            1e-3,
            &tol,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Integration { .. }));
    }
}
