//! Closed-form bounds for the first two Dirichlet eigenvalues of a geodesic
//! ball `B_r ⊂ ℍⁿ` (curvature -1) and for their gap.
//!
//! All bounds share the leading part `(n-1)²/4 + π²/r²`: the bottom of the
//! spectrum of ℍⁿ plus the first Dirichlet eigenvalue of `[0, r]`. They differ
//! in how they treat the `csch²` part of the Schrödinger potential.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::eigensolve::{normalize, BallSpec};
use crate::error::{domain, Result};
use crate::specfun::{csch_sq_pos, integrate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
    /// Closed-form value of the eigenvalue itself.
    Exact,
}

/// One evaluated bound. Bounds outside their dimension range are still
/// reported, with `valid = false`, so tables keep a fixed shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: &'static str,
    pub kind: BoundKind,
    pub value: f64,
    pub valid: bool,
    /// Where the inequality comes from.
    pub source: &'static str,
}

fn base(n: u32, r: f64) -> f64 {
    let m = f64::from(n) - 1.0;
    0.25 * m * m + PI * PI / (r * r)
}

/// Bounds for λ₁(B_r), in a fixed order:
///
/// * `lambda1_lower_csch`: comparison with `csch² r` (n > 3),
/// * `lambda1_lower_uniform`: `- 4π²/((n-1) r³)` correction (all n),
/// * `lambda1_upper_n2`: `- 1/(4 sinh² r)` correction (n = 2),
/// * `lambda1_upper_sine`: sine trial function (n ≥ 3),
/// * `lambda1_exact_n3`: `1 + π²/r²` (n = 3).
pub fn lambda1_bounds(n: u32, r: f64) -> Vec<BoundReport> {
    let nf = f64::from(n);
    let b = base(n, r);
    let cs = csch_sq_pos(r);
    vec![
        BoundReport {
            name: "lambda1_lower_csch",
            kind: BoundKind::Lower,
            value: b + 0.25 * (nf - 1.0) * (nf - 3.0) * cs,
            valid: n > 3,
            source: "ODE comparison, csch^2 t >= csch^2 r",
        },
        BoundReport {
            name: "lambda1_lower_uniform",
            kind: BoundKind::Lower,
            value: b - 4.0 * PI * PI / ((nf - 1.0) * r.powi(3)),
            valid: true,
            source: "Savo uniform lower bound",
        },
        BoundReport {
            name: "lambda1_upper_n2",
            kind: BoundKind::Upper,
            value: 0.25 + PI * PI / (r * r) - 0.25 * cs,
            valid: n == 2,
            source: "Gage upper bound, n = 2",
        },
        BoundReport {
            name: "lambda1_upper_sine",
            kind: BoundKind::Upper,
            value: b + (nf - 1.0) * (nf - 3.0) * PI.powi(4) / (12.0 * r.powi(3)),
            valid: n >= 3,
            source: "Rayleigh quotient of sin(pi t / r), alpha = n - 3",
        },
        BoundReport {
            name: "lambda1_exact_n3",
            kind: BoundKind::Exact,
            value: 1.0 + PI * PI / (r * r),
            valid: n == 3,
            source: "constant potential at n = 3",
        },
    ]
}

/// Bounds for λ₂(B_r): `lambda2_lower_csch` and `lambda2_upper_sine`, both
/// valid for every n ≥ 2.
pub fn lambda2_bounds(n: u32, r: f64) -> Vec<BoundReport> {
    let nf = f64::from(n);
    let b = base(n, r);
    vec![
        BoundReport {
            name: "lambda2_lower_csch",
            kind: BoundKind::Lower,
            value: b + 0.25 * (nf * nf - 1.0) * csch_sq_pos(r),
            valid: true,
            source: "ODE comparison, csch^2 t >= csch^2 r",
        },
        BoundReport {
            name: "lambda2_upper_sine",
            kind: BoundKind::Upper,
            value: b + (nf - 1.0) * (nf + 1.0) * PI.powi(4) / (12.0 * r.powi(3)),
            valid: true,
            source: "Rayleigh quotient of sin(pi t / r), alpha = n + 1",
        },
    ]
}

/// Upper bound `(n-1)²/4 + π²/r² + (n-1) α π⁴ / (12 r³)` for the first
/// eigenvalue of `-u'' + (n-1)/4 (n-1 + α csch² t) u` on `[0, r]`.
pub fn lambda1_alpha_upper(n: u32, alpha: f64, r: f64) -> Result<f64> {
    check_alpha(n, alpha, r)?;
    let nf = f64::from(n);
    Ok(base(n, r) + (nf - 1.0) * alpha * PI.powi(4) / (12.0 * r.powi(3)))
}

/// The Rayleigh quotient of `v = √(2/r) sin(πt/r)` for the α-potential,
/// with `∫₀^r v²/sinh²t dt` computed by quadrature.
///
/// Tighter than [`lambda1_alpha_upper`], which bounds `sin x ≤ x` and
/// extends the integral to infinity.
pub fn rayleigh_upper(n: u32, alpha: f64, r: f64) -> Result<f64> {
    check_alpha(n, alpha, r)?;
    if alpha == 0.0 {
        return Ok(base(n, r));
    }
    let w = PI / r;
    let at_zero = 2.0 / r * w * w;
    let integrand = |t: f64| {
        if t == 0.0 {
            at_zero
        } else {
            let s = (w * t).sin();
            2.0 / r * s * s * csch_sq_pos(t)
        }
    };
    let q = integrate(integrand, 0.0, r, 1e-15, 1e-13)?;
    let nf = f64::from(n);
    Ok(base(n, r) + 0.25 * (nf - 1.0) * alpha * q.value)
}

fn check_alpha(n: u32, alpha: f64, r: f64) -> Result<()> {
    if n < 2 {
        return domain(format!("dimension must be at least 2, got {n}"));
    }
    if !(alpha >= 0.0) {
        return domain(format!("alpha must be nonnegative, got {alpha}"));
    }
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("radius must be positive, got {r}"));
    }
    Ok(())
}

/// Lower and upper bounds for `λ₂(B_R) - λ₁(B_R)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapBounds {
    pub lower: f64,
    pub upper: f64,
    /// The constant `C(n)` in `upper = C(n) / R³`.
    pub c_n: f64,
}

/// `C(n) = π⁴(n²-1)/12 + 4π²/(n-1)`: the λ₂ sine-trial upper bound minus the
/// uniform λ₁ lower bound, times `R³`.
pub fn gap_constant(n: u32) -> f64 {
    let nf = f64::from(n);
    PI.powi(4) * (nf * nf - 1.0) / 12.0 + 4.0 * PI * PI / (nf - 1.0)
}

/// `(n-1)/sinh²R ≤ λ₂ - λ₁ ≤ C(n)/R³`.
pub fn gap_bounds(n: u32, radius: f64) -> GapBounds {
    let c_n = gap_constant(n);
    GapBounds {
        lower: (f64::from(n) - 1.0) * csch_sq_pos(radius),
        upper: c_n / radius.powi(3),
        c_n,
    }
}

/// Every bound for a ball at any curvature, obtained from the curvature -1
/// bounds of `B_{kr}` times `k²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallBounds {
    pub lambda1: Vec<BoundReport>,
    pub lambda2: Vec<BoundReport>,
    pub gap: GapBounds,
}

pub fn ball_bounds(spec: &BallSpec) -> BallBounds {
    let (norm, scale) = normalize(spec);
    let scaled = |mut v: Vec<BoundReport>| {
        for b in &mut v {
            b.value *= scale;
        }
        v
    };
    let g = gap_bounds(norm.n, norm.r);
    BallBounds {
        lambda1: scaled(lambda1_bounds(norm.n, norm.r)),
        lambda2: scaled(lambda2_bounds(norm.n, norm.r)),
        gap: GapBounds {
            lower: scale * g.lower,
            upper: scale * g.upper,
            c_n: g.c_n,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find<'a>(v: &'a [BoundReport], name: &str) -> &'a BoundReport {
        v.iter().find(|b| b.name == name).unwrap()
    }

    #[test]
    fn n3_sine_bound_is_exact() {
        for r in [0.3, 1.0, 2.0, 7.5, 40.0] {
            let b = lambda1_bounds(3, r);
            let ub = find(&b, "lambda1_upper_sine");
            let ex = find(&b, "lambda1_exact_n3");
            assert!(ub.valid && ex.valid);
            assert_eq!(ub.value, ex.value);
        }
    }

    #[test]
    fn csch_lower_n4_r2() {
        // 9/4 + π²/4 + 3/(4 sinh² 2), 30-digit value 4.77441747265089297914865250936
        let b = lambda1_bounds(4, 2.0);
        let la = find(&b, "lambda1_lower_csch");
        assert!(la.valid);
        assert!((la.value - 4.774_417_472_650_893).abs() < 1e-13);
        assert!(!find(&lambda1_bounds(3, 2.0), "lambda1_lower_csch").valid);
    }

    #[test]
    fn n2_upper_r1() {
        // 1/4 + π² - 1/(4 sinh² 1) = 9.93858898584778100223249380259
        let b = lambda1_bounds(2, 1.0);
        let ua = find(&b, "lambda1_upper_n2");
        assert!(ua.valid);
        assert!((ua.value - 9.938_588_985_847_781).abs() < 1e-12);
    }

    #[test]
    fn invalid_bounds_are_flagged_not_dropped() {
        for n in 2..=6 {
            assert_eq!(lambda1_bounds(n, 1.0).len(), 5);
            assert_eq!(lambda2_bounds(n, 1.0).len(), 2);
        }
        let b = lambda1_bounds(5, 1.0);
        assert!(!find(&b, "lambda1_upper_n2").valid);
        assert!(!find(&b, "lambda1_exact_n3").valid);
    }

    #[test]
    fn lambda2_bounds_n2_r5() {
        let b = lambda2_bounds(2, 5.0);
        assert!((b[0].value - 0.644_920_388_200_625_8).abs() < 1e-13);
        assert!((b[1].value - 0.839_602_358_111_579_2).abs() < 1e-13);
    }

    #[test]
    fn lambda2_bounds_tend_to_spectral_bottom() {
        for n in 2..=6 {
            let b = lambda2_bounds(n, 1e4);
            let floor = 0.25 * f64::from(n - 1).powi(2);
            assert!(b.iter().all(|x| (x.value - floor).abs() < 1e-6));
        }
    }

    #[test]
    fn alpha_upper_cases() {
        let free = lambda1_alpha_upper(4, 0.0, 3.0).unwrap();
        assert!((free - (2.25 + PI * PI / 9.0)).abs() < 1e-14);
        let v = lambda1_alpha_upper(2, 3.0, 10.0).unwrap();
        assert!((v - 0.373_048_316_769_394_2).abs() < 1e-14);
        assert!(lambda1_alpha_upper(2, -1.0, 1.0).is_err());
        for n in 3..=6 {
            let nf = f64::from(n);
            let r = 2.5;
            let l1 = find(&lambda1_bounds(n, r), "lambda1_upper_sine").value;
            let l2 = lambda2_bounds(n, r)[1].value;
            assert!((lambda1_alpha_upper(n, nf - 3.0, r).unwrap() - l1).abs() < 1e-13);
            assert!((lambda1_alpha_upper(n, nf + 1.0, r).unwrap() - l2).abs() < 1e-13);
        }
    }

    #[test]
    fn rayleigh_quotient_is_tighter() {
        for n in 2..=5 {
            for alpha in [0.0, 1.0, 3.0, 6.0] {
                for r in [0.5, 1.0, 5.0, 20.0] {
                    let q = rayleigh_upper(n, alpha, r).unwrap();
                    let u = lambda1_alpha_upper(n, alpha, r).unwrap();
                    assert!(q <= u, "n={n} alpha={alpha} r={r}: {q} > {u}");
                }
            }
        }
        assert_eq!(rayleigh_upper(3, 0.0, 2.0).unwrap(), base(3, 2.0));
    }

    #[test]
    fn gap_constant_n2() {
        // π⁴/4 + 4π² = 63.8306903628580437844480471717
        assert!((gap_constant(2) - 63.830_690_362_858_04).abs() < 1e-12);
        let g = gap_bounds(2, 10.0);
        assert!((g.upper - 0.063_830_690_362_858_04).abs() < 1e-15);
        assert!((g.lower - 8.244_614_523_741_065e-9).abs() < 1e-20);
    }

    #[test]
    fn gap_upper_times_r2_vanishes() {
        let vals: Vec<f64> = [10.0, 100.0, 1000.0]
            .iter()
            .map(|&r| gap_bounds(3, r).upper * r * r)
            .collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
        assert!(vals[2] < 0.1);
    }

    #[test]
    fn ball_bounds_scale_with_curvature() {
        let unit = ball_bounds(&BallSpec::hyperbolic(4, 2.0).unwrap());
        let curved = ball_bounds(&BallSpec::new(4, 2.0, 1.0).unwrap());
        for (a, b) in unit
            .lambda1
            .iter()
            .chain(&unit.lambda2)
            .zip(curved.lambda1.iter().chain(&curved.lambda2))
        {
            assert_eq!(a.name, b.name);
            assert!((4.0 * a.value - b.value).abs() <= 1e-14 * b.value.abs());
        }
        assert!((4.0 * unit.gap.upper - curved.gap.upper).abs() <= 1e-14 * curved.gap.upper);
    }
}
