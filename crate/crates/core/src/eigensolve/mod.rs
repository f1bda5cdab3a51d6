//! First Dirichlet eigenvalue of each separated radial mode of a geodesic
//! ball in the space form of curvature `-k²`.
//!
//! Mode `l` of the ball `B_r` solves
//!
//! ```text
//! u'' + (n-1) k coth(kt) u' - l(l+n-2) k² / sinh²(kt) u + λ u = 0,   u(r) = 0,
//! ```
//!
//! with `u'(0) = 0` for `l = 0` and `u ~ t^l` at the origin otherwise. The
//! first eigenvalue of the ball is the first eigenvalue of mode 0 and the
//! second is the first eigenvalue of mode 1.
//!
//! [`first_eigenvalue`] shoots on the Schrödinger form `-ū'' + V ū = λ ū`
//! (obtained from `u = sinh(t)^{(1-n)/2} ū` at `k = 1`) and tracks the Prüfer
//! angle of `ū`. [`fd_eigenvalue`] discretizes the weighted radial form
//! directly and serves as an independent check.

mod fd;
mod prufer;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{domain, Error, Result};
use crate::ode::{self, Tolerances};
use crate::roots::brent;
use crate::specfun::{coth_pos, csch_sq_pos};

pub use fd::fd_eigenvalue;
pub use prufer::{prufer_shoot, PruferEnd};

use prufer::{Shooter, Start};

/// A geodesic ball of radius `r` in the `n`-dimensional space form of
/// sectional curvature `-k²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallSpec {
    pub n: u32,
    pub k: f64,
    pub r: f64,
}

impl BallSpec {
    pub fn new(n: u32, k: f64, r: f64) -> Result<Self> {
        let spec = Self { n, k, r };
        spec.validate()?;
        Ok(spec)
    }

    /// Ball in the hyperbolic space of curvature -1.
    pub fn hyperbolic(n: u32, r: f64) -> Result<Self> {
        Self::new(n, 1.0, r)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return domain(format!("dimension must be at least 2, got {}", self.n));
        }
        if !(self.k > 0.0) || !self.k.is_finite() {
            return domain(format!(
                "curvature parameter must be positive, got {}",
                self.k
            ));
        }
        if !(self.r > 0.0) || !self.r.is_finite() {
            return domain(format!("radius must be positive, got {}", self.r));
        }
        Ok(())
    }
}

/// Angular index of a separated radial equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RadialMode {
    pub l: u32,
}

impl RadialMode {
    /// Radial mode; its first eigenvalue is λ₁ of the ball.
    pub const RADIAL: Self = Self { l: 0 };
    /// First angular mode; its first eigenvalue is λ₂ of the ball.
    pub const FIRST_ANGULAR: Self = Self { l: 1 };

    pub const fn new(l: u32) -> Self {
        Self { l }
    }
}

/// Potential `V(t) = constant_part + csch2_coefficient / sinh²(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub constant_part: f64,
    pub csch2_coefficient: f64,
}

impl PotentialSpec {
    /// The family `(n-1)/4 · (n-1 + α / sinh²t)`, `α ≥ 0`.
    pub fn alpha(n: u32, alpha: f64) -> Result<Self> {
        if n < 2 {
            return domain(format!("dimension must be at least 2, got {n}"));
        }
        if !(alpha >= 0.0) {
            return domain(format!("alpha must be nonnegative, got {alpha}"));
        }
        let m = f64::from(n - 1);
        Ok(Self {
            constant_part: 0.25 * m * m,
            csch2_coefficient: 0.25 * m * alpha,
        })
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        self.constant_part + self.csch2_coefficient * csch_sq_pos(t)
    }

    /// Leading exponent `a` of the regular solution `ū ~ t^a`, i.e. the larger
    /// root of `a(a-1) = csch2_coefficient`. `None` below the Hardy threshold -1/4.
    pub fn frobenius_exponent(&self) -> Option<f64> {
        let disc = 0.25 + self.csch2_coefficient;
        (disc >= 0.0).then(|| 0.5 + disc.sqrt())
    }
}

/// Potential of the Schrödinger form of mode `l` at `k = 1`.
pub fn schrodinger_potential(n: u32, l: u32) -> PotentialSpec {
    let m = f64::from(n) - 1.0;
    let l = f64::from(l);
    PotentialSpec {
        constant_part: 0.25 * m * m,
        csch2_coefficient: 0.25 * m * (m - 2.0) + l * (l + m - 1.0),
    }
}

/// Scales a ball to curvature `-1`: returns `(n, 1, k·r)` and the factor
/// `k²` with `λ_i(spec) = k² · λ_i(normalized)`.
pub fn normalize(spec: &BallSpec) -> (BallSpec, f64) {
    (
        BallSpec {
            n: spec.n,
            k: 1.0,
            r: spec.k * spec.r,
        },
        spec.k * spec.k,
    )
}

/// `u(t0)` and `u'(t0)` of the regular solution of mode `l` at `k = 1`,
/// normalized so that `u(t) / t^l → 1`.
///
/// Uses `u = t^l (1 + c₂ t²)` with `c₂ = -(λ + l(2n+l-3)/3) / (2n + 4l)`.
pub fn frobenius_init(n: u32, l: u32, lambda: f64, t0: f64) -> (f64, f64) {
    let c2 = frobenius_c2(n, l, lambda);
    let lf = f64::from(l);
    let tl = t0.powi(l as i32);
    let u0 = tl * (1.0 + c2 * t0 * t0);
    let du0 = if l == 0 {
        2.0 * c2 * t0
    } else {
        tl / t0 * (lf * (1.0 + c2 * t0 * t0) + 2.0 * c2 * t0 * t0)
    };
    (u0, du0)
}

pub(crate) fn frobenius_c2(n: u32, l: u32, lambda: f64) -> f64 {
    let (n, l) = (f64::from(n), f64::from(l));
    -(lambda + l * (2.0 * n + l - 3.0) / 3.0) / (2.0 * n + 4.0 * l)
}

/// Numerical settings shared by the shooting solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub lambda_rel_tol: f64,
    pub lambda_abs_tol: f64,
    pub ode_tolerance: f64,
    /// Frobenius start at `t0 = t0_factor · min(1, r)`.
    pub t0_factor: f64,
    pub max_bisection_steps: usize,
    pub sample_count: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            lambda_rel_tol: 1e-10,
            lambda_abs_tol: 1e-12,
            ode_tolerance: 1e-12,
            t0_factor: 1e-6,
            max_bisection_steps: 200,
            sample_count: 1001,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("lambda_rel_tol", self.lambda_rel_tol),
            ("lambda_abs_tol", self.lambda_abs_tol),
            ("ode_tolerance", self.ode_tolerance),
            ("t0_factor", self.t0_factor),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return domain(format!("{name} must be positive, got {v}"));
            }
        }
        if self.t0_factor > 1e-3 {
            return domain(format!(
                "t0_factor must be at most 1e-3, got {}",
                self.t0_factor
            ));
        }
        if self.max_bisection_steps == 0 {
            return domain("max_bisection_steps must be positive");
        }
        if self.sample_count < 3 {
            return domain(format!(
                "sample_count must be at least 3, got {}",
                self.sample_count
            ));
        }
        Ok(())
    }

    fn start_offset(&self, r: f64) -> f64 {
        self.t0_factor * r.min(1.0)
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if r < 1e3 * self.t0_factor {
            return domain(format!(
                "radius {r} is degenerate for t0_factor {} (needs r >= {})",
                self.t0_factor,
                1e3 * self.t0_factor
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Shooting,
    FiniteDifference,
}

/// A converged first eigenvalue of one radial mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub lambda: f64,
    pub error_estimate: f64,
    /// Interior sign changes of the sampled eigenfunction.
    pub oscillation_count: usize,
    /// `(t, u(t))` in the original (unscaled) radius, `max |u| = 1`.
    pub samples: Vec<(f64, f64)>,
    pub method: Method,
    pub spec: BallSpec,
    pub mode: RadialMode,
}

/// A first eigenvalue of a generic Schrödinger problem on `[0, r]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: f64,
    pub error_estimate: f64,
}

/// The first two Dirichlet eigenvalues of a ball and their difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallGap {
    pub lambda1: f64,
    pub lambda2: f64,
    pub gap: f64,
    pub lambda1_error: f64,
    pub lambda2_error: f64,
    pub gap_error: f64,
}

fn fallback_bracket(n: u32, r: f64) -> (f64, f64) {
    let m = f64::from(n) - 1.0;
    (0.0, 0.25 * m * m + 4.0 * PI * PI / (r * r) + 100.0)
}

/// Initial bracket for mode `l` at `k = 1`, tightened by the closed-form
/// bounds where they apply.
fn mode_bracket(n: u32, l: u32, r: f64) -> (f64, f64) {
    let reports = match l {
        0 => bounds::lambda1_bounds(n, r),
        1 => bounds::lambda2_bounds(n, r),
        _ => return fallback_bracket(n, r),
    };
    let m = f64::from(n) - 1.0;
    // bottom of the spectrum of the whole space
    let mut lo = 0.25 * m * m;
    let mut hi = f64::INFINITY;
    for b in reports.iter().filter(|b| b.valid) {
        match b.kind {
            bounds::BoundKind::Lower => lo = lo.max(b.value),
            bounds::BoundKind::Upper => hi = hi.min(b.value),
            bounds::BoundKind::Exact => {}
        }
    }
    if !hi.is_finite() || hi <= lo {
        return fallback_bracket(n, r);
    }
    // closed-form bounds may be attained (n = 3); leave room for rounding
    let pad = 1e-9 * (hi - lo).max(hi.abs());
    (lo - pad, hi + pad)
}

/// Root of `θ(r; λ) - π` starting from `[lo, hi]`, widened geometrically.
fn solve_angle(
    shooter: &Shooter,
    mut lo: f64,
    mut hi: f64,
    config: &SolverConfig,
) -> Result<(f64, f64)> {
    const WIDENINGS: usize = 10;
    let residual = |lambda: f64| -> Result<f64> { Ok(shooter.shoot(lambda)?.theta - PI) };

    let mut f_lo = residual(lo)?;
    let mut widen = 0;
    while f_lo > 0.0 {
        if widen == WIDENINGS {
            return Err(Error::Bracket { lo, hi });
        }
        let w = (hi - lo).max(1.0);
        hi = lo;
        lo -= w * 2f64.powi(widen as i32);
        f_lo = residual(lo)?;
        widen += 1;
    }
    let mut f_hi = residual(hi)?;
    widen = 0;
    while f_hi < 0.0 {
        if widen == WIDENINGS {
            return Err(Error::Bracket { lo, hi });
        }
        let w = (hi - lo).max(1.0);
        lo = hi;
        f_lo = f_hi;
        hi += w * 2f64.powi(widen as i32);
        f_hi = residual(hi)?;
        widen += 1;
    }

    let root = brent(
        residual,
        lo,
        hi,
        f_lo,
        f_hi,
        config.lambda_abs_tol,
        config.lambda_rel_tol,
        config.max_bisection_steps,
    )?;
    let cap = config.lambda_rel_tol * root.x.abs() + config.lambda_abs_tol;
    Ok((root.x, root.bracket.min(cap)))
}

fn validated(spec: &BallSpec, config: &SolverConfig) -> Result<(BallSpec, f64)> {
    spec.validate()?;
    config.validate()?;
    let (norm, scale) = normalize(spec);
    config.check_radius(norm.r)?;
    Ok((norm, scale))
}

fn solve_mode(
    spec: &BallSpec,
    mode: RadialMode,
    config: &SolverConfig,
    with_samples: bool,
) -> Result<EigenResult> {
    let (norm, scale) = validated(spec, config)?;
    let shooter = Shooter::new(
        schrodinger_potential(norm.n, mode.l),
        Start::BallMode {
            n: norm.n,
            l: mode.l,
        },
        norm.r,
        config,
    );
    let (lo, hi) = mode_bracket(norm.n, mode.l, norm.r);
    let (lambda, err) = solve_angle(&shooter, lo, hi, config)?;

    let (samples, oscillation_count) = if with_samples {
        let raw = shooter.sample(lambda, config.sample_count)?;
        let samples: Vec<(f64, f64)> = raw.into_iter().map(|(t, u)| (t / spec.k, u)).collect();
        let count = interior_sign_changes(&samples);
        (samples, count)
    } else {
        (Vec::new(), 0)
    };

    Ok(EigenResult {
        lambda: lambda * scale,
        error_estimate: err * scale,
        oscillation_count,
        samples,
        method: Method::Shooting,
        spec: *spec,
        mode,
    })
}

pub(crate) fn interior_sign_changes(samples: &[(f64, f64)]) -> usize {
    if samples.len() < 3 {
        return 0;
    }
    let interior = &samples[1..samples.len() - 1];
    interior
        .windows(2)
        .filter(|w| w[0].1 * w[1].1 < 0.0)
        .count()
}

/// First Dirichlet eigenvalue of mode `mode` on the ball `spec`, by Prüfer
/// shooting with the eigenfunction sampled at `config.sample_count` points.
pub fn first_eigenvalue(
    spec: &BallSpec,
    mode: RadialMode,
    config: &SolverConfig,
) -> Result<EigenResult> {
    solve_mode(spec, mode, config, true)
}

/// First Dirichlet eigenvalue of `-ū'' + V ū = λ ū` on `[0, r]` for a
/// potential with a regular singular point at the origin.
pub fn schrodinger_first_eigenvalue(
    potential: &PotentialSpec,
    r: f64,
    config: &SolverConfig,
) -> Result<Eigenvalue> {
    config.validate()?;
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("radius must be positive, got {r}"));
    }
    config.check_radius(r)?;
    let a = potential.frobenius_exponent().ok_or_else(|| {
        Error::Domain(format!(
            "csch² coefficient {} is below the Hardy threshold -1/4",
            potential.csch2_coefficient
        ))
    })?;
    let shooter = Shooter::new(*potential, Start::Power { a }, r, config);
    // V ≥ constant_part when the coefficient is nonnegative
    let base = potential.constant_part + PI * PI / (r * r);
    let (lo, hi) = if potential.csch2_coefficient >= 0.0 {
        (
            base - 1e-9 * base.abs(),
            base + potential.csch2_coefficient * PI.powi(4) / (3.0 * r.powi(3)) + 1.0,
        )
    } else {
        (potential.constant_part - 1.0, base + 1.0)
    };
    let (value, error_estimate) = solve_angle(&shooter, lo, hi, config)?;
    Ok(Eigenvalue {
        value,
        error_estimate,
    })
}

/// First and second Dirichlet eigenvalues of the ball and the fundamental gap.
pub fn gap(spec: &BallSpec, config: &SolverConfig) -> Result<BallGap> {
    let (first, second) = rayon::join(
        || solve_mode(spec, RadialMode::RADIAL, config, false),
        || solve_mode(spec, RadialMode::FIRST_ANGULAR, config, false),
    );
    let (first, second) = (first?, second?);
    Ok(BallGap {
        lambda1: first.lambda,
        lambda2: second.lambda,
        gap: second.lambda - first.lambda,
        lambda1_error: first.error_estimate,
        lambda2_error: second.error_estimate,
        gap_error: first.error_estimate + second.error_estimate,
    })
}

/// `φ = (log u)'` of a radial (`l = 0`) eigenfunction at its interior sample
/// points.
///
/// `φ` is integrated from the Frobenius start through the Riccati equation
/// `φ' = -(n-1) coth(t) φ - λ - φ²` rather than differenced from samples.
pub fn log_derivative_profile(result: &EigenResult) -> Result<Vec<(f64, f64)>> {
    if result.mode.l != 0 {
        return domain(format!(
            "log-derivative profile needs the radial mode, got l = {}",
            result.mode.l
        ));
    }
    let samples = &result.samples;
    if samples.len() < 3 {
        return domain("eigenfunction has too few samples");
    }
    let interior = &samples[1..samples.len() - 1];
    if let Some(&(t, u)) = interior.iter().find(|(_, u)| !(*u > 0.0)) {
        return domain(format!("eigenfunction sample u({t}) = {u} is not positive"));
    }

    let config = SolverConfig::default();
    let (norm, scale) = normalize(&result.spec);
    let k = result.spec.k;
    let lambda = result.lambda / scale;
    let m = f64::from(norm.n) - 1.0;
    let t0 = (config.t0_factor * norm.r.min(1.0)).min(0.5 * interior[0].0 * k);
    let (u0, du0) = frobenius_init(norm.n, 0, lambda, t0);

    let tol = Tolerances {
        rtol: 1e-12,
        atol: [1e-14],
        max_steps: 2_000_000,
    };
    let mut rhs = |t: f64, y: &[f64; 1]| [-m * coth_pos(t) * y[0] - lambda - y[0] * y[0]];

    let mut out = Vec::with_capacity(interior.len());
    let mut t = t0;
    let mut phi = du0 / u0;
    let mut h = 0.1 * t0;
    for &(ts, _) in interior {
        let target = ts * k;
        let p = ode::integrate(&mut rhs, t, [phi], target, h, &tol)?;
        t = target;
        phi = p.y[0];
        h = p.h;
        out.push((ts, k * phi));
    }
    Ok(out)
}
