//! Runs every eigenvalue and gap inequality over a parameter grid and
//! collects one [`CheckResult`] per property.
//!
//! Margins are dimensionless and positive exactly when a check passes; the
//! `worst_case` field names the point with the smallest margin. Solver
//! failures are recorded as failed checks, never propagated.

use std::collections::BTreeSet;
use std::f64::consts::{LN_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    ball_bounds, gap_constant, lambda1_alpha_upper, rayleigh_upper, BoundKind, BoundReport,
};
use crate::eigensolve::{
    fd_eigenvalue, first_eigenvalue, gap, log_derivative_profile, schrodinger_first_eigenvalue,
    BallSpec, EigenResult, PotentialSpec, RadialMode, SolverConfig,
};
use crate::error::{domain, Result};
use crate::horoconvex::{bm_deficit, bm_excess, certify_gap_bound, HoroconvexInput};
use crate::specfun::{bessel_first_zero, integral_t2_csch2};

/// Relative tolerance for the n = 3 closed form and for the scaling identity.
pub const EXACT_REL_TOL: f64 = 1e-8;
/// Relative agreement required between shooting and finite differences.
pub const ORACLE_REL_TOL: f64 = 1e-6;
/// `|r²λ₁ - j²|` at the small radius.
pub const SMALL_BALL_LAMBDA_TOL: f64 = 1e-3;
/// `|r²(λ₂ - λ₁) - (j₊² - j²)|` at the small radius.
pub const SMALL_BALL_GAP_TOL: f64 = 2e-3;
pub const SMALL_BALL_RADIUS: f64 = 1e-2;
/// Relative accuracy of `φ'(0) = -λ₁/n`.
pub const LOG_SLOPE_REL_TOL: f64 = 1e-4;
pub const QUADRATURE_TOL: f64 = 1e-10;
/// Distance of the excess from `ln 2` at `r = 20`.
pub const BM_SHARPNESS_TOL: f64 = 1e-6;
/// Strict inequalities must clear the solver error by this factor.
pub const ERROR_MULTIPLE: f64 = 10.0;
/// Finite-difference mesh (and its doubling) for the oracle comparison.
pub const FD_MESH: usize = 4000;

pub const SCALING_FACTORS: [f64; 3] = [0.5, 2.0, 10.0];
pub const DECAY_RADII: [f64; 4] = [5.0, 10.0, 20.0, 40.0];
pub const DEFAULT_DIMENSIONS: [u32; 5] = [2, 3, 4, 5, 6];
pub const DEFAULT_RADII: [f64; 7] = [0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_name: String,
    pub passed: bool,
    pub worst_case: String,
    pub margin: f64,
}

/// The default grid: n ∈ {2..6} × r ∈ {0.25, 0.5, 1, 2, 5, 10, 20} at k = 1.
pub fn default_grid() -> Vec<BallSpec> {
    grid(&DEFAULT_DIMENSIONS, &DEFAULT_RADII).expect("default grid is valid")
}

pub fn grid(dimensions: &[u32], radii: &[f64]) -> Result<Vec<BallSpec>> {
    let mut out = Vec::with_capacity(dimensions.len() * radii.len());
    for &n in dimensions {
        for &r in radii {
            out.push(BallSpec::hyperbolic(n, r)?);
        }
    }
    Ok(out)
}

/// Tracks the smallest margin seen by one check.
struct Tracker {
    name: &'static str,
    margin: f64,
    worst: String,
    error: Option<String>,
}

impl Tracker {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            margin: f64::INFINITY,
            worst: String::new(),
            error: None,
        }
    }

    fn observe(&mut self, margin: f64, at: impl FnOnce() -> String) {
        let margin = if margin.is_nan() {
            f64::NEG_INFINITY
        } else {
            margin
        };
        if margin < self.margin || self.worst.is_empty() {
            self.margin = margin;
            self.worst = at();
        }
    }

    fn fail(&mut self, at: String) {
        if self.error.is_none() {
            self.error = Some(at);
        }
    }

    fn finish(self) -> CheckResult {
        if let Some(e) = self.error {
            return CheckResult {
                check_name: self.name.into(),
                passed: false,
                worst_case: e,
                margin: self.margin.clamp(-f64::MAX, 0.0),
            };
        }
        if self.worst.is_empty() {
            return CheckResult {
                check_name: self.name.into(),
                passed: false,
                worst_case: "no applicable points".into(),
                margin: 0.0,
            };
        }
        let margin = self.margin.clamp(-f64::MAX, f64::MAX);
        CheckResult {
            check_name: self.name.into(),
            passed: margin > 0.0,
            worst_case: self.worst,
            margin,
        }
    }
}

fn describe(spec: &BallSpec) -> String {
    format!("n={} k={} r={}", spec.n, spec.k, spec.r)
}

/// Solver outputs shared by several checks.
struct PointData {
    spec: BallSpec,
    radial: Result<EigenResult>,
    angular: Result<EigenResult>,
    fd_radial: Result<EigenResult>,
    fd_angular: Result<EigenResult>,
}

fn solve_point(spec: &BallSpec, config: &SolverConfig) -> PointData {
    PointData {
        spec: *spec,
        radial: first_eigenvalue(spec, RadialMode::RADIAL, config),
        angular: first_eigenvalue(spec, RadialMode::FIRST_ANGULAR, config),
        fd_radial: fd_eigenvalue(spec, RadialMode::RADIAL, FD_MESH),
        fd_angular: fd_eigenvalue(spec, RadialMode::FIRST_ANGULAR, FD_MESH),
    }
}

fn scaled_bounds(spec: &BallSpec, lambda2: bool) -> Vec<BoundReport> {
    let b = ball_bounds(spec);
    if lambda2 {
        b.lambda2
    } else {
        b.lambda1
    }
}

/// Bounds that coincide with the eigenvalue itself (n = 3 radial mode).
fn is_equality(b: &BoundReport, n: u32) -> bool {
    b.kind == BoundKind::Exact || (n == 3 && b.name == "lambda1_upper_sine")
}

fn sandwich(name: &'static str, points: &[PointData], lambda2: bool) -> CheckResult {
    let mut t = Tracker::new(name);
    for p in points {
        let res = if lambda2 { &p.angular } else { &p.radial };
        let res = match res {
            Ok(r) => r,
            Err(e) => {
                t.fail(format!("{}: {e}", describe(&p.spec)));
                continue;
            }
        };
        let lam = res.lambda;
        let slack = ERROR_MULTIPLE * res.error_estimate;
        for b in scaled_bounds(&p.spec, lambda2).iter().filter(|b| b.valid) {
            if is_equality(b, p.spec.n) {
                continue;
            }
            let gap = match b.kind {
                BoundKind::Lower => lam - b.value,
                BoundKind::Upper => b.value - lam,
                BoundKind::Exact => unreachable!(),
            };
            t.observe((gap - slack) / lam, || {
                format!(
                    "{} {}: lambda={lam:.12e} bound={:.12e}",
                    describe(&p.spec),
                    b.name,
                    b.value
                )
            });
        }
    }
    t.finish()
}

fn n3_exactness(grid: &[BallSpec], config: &SolverConfig) -> CheckResult {
    let mut t = Tracker::new("n3_exactness");
    let keys: BTreeSet<(u64, u64)> = grid
        .iter()
        .map(|s| (s.k.to_bits(), s.r.to_bits()))
        .collect();
    let results: Vec<_> = keys
        .par_iter()
        .map(|&(k, r)| {
            let spec = BallSpec::new(3, f64::from_bits(k), f64::from_bits(r));
            (
                spec.clone(),
                spec.and_then(|s| first_eigenvalue(&s, RadialMode::RADIAL, config)),
            )
        })
        .collect();
    for (spec, res) in results {
        match (spec, res) {
            (Ok(spec), Ok(res)) => {
                let exact = spec.k * spec.k + PI * PI / (spec.r * spec.r);
                let rel = ((res.lambda - exact) / exact).abs();
                t.observe((EXACT_REL_TOL - rel) / EXACT_REL_TOL, || {
                    format!(
                        "{}: lambda={:.15e} exact={exact:.15e}",
                        describe(&spec),
                        res.lambda
                    )
                });
                // the sine-trial upper bound is attained at n = 3
                let ub = scaled_bounds(&spec, false)
                    .into_iter()
                    .find(|b| b.name == "lambda1_upper_sine")
                    .expect("bound present");
                let rel = ((res.lambda - ub.value) / exact).abs();
                t.observe((EXACT_REL_TOL - rel) / EXACT_REL_TOL, || {
                    format!("{}: lambda1_upper_sine={:.15e}", describe(&spec), ub.value)
                });
            }
            (_, Err(e)) | (Err(e), _) => t.fail(format!("n=3: {e}")),
        }
    }
    t.finish()
}

fn scaling_invariance(points: &[PointData], config: &SolverConfig) -> CheckResult {
    let mut t = Tracker::new("scaling_invariance");
    let rows: Vec<_> = points
        .par_iter()
        .flat_map(|p| {
            SCALING_FACTORS.par_iter().map(move |&c| {
                let scaled = BallSpec::new(p.spec.n, p.spec.k / c, c * p.spec.r)
                    .and_then(|s| first_eigenvalue(&s, RadialMode::RADIAL, config));
                (p, c, scaled)
            })
        })
        .collect();
    for (p, c, scaled) in rows {
        match (&p.radial, &scaled) {
            (Ok(base), Ok(scaled)) => {
                let want = base.lambda / (c * c);
                let rel = ((scaled.lambda - want) / want).abs();
                t.observe((EXACT_REL_TOL - rel) / EXACT_REL_TOL, || {
                    format!("{} c={c}: rel diff {rel:.3e}", describe(&p.spec))
                });
            }
            (Err(e), _) | (_, Err(e)) => t.fail(format!("{} c={c}: {e}", describe(&p.spec))),
        }
    }
    t.finish()
}

fn oracle_equivalence(points: &[PointData]) -> CheckResult {
    let mut t = Tracker::new("oracle_equivalence");
    for p in points {
        for (l, shoot, fd) in [(0, &p.radial, &p.fd_radial), (1, &p.angular, &p.fd_angular)] {
            match (shoot, fd) {
                (Ok(s), Ok(f)) => {
                    let rel = ((s.lambda - f.lambda) / s.lambda).abs();
                    t.observe((ORACLE_REL_TOL - rel) / ORACLE_REL_TOL, || {
                        format!(
                            "{} l={l}: shooting={:.12e} fd={:.12e} rel {rel:.3e}",
                            describe(&p.spec),
                            s.lambda,
                            f.lambda
                        )
                    });
                }
                (Err(e), _) | (_, Err(e)) => t.fail(format!("{} l={l}: {e}", describe(&p.spec))),
            }
        }
    }
    t.finish()
}

fn gap_sandwich(points: &[PointData]) -> CheckResult {
    let mut t = Tracker::new("gap_sandwich");
    for p in points {
        match (&p.radial, &p.angular) {
            (Ok(a), Ok(b)) => {
                let gb = ball_bounds(&p.spec).gap;
                let g = b.lambda - a.lambda;
                let err = ERROR_MULTIPLE * (a.error_estimate + b.error_estimate);
                let m = ((g - gb.lower).min(gb.upper - g) - err) / g.abs().max(f64::MIN_POSITIVE);
                t.observe(m, || {
                    format!(
                        "{}: gap={g:.12e} in [{:.12e}, {:.12e}]",
                        describe(&p.spec),
                        gb.lower,
                        gb.upper
                    )
                });
            }
            (Err(e), _) | (_, Err(e)) => t.fail(format!("{}: {e}", describe(&p.spec))),
        }
    }
    t.finish()
}

fn dimensions(grid: &[BallSpec]) -> Vec<u32> {
    grid.iter()
        .map(|s| s.n)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Small-ball limits of `r²λ₁` and `r²(λ₂ - λ₁)` against Bessel zeros.
pub fn small_ball_margins(n: u32, config: &SolverConfig) -> Result<(f64, f64, String)> {
    let r = SMALL_BALL_RADIUS;
    let spec = BallSpec::hyperbolic(n, r)?;
    let g = gap(&spec, config)?;
    let p = 0.5 * f64::from(n) - 1.0;
    let j_lo = bessel_first_zero(p)?;
    let j_hi = bessel_first_zero(p + 1.0)?;
    let d1 = (r * r * g.lambda1 - j_lo * j_lo).abs();
    let d2 = (r * r * g.gap - (j_hi * j_hi - j_lo * j_lo)).abs();
    let at = format!(
        "n={n} r={r}: r^2*lambda1={:.9} vs {:.9}, r^2*gap={:.9} vs {:.9}",
        r * r * g.lambda1,
        j_lo * j_lo,
        r * r * g.gap,
        j_hi * j_hi - j_lo * j_lo
    );
    Ok((SMALL_BALL_LAMBDA_TOL - d1, SMALL_BALL_GAP_TOL - d2, at))
}

fn small_ball(grid: &[BallSpec], config: &SolverConfig) -> CheckResult {
    let mut t = Tracker::new("small_ball_bessel");
    let rows: Vec<_> = dimensions(grid)
        .into_par_iter()
        .map(|n| (n, small_ball_margins(n, config)))
        .collect();
    for (n, row) in rows {
        match row {
            Ok((m1, m2, at)) => t.observe(
                (m1 / SMALL_BALL_LAMBDA_TOL).min(m2 / SMALL_BALL_GAP_TOL),
                || at,
            ),
            Err(e) => t.fail(format!("n={n}: {e}")),
        }
    }
    t.finish()
}

/// `R³·gap ∈ (0, C(n)]` and `R²·gap` strictly decreasing over `radii`.
/// Returns the smallest normalized slack and where it occurs.
pub fn gap_decay_margin(n: u32, radii: &[f64], config: &SolverConfig) -> Result<(f64, String)> {
    let c_n = gap_constant(n);
    let gaps: Vec<_> = radii
        .par_iter()
        .map(|&r| BallSpec::hyperbolic(n, r).and_then(|s| gap(&s, config)))
        .collect::<Result<_>>()?;
    let mut margin = f64::INFINITY;
    let mut worst = String::new();
    for (&r, g) in radii.iter().zip(&gaps) {
        let cube = r.powi(3) * g.gap;
        let err = ERROR_MULTIPLE * r.powi(3) * g.gap_error;
        let m = (cube - err).min(c_n - cube - err) / c_n;
        if m < margin {
            margin = m;
            worst = format!("n={n} R={r}: R^3*gap={cube:.9} (C(n)={c_n:.9})");
        }
    }
    for (w, g) in radii.windows(2).zip(gaps.windows(2)) {
        let (a, b) = (w[0] * w[0] * g[0].gap, w[1] * w[1] * g[1].gap);
        let err = ERROR_MULTIPLE * (w[0] * w[0] * g[0].gap_error + w[1] * w[1] * g[1].gap_error);
        let m = (a - b - err) / a;
        if m < margin {
            margin = m;
            worst = format!("n={n} R={}->{}: R^2*gap {a:.9} -> {b:.9}", w[0], w[1]);
        }
    }
    Ok((margin, worst))
}

fn gap_decay(grid: &[BallSpec], config: &SolverConfig) -> CheckResult {
    let mut t = Tracker::new("gap_decay");
    for n in dimensions(grid) {
        match gap_decay_margin(n, &DECAY_RADII, config) {
            Ok((m, at)) => t.observe(m, || at),
            Err(e) => t.fail(format!("n={n}: {e}")),
        }
    }
    t.finish()
}

/// Strict decrease and negativity of `φ = (log u₁)'`, and `φ'(0) = -λ₁/n`.
pub fn log_concavity_margin(res: &EigenResult) -> Result<(f64, String)> {
    let phi = log_derivative_profile(res)?;
    let scale = phi
        .iter()
        .map(|p| p.1.abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut margin = f64::INFINITY;
    let mut worst = String::new();
    for w in phi.windows(2) {
        let m = (w[0].1 - w[1].1) / scale;
        if m < margin {
            margin = m;
            worst = format!(
                "phi({:.6})={:.9e} -> phi({:.6})={:.9e}",
                w[0].0, w[0].1, w[1].0, w[1].1
            );
        }
    }
    if let Some(&(t, v)) = phi.iter().max_by(|a, b| a.1.total_cmp(&b.1)) {
        let m = -v / scale;
        if m < margin {
            margin = m;
            worst = format!("phi({t:.6})={v:.9e} not negative");
        }
    }
    // φ(t)/t = φ'(0) + O(t²): Richardson on the first two samples
    let (t1, p1) = phi[0];
    let (t2, p2) = phi[1];
    let ratio = t2 / t1;
    let slope0 = (ratio * ratio * p1 / t1 - p2 / t2) / (ratio * ratio - 1.0);
    let want = -res.lambda / f64::from(res.spec.n);
    let rel = ((slope0 - want) / want).abs();
    let m = (LOG_SLOPE_REL_TOL - rel) / LOG_SLOPE_REL_TOL;
    if m < margin {
        margin = m;
        worst = format!("phi'(0)={slope0:.9e} vs -lambda1/n={want:.9e}");
    }
    Ok((margin, worst))
}

fn log_concavity(points: &[PointData]) -> CheckResult {
    let mut t = Tracker::new("log_concavity");
    for p in points {
        match p
            .radial
            .as_ref()
            .map_err(Clone::clone)
            .and_then(log_concavity_margin)
        {
            Ok((m, at)) => t.observe(m, || format!("{}: {at}", describe(&p.spec))),
            Err(e) => t.fail(format!("{}: {e}", describe(&p.spec))),
        }
    }
    t.finish()
}

/// The 200-point inradius grid on (0, 50].
pub fn bm_grid() -> Vec<f64> {
    (1..=200).map(|i| 50.0 * i as f64 / 200.0).collect()
}

fn borisenko_miquel() -> CheckResult {
    let mut t = Tracker::new("bm_excess");
    let rs = bm_grid();
    let mut prev: Option<(f64, f64, f64)> = None;
    for &r in &rs {
        match (bm_excess(r), bm_deficit(r)) {
            (Ok(e), Ok(d)) => {
                // excess < ln 2 ⟺ deficit > 0, resolvable where the excess rounds to ln 2
                t.observe(if e <= LN_2 { 1.0 } else { -1.0 }, || {
                    format!("r={r}: excess={e:.17}")
                });
                t.observe(if d > 0.0 { 1.0 } else { -1.0 }, || {
                    format!("r={r}: deficit={d:e}")
                });
                if let Some((r0, e0, d0)) = prev {
                    let m = if e >= e0 && d < d0 {
                        (d0 - d) / d0
                    } else {
                        -1.0
                    };
                    t.observe(m, || format!("r={r0}->{r}: deficit {d0:e} -> {d:e}"));
                }
                prev = Some((r, e, d));
            }
            (Err(err), _) | (_, Err(err)) => t.fail(format!("r={r}: {err}")),
        }
    }
    match bm_excess(20.0) {
        Ok(e) => {
            let dist = LN_2 - e;
            t.observe((BM_SHARPNESS_TOL - dist) / BM_SHARPNESS_TOL, || {
                format!("r=20: ln2 - excess = {dist:e}")
            });
        }
        Err(err) => t.fail(format!("r=20: {err}")),
    }
    t.finish()
}

fn quadrature_constant() -> CheckResult {
    let mut t = Tracker::new("quadrature_constant");
    match integral_t2_csch2(0.0, f64::INFINITY) {
        Ok(q) => {
            let d = (q.value - PI * PI / 6.0).abs();
            t.observe((QUADRATURE_TOL - d) / QUADRATURE_TOL, || {
                format!("integral={:.17} pi^2/6={:.17}", q.value, PI * PI / 6.0)
            });
        }
        Err(e) => t.fail(e.to_string()),
    }
    t.finish()
}

/// Sine-trial Rayleigh quotient between the solver eigenvalue and the
/// closed-form upper bound, for one `(n, α, r)`.
pub fn rayleigh_chain_margin(
    n: u32,
    alpha: f64,
    r: f64,
    config: &SolverConfig,
) -> Result<(f64, String)> {
    let ray = rayleigh_upper(n, alpha, r)?;
    let closed = lambda1_alpha_upper(n, alpha, r)?;
    let ev = schrodinger_first_eigenvalue(&PotentialSpec::alpha(n, alpha)?, r, config)?;
    // both are equalities at α = 0, so allow rounding and solver error
    let upper = (closed - ray) / ray + 1e-12;
    let lower = (ray - ev.value + ERROR_MULTIPLE * ev.error_estimate) / ray;
    Ok((
        upper.min(lower),
        format!(
            "n={n} alpha={alpha} r={r}: solver={:.12e} rayleigh={ray:.12e} closed={closed:.12e}",
            ev.value
        ),
    ))
}

/// The `(n, α, r)` grid for the Rayleigh chain: α ∈ {max(n-3, 0), n+1},
/// r ∈ {1, 5, 20}.
pub fn rayleigh_grid(dims: &[u32]) -> Vec<(u32, f64, f64)> {
    let mut out = Vec::new();
    for &n in dims {
        let nf = f64::from(n);
        for alpha in [(nf - 3.0).max(0.0), nf + 1.0] {
            for r in [1.0, 5.0, 20.0] {
                out.push((n, alpha, r));
            }
        }
    }
    out
}

fn prop_chain(grid: &[BallSpec], config: &SolverConfig) -> CheckResult {
    let mut t = Tracker::new("rayleigh_chain");
    let rows: Vec<_> = rayleigh_grid(&dimensions(grid))
        .into_par_iter()
        .map(|(n, a, r)| ((n, a, r), rayleigh_chain_margin(n, a, r, config)))
        .collect();
    for ((n, a, r), row) in rows {
        match row {
            Ok((m, at)) => t.observe(m, || at),
            Err(e) => t.fail(format!("n={n} alpha={a} r={r}: {e}")),
        }
    }
    t.finish()
}

fn horoconvex_certificate(grid: &[BallSpec], config: &SolverConfig) -> CheckResult {
    let mut t = Tracker::new("horoconvex_certificate");
    for n in dimensions(grid) {
        match certify_gap_bound(&HoroconvexInput { n, diameter: 10.0 }, config) {
            Ok(c) => {
                let m = (c.certified_bound - c.reference_numeric_gap) / c.certified_bound;
                t.observe(m, || {
                    format!(
                        "n={n} D=10: gap(B_2.5)={:.9} certified={:.9}",
                        c.reference_numeric_gap, c.certified_bound
                    )
                });
            }
            Err(e) => t.fail(format!("n={n}: {e}")),
        }
    }
    t.finish()
}

/// Runs every check on `grid`. Results are in a fixed order and depend only
/// on `(grid, config)`.
pub fn run_all(grid: &[BallSpec], config: &SolverConfig) -> Result<Vec<CheckResult>> {
    if grid.is_empty() {
        return domain("verification grid is empty");
    }
    config.validate()?;
    for s in grid {
        s.validate()?;
    }
    let points: Vec<PointData> = grid.par_iter().map(|s| solve_point(s, config)).collect();

    Ok(vec![
        sandwich("lambda1_sandwich", &points, false),
        sandwich("lambda2_sandwich", &points, true),
        n3_exactness(grid, config),
        scaling_invariance(&points, config),
        oracle_equivalence(&points),
        gap_sandwich(&points),
        small_ball(grid, config),
        gap_decay(grid, config),
        log_concavity(&points),
        borisenko_miquel(),
        quadrature_constant(),
        prop_chain(grid, config),
        horoconvex_certificate(grid, config),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_is_rejected() {
        assert!(run_all(&[], &SolverConfig::default()).is_err());
    }

    #[test]
    fn minimal_grid_passes_and_is_deterministic() {
        let g = grid(&[3], &[2.0]).unwrap();
        let cfg = SolverConfig::default();
        let a = run_all(&g, &cfg).unwrap();
        let b = run_all(&g, &cfg).unwrap();
        assert_eq!(a, b);
        for c in &a {
            assert!(c.passed, "{c:?}");
            assert!(c.margin > 0.0);
        }
        let exact = a.iter().find(|c| c.check_name == "n3_exactness").unwrap();
        assert!(exact.margin <= 1.0);
    }

    #[test]
    fn solver_errors_become_failed_checks() {
        // a radius below the degenerate threshold of this config
        let cfg = SolverConfig {
            t0_factor: 1e-3,
            ..SolverConfig::default()
        };
        let g = vec![BallSpec::hyperbolic(2, 0.5).unwrap()];
        let report = run_all(&g, &cfg).unwrap();
        let s = report
            .iter()
            .find(|c| c.check_name == "lambda1_sandwich")
            .unwrap();
        assert!(!s.passed);
        assert!(s.margin <= 0.0);
        assert!(s.worst_case.contains("degenerate"));
    }

    #[test]
    fn tracker_keeps_the_smallest_margin() {
        let mut t = Tracker::new("x");
        t.observe(0.5, || "a".into());
        t.observe(0.1, || "b".into());
        t.observe(0.3, || "c".into());
        let r = t.finish();
        assert!(r.passed);
        assert_eq!((r.worst_case.as_str(), r.margin), ("b", 0.1));
        let mut t = Tracker::new("y");
        t.observe(-0.2, || "bad".into());
        assert!(!t.finish().passed);
        assert!(!Tracker::new("z").finish().passed);
    }

    #[test]
    fn report_serializes_with_spec_field_names() {
        let r = CheckResult {
            check_name: "c".into(),
            passed: true,
            worst_case: "w".into(),
            margin: 0.5,
        };
        let v = serde_json::to_value(&r).unwrap();
        for key in ["check_name", "passed", "worst_case", "margin"] {
            assert!(v.get(key).is_some());
        }
    }
}
