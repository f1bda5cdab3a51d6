//! Prüfer-angle shooting on the Schrödinger form `-ū'' + V ū = λ ū`.
//!
//! With `ū = ρ sin θ`, `ū' = ρ cos θ`:
//!
//! ```text
//! θ'      = cos²θ + (λ - V) sin²θ
//! (ln ρ)' = (1 + V - λ) sin θ cos θ
//! ```
//!
//! `θ` starts in `(0, π/2)` and can only cross multiples of `π` upwards, so
//! `θ(r)` counts the interior zeros and increases strictly with `λ`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{
    frobenius_init, schrodinger_potential, BallSpec, PotentialSpec, RadialMode, SolverConfig,
};
use crate::error::Result;
use crate::ode::{self, Tolerances};
use crate::specfun::{coth_pos, ln_sinh_pos};

/// Prüfer angle at the outer radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PruferEnd {
    pub theta: f64,
    /// `⌊θ(r)/π⌋`.
    pub zero_count: usize,
}

/// How the regular solution is started near the singular endpoint.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Start {
    /// Frobenius series of the radial form of ball mode `l`, transplanted
    /// through `ū = sinh(t)^{(n-1)/2} u`.
    BallMode { n: u32, l: u32 },
    /// `ū = t^a (1 + e₂ t²)` directly on the Schrödinger form.
    Power { a: f64 },
}

pub(crate) struct Shooter {
    potential: PotentialSpec,
    start: Start,
    r: f64,
    t0: f64,
    rtol: f64,
}

impl Shooter {
    pub(crate) fn new(
        potential: PotentialSpec,
        start: Start,
        r: f64,
        config: &SolverConfig,
    ) -> Self {
        Self {
            potential,
            start,
            r,
            t0: config.start_offset(r),
            rtol: config.ode_tolerance,
        }
    }

    /// `(θ(t0), ln ρ(t0))` of the regular solution.
    fn initial(&self, lambda: f64) -> (f64, f64) {
        let t0 = self.t0;
        match self.start {
            Start::BallMode { n, l } => {
                let (u0, du0) = frobenius_init(n, l, lambda, t0);
                let m = 0.5 * (f64::from(n) - 1.0);
                // ū' / sinh^m = m coth(t) u + u'
                let slope = m * coth_pos(t0) * u0 + du0;
                let theta = u0.atan2(slope);
                let ln_rho = m * ln_sinh_pos(t0) + 0.5 * (u0 * u0 + slope * slope).ln();
                (theta, ln_rho)
            }
            Start::Power { a } => {
                let v = self.potential;
                let e2 = (v.constant_part - v.csch2_coefficient / 3.0 - lambda) / (4.0 * a + 2.0);
                let s = 1.0 + e2 * t0 * t0;
                // ū = t^a s, ū' = t^{a-1} (a s + 2 e₂ t²)
                let slope = a * s + 2.0 * e2 * t0 * t0;
                let theta = (t0 * s).atan2(slope);
                let ln_rho = (a - 1.0) * t0.ln() + 0.5 * ((t0 * s).powi(2) + slope * slope).ln();
                (theta, ln_rho)
            }
        }
    }

    fn first_step(&self) -> f64 {
        0.1 * self.t0
    }

    pub(crate) fn shoot(&self, lambda: f64) -> Result<PruferEnd> {
        let (theta0, _) = self.initial(lambda);
        let v = self.potential;
        let mut rhs = |t: f64, y: &[f64; 1]| {
            let (s, c) = y[0].sin_cos();
            [c * c + (lambda - v.eval(t)) * s * s]
        };
        let tol = Tolerances {
            rtol: self.rtol,
            atol: [1e-300],
            max_steps: 5_000_000,
        };
        let p = ode::integrate(&mut rhs, self.t0, [theta0], self.r, self.first_step(), &tol)?;
        let theta = p.y[0];
        Ok(PruferEnd {
            theta,
            zero_count: (theta / PI).floor().max(0.0) as usize,
        })
    }

    /// Samples `u` (not `ū`) of the ball eigenfunction at `count` equispaced
    /// points of `[0, r]`, scaled so that `max |u| = 1`.
    pub(crate) fn sample(&self, lambda: f64, count: usize) -> Result<Vec<(f64, f64)>> {
        let m = match self.start {
            Start::BallMode { n, .. } => 0.5 * (f64::from(n) - 1.0),
            Start::Power { .. } => 0.0,
        };
        let at_origin = match self.start {
            Start::BallMode { l: 0, .. } => 1.0,
            _ => 0.0,
        };
        let (theta0, ln_rho0) = self.initial(lambda);
        let v = self.potential;
        let mut rhs = |t: f64, y: &[f64; 2]| {
            let (s, c) = y[0].sin_cos();
            let q = lambda - v.eval(t);
            [c * c + q * s * s, (1.0 - q) * s * c]
        };
        let tol = Tolerances {
            rtol: self.rtol,
            atol: [1e-300, self.rtol],
            max_steps: 5_000_000,
        };

        let mut raw = Vec::with_capacity(count);
        raw.push((0.0, at_origin, 0.0));
        let mut t = self.t0;
        let mut y = [theta0, ln_rho0];
        let mut h = self.first_step();
        for j in 1..count {
            let target = self.r * j as f64 / (count - 1) as f64;
            let p = ode::integrate(&mut rhs, t, y, target, h, &tol)?;
            t = target;
            y = p.y;
            h = p.h;
            // u = ρ sin θ / sinh^m, kept in log form until rescaling
            raw.push((target, y[0].sin(), y[1] - m * ln_sinh_pos(target)));
        }

        let peak = raw[1..]
            .iter()
            .map(|&(_, s, ln_amp)| ln_amp + s.abs().max(f64::MIN_POSITIVE).ln())
            .fold(f64::NEG_INFINITY, f64::max);
        let mut out: Vec<(f64, f64)> = raw
            .iter()
            .enumerate()
            .map(|(j, &(t, s, ln_amp))| {
                if j == 0 {
                    // the Frobenius normalization has u(0) = 1 for l = 0
                    (t, at_origin * (-peak).exp())
                } else {
                    (t, s * (ln_amp - peak).exp())
                }
            })
            .collect();
        let max = out.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
        if max > 0.0 {
            for p in &mut out {
                p.1 /= max;
            }
        }
        Ok(out)
    }
}

/// Prüfer angle `θ(r)` of the regular solution of mode `mode` at trial
/// eigenvalue `lambda`.
///
/// A ball with `k ≠ 1` is shot as its curvature-normalized problem at
/// `lambda / k²`, which has the same angle.
pub fn prufer_shoot(
    spec: &BallSpec,
    mode: RadialMode,
    lambda: f64,
    config: &SolverConfig,
) -> Result<PruferEnd> {
    let (norm, scale) = super::validated(spec, config)?;
    let shooter = Shooter::new(
        schrodinger_potential(norm.n, mode.l),
        Start::BallMode {
            n: norm.n,
            l: mode.l,
        },
        norm.r,
        config,
    );
    shooter.shoot(lambda / scale)
}
