//! Radius sweeps: solver values and every bound per radius, as CSV rows.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{gap_bounds, lambda1_bounds, lambda2_bounds, BoundReport};
use crate::eigensolve::{gap, BallGap, BallSpec, SolverConfig};
use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusScale {
    Linear,
    Log,
}

/// One radius of a sweep at curvature -1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: u32,
    pub r: f64,
    pub solve: BallGap,
    /// λ₁ bounds followed by λ₂ bounds, in their fixed order.
    pub bounds: Vec<BoundReport>,
    pub gap_lower: f64,
    pub gap_upper: f64,
    pub r2_gap: f64,
    pub r3_gap: f64,
}

/// `points` radii from `r_min` to `r_max` inclusive.
pub fn radii(r_min: f64, r_max: f64, points: usize, scale: RadiusScale) -> Result<Vec<f64>> {
    if !(r_min > 0.0) || !r_min.is_finite() || !r_max.is_finite() {
        return domain(format!("radius must be positive, got r_min = {r_min}"));
    }
    if !(r_min < r_max) {
        return domain(format!("r_min must be below r_max, got [{r_min}, {r_max}]"));
    }
    if points < 2 {
        return domain(format!("a sweep needs at least 2 points, got {points}"));
    }
    let last = (points - 1) as f64;
    let mut out: Vec<f64> = (0..points)
        .map(|i| {
            let s = i as f64 / last;
            match scale {
                RadiusScale::Linear => r_min + s * (r_max - r_min),
                RadiusScale::Log => (r_min.ln() + s * (r_max / r_min).ln()).exp(),
            }
        })
        .collect();
    out[0] = r_min;
    out[points - 1] = r_max;
    Ok(out)
}

pub fn sweep_row(n: u32, r: f64, config: &SolverConfig) -> Result<SweepRow> {
    let spec = BallSpec::hyperbolic(n, r)?;
    let solve = gap(&spec, config)?;
    let mut bounds = lambda1_bounds(n, r);
    bounds.extend(lambda2_bounds(n, r));
    let gb = gap_bounds(n, r);
    Ok(SweepRow {
        n,
        r,
        solve,
        bounds,
        gap_lower: gb.lower,
        gap_upper: gb.upper,
        r2_gap: r * r * solve.gap,
        r3_gap: r.powi(3) * solve.gap,
    })
}

/// Rows for every radius, computed in parallel and returned in input order.
pub fn sweep(n: u32, radii: &[f64], config: &SolverConfig) -> Result<Vec<SweepRow>> {
    radii.par_iter().map(|&r| sweep_row(n, r, config)).collect()
}

/// Column names, identical for every row.
pub fn header() -> Vec<String> {
    let mut cols: Vec<String> = [
        "n",
        "r",
        "lambda1",
        "lambda1_error",
        "lambda2",
        "lambda2_error",
        "gap",
        "gap_error",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let mut bounds = lambda1_bounds(2, 1.0);
    bounds.extend(lambda2_bounds(2, 1.0));
    for b in &bounds {
        cols.push(b.name.to_string());
        cols.push(format!("{}_valid", b.name));
    }
    cols.extend(
        ["gap_lower", "gap_upper", "r2_gap", "r3_gap"]
            .iter()
            .map(|s| s.to_string()),
    );
    cols
}

/// Fixed 12-significant-digit scientific notation.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.11e}")
}

impl SweepRow {
    pub fn record(&self) -> Vec<String> {
        let s = &self.solve;
        let mut rec = vec![self.n.to_string(), fmt_real(self.r)];
        for v in [
            s.lambda1,
            s.lambda1_error,
            s.lambda2,
            s.lambda2_error,
            s.gap,
            s.gap_error,
        ] {
            rec.push(fmt_real(v));
        }
        for b in &self.bounds {
            rec.push(fmt_real(b.value));
            rec.push(b.valid.to_string());
        }
        for v in [self.gap_lower, self.gap_upper, self.r2_gap, self.r3_gap] {
            rec.push(fmt_real(v));
        }
        rec
    }
}

/// Writes a header line and one line per row, `\n`-terminated.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header())?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()
}
