//! Finite-difference check on the weighted radial form
//!
//! ```text
//! -(w u')' + q w u = λ w u,   w = sinh^{n-1}(kt),   q = l(l+n-2) k² / sinh²(kt)
//! ```
//!
//! Unknowns sit at cell centres `t_i = (i - 1/2) h`, fluxes at `i h`; the
//! flux through the origin vanishes with `w(0) = 0`, and the Dirichlet node
//! `t_{N+1} = r` closes the mesh. Symmetric scaling by `w_i^{1/2}` turns the
//! generalized problem into a symmetric tridiagonal one, whose smallest
//! eigenvalue is isolated by Sturm-sequence bisection.

use super::{interior_sign_changes, BallSpec, EigenResult, Method, RadialMode};
use crate::error::{domain, Result};
use crate::specfun::{csch_sq_pos, ln_sinh_pos};

struct Tridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
    nodes: Vec<f64>,
    h: f64,
}

fn assemble(spec: &BallSpec, l: u32, cells: usize) -> Tridiagonal {
    let k = spec.k;
    let h = spec.r / (cells as f64 + 0.5);
    let inv_h2 = 1.0 / (h * h);
    let p = f64::from(spec.n) - 1.0;
    let ang = f64::from(l) * (f64::from(l) + p - 1.0) * k * k;

    let nodes: Vec<f64> = (1..=cells).map(|i| (i as f64 - 0.5) * h).collect();
    let ln_w_node: Vec<f64> = nodes.iter().map(|&t| p * ln_sinh_pos(k * t)).collect();
    // faces 1..=cells; face 0 is the origin with zero weight
    let ln_w_face: Vec<f64> = (1..=cells)
        .map(|i| p * ln_sinh_pos(k * i as f64 * h))
        .collect();

    let mut diag = Vec::with_capacity(cells);
    let mut off = Vec::with_capacity(cells.saturating_sub(1));
    for i in 0..cells {
        let right = (ln_w_face[i] - ln_w_node[i]).exp();
        let left = if i == 0 {
            0.0
        } else {
            (ln_w_face[i - 1] - ln_w_node[i]).exp()
        };
        diag.push((left + right) * inv_h2 + ang * csch_sq_pos(k * nodes[i]));
        if i + 1 < cells {
            let e = (ln_w_face[i] - 0.5 * (ln_w_node[i] + ln_w_node[i + 1])).exp();
            off.push(-e * inv_h2);
        }
    }
    Tridiagonal {
        diag,
        off,
        nodes,
        h,
    }
}

/// Number of eigenvalues strictly below `x` (negative pivots of `T - x I`).
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = if i == 0 {
            diag[0] - x
        } else {
            let prev = if q == 0.0 {
                f64::EPSILON * (diag[i - 1].abs() + 1.0)
            } else {
                q
            };
            diag[i] - x - coupling / prev
        };
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn smallest_eigenvalue(t: &Tridiagonal) -> f64 {
    let n = t.diag.len();
    let mut lo = f64::INFINITY;
    for i in 0..n {
        let left = if i > 0 { t.off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { t.off[i].abs() } else { 0.0 };
        lo = lo.min(t.diag[i] - left - right);
    }
    // any diagonal entry is a Rayleigh quotient
    let mut hi = t.diag.iter().copied().fold(f64::INFINITY, f64::min);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(&t.diag, &t.off, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Inverse iteration for the eigenvector nearest `shift` (Thomas algorithm).
fn eigenvector(t: &Tridiagonal, shift: f64) -> Vec<f64> {
    let n = t.diag.len();
    let mut v = vec![1.0; n];
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    for _ in 0..3 {
        // forward sweep
        let mut denom = t.diag[0] - shift;
        c[0] = if n > 1 { t.off[0] / denom } else { 0.0 };
        d[0] = v[0] / denom;
        for i in 1..n {
            denom = t.diag[i] - shift - t.off[i - 1] * c[i - 1];
            if i + 1 < n {
                c[i] = t.off[i] / denom;
            }
            d[i] = (v[i] - t.off[i - 1] * d[i - 1]) / denom;
        }
        v[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            v[i] = d[i] - c[i] * v[i + 1];
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut v {
            *x /= norm;
        }
    }
    v
}

/// First Dirichlet eigenvalue of mode `mode` by finite differences on
/// meshes of `mesh_size` and `2·mesh_size` cells, Richardson-extrapolated.
///
/// Works at the ball's own curvature, without rescaling to `k = 1`.
pub fn fd_eigenvalue(spec: &BallSpec, mode: RadialMode, mesh_size: usize) -> Result<EigenResult> {
    spec.validate()?;
    if mesh_size < 100 {
        return domain(format!("mesh_size must be at least 100, got {mesh_size}"));
    }
    let coarse = assemble(spec, mode.l, mesh_size);
    let fine = assemble(spec, mode.l, 2 * mesh_size);
    let (lam_c, lam_f) = rayon::join(
        || smallest_eigenvalue(&coarse),
        || smallest_eigenvalue(&fine),
    );
    let ratio = coarse.h / fine.h;
    let r2 = ratio * ratio;
    let lambda = (r2 * lam_f - lam_c) / (r2 - 1.0);
    let error_estimate = (lambda - lam_f).abs();

    // u_i = y_i / sqrt(w_i)
    let y = eigenvector(&fine, lam_f - 1e-9 * lam_f.abs().max(1.0));
    let p = f64::from(spec.n) - 1.0;
    let mut samples: Vec<(f64, f64)> = fine
        .nodes
        .iter()
        .zip(&y)
        .map(|(&t, &yi)| (t, yi * (-0.5 * p * ln_sinh_pos(spec.k * t)).exp()))
        .collect();
    let peak = samples
        .iter()
        .map(|s| s.1)
        .fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
    for s in &mut samples {
        s.1 /= peak;
    }
    samples.push((spec.r, 0.0));
    // cell centres are all interior; pad a leading point so the count skips none
    let mut padded = Vec::with_capacity(samples.len() + 1);
    padded.push((0.0, samples[0].1));
    padded.extend_from_slice(&samples);
    let oscillation_count = interior_sign_changes(&padded);

    Ok(EigenResult {
        lambda,
        error_estimate,
        oscillation_count,
        samples,
        method: Method::FiniteDifference,
        spec: *spec,
        mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_count_on_known_matrix() {
        // tridiag(-1, 2, -1) of size 4: eigenvalues 2 - 2cos(jπ/5)
        let diag = [2.0; 4];
        let off = [-1.0; 3];
        let eig: Vec<f64> = (1..=4)
            .map(|j| 2.0 - 2.0 * (j as f64 * std::f64::consts::PI / 5.0).cos())
            .collect();
        assert_eq!(sturm_count(&diag, &off, 0.0), 0);
        assert_eq!(sturm_count(&diag, &off, eig[0] + 1e-9), 1);
        assert_eq!(sturm_count(&diag, &off, eig[2] + 1e-9), 3);
        assert_eq!(sturm_count(&diag, &off, 10.0), 4);
        let t = Tridiagonal {
            diag: diag.to_vec(),
            off: off.to_vec(),
            nodes: vec![],
            h: 1.0,
        };
        assert!((smallest_eigenvalue(&t) - eig[0]).abs() < 1e-14);
    }

    #[test]
    fn eigenvector_is_positive_ground_state() {
        let spec = BallSpec::hyperbolic(3, 2.0).unwrap();
        let t = assemble(&spec, 0, 200);
        let lam = smallest_eigenvalue(&t);
        let v = eigenvector(&t, lam - 1e-9);
        let sign = v[0].signum();
        assert!(v.iter().all(|x| x * sign > 0.0));
    }

    #[test]
    fn rejects_coarse_mesh() {
        let spec = BallSpec::hyperbolic(2, 1.0).unwrap();
        assert!(fd_eigenvalue(&spec, RadialMode::RADIAL, 50).is_err());
    }

    #[test]
    fn mesh_consistency_n2_unit_ball() {
        let spec = BallSpec::hyperbolic(2, 1.0).unwrap();
        let a = fd_eigenvalue(&spec, RadialMode::RADIAL, 400).unwrap();
        let b = fd_eigenvalue(&spec, RadialMode::RADIAL, 800).unwrap();
        assert!(a.lambda.is_finite() && a.lambda > 0.0);
        assert!((a.lambda - b.lambda).abs() <= a.error_estimate + b.error_estimate);
        assert_eq!(a.oscillation_count, 0);
    }
}
