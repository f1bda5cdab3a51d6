//! Dirichlet eigenvalues and the fundamental gap of geodesic balls in
//! hyperbolic space.
//!
//! The radial eigenvalue problems of a ball `B_r` in the space form of
//! curvature `-k²` are solved by Prüfer shooting on their Schrödinger form,
//! with a finite-difference discretization of the weighted radial form as an
//! independent check. Around the solvers sit closed-form eigenvalue and gap
//! bounds, the horoconvex gap certificate, and a verification harness that
//! checks every bound against the numerics.
//!
//! ```
//! use hypergap::{first_eigenvalue, BallSpec, RadialMode, SolverConfig};
//!
//! let ball = BallSpec::new(3, 1.0, 2.0).unwrap();
//! let res = first_eigenvalue(&ball, RadialMode::RADIAL, &SolverConfig::default()).unwrap();
//! let exact = 1.0 + std::f64::consts::PI.powi(2) / 4.0;
//! assert!((res.lambda - exact).abs() < 1e-8 * exact);
//! ```

// `!(x > 0.0)` rejects NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod eigensolve;
mod error;
pub mod horoconvex;
mod ode;
mod roots;
pub mod specfun;
pub mod sweep;
pub mod verify;

pub use bounds::{
    ball_bounds, gap_bounds, gap_constant, lambda1_alpha_upper, lambda1_bounds, lambda2_bounds,
    rayleigh_upper, BallBounds, BoundKind, BoundReport, GapBounds,
};
pub use eigensolve::{
    fd_eigenvalue, first_eigenvalue, frobenius_init, gap, log_derivative_profile, normalize,
    prufer_shoot, schrodinger_first_eigenvalue, schrodinger_potential, BallGap, BallSpec,
    EigenResult, Method, PotentialSpec, PruferEnd, RadialMode, SolverConfig,
};
pub use error::{Error, Result};
pub use horoconvex::{
    bm_deficit, bm_excess, certify_gap_bound, inradius_floor, GapCertificate, HoroconvexInput,
};
pub use specfun::{bessel_first_zero, csch_sq, integral_t2_csch2, QuadratureResult};
pub use sweep::{RadiusScale, SweepRow};
pub use verify::{run_all, CheckResult};
