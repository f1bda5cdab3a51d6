//! Shared fixtures for the criterion benches.

use hypergap::BallSpec;

/// Balls spanning the small, moderate and large radius regimes.
pub fn representative_balls() -> Vec<BallSpec> {
    [(2, 0.25), (2, 5.0), (3, 2.0), (4, 10.0), (6, 20.0)]
        .into_iter()
        .map(|(n, r)| BallSpec::hyperbolic(n, r).expect("valid ball"))
        .collect()
}
