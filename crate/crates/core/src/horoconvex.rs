//! Gap bound for horoconvex domains of ℍⁿ.
//!
//! A horoconvex domain of diameter `D` contains a ball of radius at least
//! `D/2 - ln 2`, since its circumradius exceeds its inradius by less than
//! `ln 2`. For `D ≥ 4 ln 2` that radius is at least `D/4`; the first
//! eigenvalue of the domain is then matched by a ball of radius `R_Ω ≥ D/4`,
//! and the ball gap bound `C(n)/R³` gives `λ₂ - λ₁ ≤ 64 C(n) / D³`.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::bounds::gap_constant;
use crate::eigensolve::{gap, BallSpec, SolverConfig};
use crate::error::{domain, Result};

/// Smallest diameter for which the certificate applies.
pub const MIN_DIAMETER: f64 = 4.0 * LN_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoroconvexInput {
    pub n: u32,
    #[serde(rename = "D")]
    pub diameter: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapCertificate {
    /// `64 C(n) / D³`.
    pub certified_bound: f64,
    /// `D / 4`, a lower bound for the radius of the eigenvalue-matched ball.
    pub ball_radius_floor: f64,
    /// Gap of the ball `B_{D/4}`; informational, not a bound for the domain.
    pub reference_numeric_gap: f64,
    pub assumptions: Vec<String>,
}

/// Upper bound on circumradius minus inradius of a horoconvex domain with
/// inradius `r`: `ln((1+√τ)²/(1+τ))`, `τ = tanh(r/2)`. Always below `ln 2`.
pub fn bm_excess(r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("inradius must be positive, got {r}"));
    }
    let tau = (0.5 * r).tanh();
    if tau < 0.5 {
        // (1+√τ)²/(1+τ) = 1 + 2√τ/(1+τ)
        Ok((2.0 * tau.sqrt() / (1.0 + tau)).ln_1p())
    } else {
        Ok(LN_2 - bm_deficit(r)?)
    }
}

/// `ln 2 - bm_excess(r)`, computed without cancellation.
///
/// The excess rounds to `ln 2` in double precision once `r` exceeds about 18;
/// the deficit stays resolvable until `e^{-2r}` underflows.
pub fn bm_deficit(r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return domain(format!("inradius must be positive, got {r}"));
    }
    let tau = (0.5 * r).tanh();
    // 1 - τ = 2 / (e^r + 1), 1 - √τ = (1 - τ) / (1 + √τ)
    let one_minus_tau = 2.0 / (r.exp() + 1.0);
    let gap = one_minus_tau / (1.0 + tau.sqrt());
    // ln 2 - ln((1+√τ)²/(1+τ)) = -ln(1 - (1-√τ)² / (2(1+τ)))
    Ok(-(-(gap * gap) / (2.0 * (1.0 + tau))).ln_1p())
}

/// `D/2 - ln 2`, the guaranteed inradius of a horoconvex domain of diameter
/// `D`. May be nonpositive for small `D`.
pub fn inradius_floor(diameter: f64) -> f64 {
    0.5 * diameter - LN_2
}

/// Certifies `λ₂(Ω) - λ₁(Ω) ≤ 64 C(n) / D³` for horoconvex `Ω ⊂ ℍⁿ` of
/// diameter `D ≥ 4 ln 2`, and reports the numeric gap of `B_{D/4}`.
pub fn certify_gap_bound(input: &HoroconvexInput, config: &SolverConfig) -> Result<GapCertificate> {
    let d = input.diameter;
    if input.n < 2 {
        return domain(format!("dimension must be at least 2, got {}", input.n));
    }
    if !d.is_finite() || !(d >= MIN_DIAMETER) {
        return domain(format!(
            "diameter {d} is below the threshold 4 ln 2 = {MIN_DIAMETER:.6} required for horoconvex domains"
        ));
    }
    let floor = 0.25 * d;
    let certified_bound = 64.0 * gap_constant(input.n) / d.powi(3);
    let ball = BallSpec::hyperbolic(input.n, floor)?;
    let reference = gap(&ball, config)?;
    Ok(GapCertificate {
        certified_bound,
        ball_radius_floor: floor,
        reference_numeric_gap: reference.gap,
        assumptions: vec![
            "the domain is horoconvex with diameter D".into(),
            "circumradius minus inradius < ln 2, so the inradius is at least D/2 - ln 2 >= D/4".into(),
            "the ball matching the first eigenvalue of the domain has radius R >= D/4 by domain monotonicity".into(),
            "Benguria-Linde: the gap of the domain is at most the gap of that ball".into(),
            "reference_numeric_gap is the gap of B_{D/4} and is not a certified bound".into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excess_vanishes_at_origin_and_saturates() {
        assert!(bm_excess(1e-12).unwrap() < 1e-5);
        let e2 = bm_excess(2.0).unwrap();
        // 30-digit value 0.688536497307474843116734913451
        assert!((e2 - 0.688_536_497_307_474_8).abs() < 1e-14);
        assert!((LN_2 - bm_excess(20.0).unwrap()).abs() < 1e-6);
        assert!(bm_excess(50.0).unwrap() <= LN_2);
        assert!(bm_deficit(50.0).unwrap() > 0.0);
        assert!(bm_excess(0.0).is_err());
    }

    #[test]
    fn deficit_matches_direct_form() {
        for r in [0.1f64, 1.0, 2.0, 5.0, 10.0] {
            let tau = (0.5 * r).tanh();
            let direct = LN_2 - ((1.0f64 + tau.sqrt()).powi(2) / (1.0 + tau)).ln();
            let d = bm_deficit(r).unwrap();
            assert!((d - direct).abs() < 1e-15, "r={r}");
        }
        // ln 2 - excess(20) to 30 digits: 1.06208856382289028439083189505e-18
        assert!((bm_deficit(20.0).unwrap() - 1.062_088_563_822_890_3e-18).abs() < 1e-30);
        let d: Vec<f64> = (1..=200)
            .map(|i| bm_deficit(i as f64 * 0.25).unwrap())
            .collect();
        assert!(d.windows(2).all(|w| w[1] < w[0]) && d[199] > 0.0);
    }

    #[test]
    fn excess_strictly_increasing() {
        let v: Vec<f64> = (1..=200)
            .map(|i| bm_excess(i as f64 * 0.05).unwrap())
            .collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn inradius_floor_cases() {
        assert_eq!(inradius_floor(2.0 * LN_2), 0.0);
        assert!((inradius_floor(10.0) - 4.306_852_819_440_055).abs() < 1e-14);
        assert!((inradius_floor(MIN_DIAMETER) - LN_2).abs() < 1e-15);
        for d in [MIN_DIAMETER, 3.0, 10.0, 100.0] {
            assert!(inradius_floor(d) >= 0.25 * d - 1e-15);
        }
    }

    #[test]
    fn rejects_small_diameter() {
        let err = certify_gap_bound(
            &HoroconvexInput {
                n: 2,
                diameter: 2.0,
            },
            &SolverConfig::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("4 ln 2"));
    }

    #[test]
    fn certificate_n2_d10() {
        let cert = certify_gap_bound(
            &HoroconvexInput {
                n: 2,
                diameter: 10.0,
            },
            &SolverConfig::default(),
        )
        .unwrap();
        // 64 (π⁴/4 + 4π²) / 1000
        assert!((cert.certified_bound - 4.085_164_183_222_915).abs() < 1e-12);
        assert_eq!(cert.ball_radius_floor, 2.5);
        assert!(cert.reference_numeric_gap > 0.0);
        assert!(cert.reference_numeric_gap <= cert.certified_bound);
    }

    #[test]
    fn certified_bound_cubic_scaling() {
        let cfg = SolverConfig::default();
        let a = certify_gap_bound(
            &HoroconvexInput {
                n: 3,
                diameter: 10.0,
            },
            &cfg,
        )
        .unwrap();
        let b = certify_gap_bound(
            &HoroconvexInput {
                n: 3,
                diameter: 20.0,
            },
            &cfg,
        )
        .unwrap();
        assert_eq!(a.certified_bound / b.certified_bound, 8.0);
    }
}
