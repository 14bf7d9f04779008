//! Perturbation determinants of the two `K = 0` sectors and the threshold
//! polynomials that govern their sign at the band edges.
//!
//! ```text
//! Δs(z)    = (1 + μ1 a11)(1 + μ2 a22) - μ1 μ2 a12²
//! Δa12(z)  = 1 + μ2 a_a12
//! A∓(μ)    = 1 ± (a11 μ1 + a22 μ2) + (a11 a22 - a12²) μ1 μ2        (a_ij at z = 0)
//!          = κ ((μ2 ± μ0)(μ1 ± 12) - 24),   κ = (12 a11 - 1)/24,   μ0 = 24 a11/(12 a11 - 1)
//! ```

use crate::afunc::{AEvaluator, AFunctions};
use crate::error::Result;
use crate::laplace;
use serde::{Deserialize, Serialize};
use std::ops::Neg;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingPair {
    /// On-site coupling.
    pub mu1: f64,
    /// Nearest-neighbour coupling.
    pub mu2: f64,
}

impl CouplingPair {
    pub const fn new(mu1: f64, mu2: f64) -> Self {
        CouplingPair { mu1, mu2 }
    }

    /// Operator norm of the interaction: the rank-one pieces are mutually
    /// orthogonal with weights `μ1, μ2, μ2, μ2`.
    pub fn interaction_norm(&self) -> f64 {
        self.mu1.abs().max(self.mu2.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.mu1.is_finite() && self.mu2.is_finite()
    }
}

impl Neg for CouplingPair {
    type Output = CouplingPair;
    fn neg(self) -> CouplingPair {
        CouplingPair::new(-self.mu1, -self.mu2)
    }
}

/// Global constants of the model, fixed by the band-edge values of the
/// a-functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandEdgeConstants {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
    pub a_a12: f64,
    /// Asymptote offset of the critical hyperbolas.
    pub mu0: f64,
    /// `1 / a_a12(0)`: where the antisymmetric sectors acquire a bound state.
    pub mu2_crit: f64,
}

impl BandEdgeConstants {
    fn compute() -> Self {
        let a = laplace::afunctions(0.0).expect("z = 0 is admissible for the Bessel route");
        BandEdgeConstants {
            a11: a.a11,
            a12: a.a12,
            a22: a.a22,
            a_a12: a.a_a12,
            mu0: 24.0 * a.a11 / (12.0 * a.a11 - 1.0),
            mu2_crit: 1.0 / a.a_a12,
        }
    }

    /// `κ = (12 a11(0) - 1)/24 > 0`, the prefactor of the factored polynomials.
    pub fn kappa(&self) -> f64 {
        (12.0 * self.a11 - 1.0) / 24.0
    }

    pub fn as_afunctions(&self) -> AFunctions {
        AFunctions { a11: self.a11, a12: self.a12, a22: self.a22, a_a12: self.a_a12 }
    }
}

/// Band-edge constants, computed once per process by the Bessel route.
pub fn band_edge_constants() -> &'static BandEdgeConstants {
    static CONSTANTS: OnceLock<BandEdgeConstants> = OnceLock::new();
    CONSTANTS.get_or_init(BandEdgeConstants::compute)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdPolynomials {
    pub a_minus: f64,
    pub a_plus: f64,
    pub mu0: f64,
    pub mu2_crit: f64,
}

/// Threshold polynomials in factored form.
pub fn threshold_polys(c: CouplingPair) -> ThresholdPolynomials {
    let k = band_edge_constants();
    let kappa = k.kappa();
    ThresholdPolynomials {
        a_minus: kappa * ((c.mu2 + k.mu0) * (c.mu1 + 12.0) - 24.0),
        a_plus: kappa * ((c.mu2 - k.mu0) * (c.mu1 - 12.0) - 24.0),
        mu0: k.mu0,
        mu2_crit: k.mu2_crit,
    }
}

/// `A∓` from the band-edge a-values directly, before any factoring.
pub fn threshold_polys_expanded(c: CouplingPair) -> (f64, f64) {
    let k = band_edge_constants();
    let linear = k.a11 * c.mu1 + k.a22 * c.mu2;
    let quad = (k.a11 * k.a22 - k.a12 * k.a12) * c.mu1 * c.mu2;
    (1.0 + linear + quad, 1.0 - linear + quad)
}

pub fn delta_s_from(a: &AFunctions, c: CouplingPair) -> f64 {
    (1.0 + c.mu1 * a.a11) * (1.0 + c.mu2 * a.a22) - c.mu1 * c.mu2 * a.a12 * a.a12
}

pub fn delta_a12_from(a: &AFunctions, mu2: f64) -> f64 {
    1.0 + mu2 * a.a_a12
}

pub fn delta_s(ev: &AEvaluator, c: CouplingPair, z: f64) -> Result<f64> {
    Ok(delta_s_from(&ev.eval(z)?, c))
}

pub fn delta_a12(ev: &AEvaluator, mu2: f64, z: f64) -> Result<f64> {
    Ok(delta_a12_from(&ev.eval(z)?, mu2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn empty_perturbation() {
        let ev = AEvaluator::new(32, 0.25).unwrap();
        for z in [-7.0, -0.1, 30.0] {
            assert_eq!(delta_s(&ev, CouplingPair::new(0.0, 0.0), z).unwrap(), 1.0);
            assert_eq!(delta_a12(&ev, 0.0, z).unwrap(), 1.0);
        }
        assert!(matches!(delta_s(&ev, CouplingPair::new(1.0, 1.0), 12.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn one_channel_reduction() {
        let ev = AEvaluator::new(32, 0.25).unwrap();
        let a = ev.eval(-2.0).unwrap();
        let d = delta_s(&ev, CouplingPair::new(-3.5, 0.0), -2.0).unwrap();
        assert!((d - (1.0 - 3.5 * a.a11)).abs() < 1e-15);
    }

    #[test]
    fn origin_and_line_values() {
        let t = threshold_polys(CouplingPair::new(0.0, 0.0));
        assert!((t.a_minus - 1.0).abs() < 1e-12 && (t.a_plus - 1.0).abs() < 1e-12);
        let k = band_edge_constants();
        for mu2 in [-3.0, 0.0, 7.0] {
            let t = threshold_polys(CouplingPair::new(-12.0, mu2));
            assert!((t.a_minus + (12.0 * k.a11 - 1.0)).abs() < 1e-12);
        }
        assert!(k.mu0 > 2.0 && k.mu2_crit > 0.0);
    }

    #[test]
    fn sign_symmetry_is_exact() {
        for (m1, m2) in [(1.5, -2.0), (-20.0, 13.0), (0.0, 9.0)] {
            let c = CouplingPair::new(m1, m2);
            assert_eq!(threshold_polys(c).a_minus, threshold_polys(-c).a_plus);
        }
    }
}
