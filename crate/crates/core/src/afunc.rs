//! The a-functions `a11, a12, a22` (symmetric sector) and `a_a12`
//! (antisymmetric sector): resolvent integrals of products of interaction
//! functions, the only numerical input of the perturbation determinants.
//!
//! Two independent evaluation routes exist: midpoint torus quadrature
//! ([`QuadratureGrid::afunctions`]) and the Laplace–Bessel integral
//! ([`laplace::afunctions`]). [`AEvaluator`] dispatches between them: the
//! torus rule is used for `z ≤ -edge_delta`, the Bessel route inside
//! `(-edge_delta, 0)`, and values above the band come from the reflection
//! `p ↦ p + (π,π,π)`, which sends `E_0` to `24 - E_0`:
//!
//! ```text
//! a11(z) = -a11(24 - z)   a12(z) = a12(24 - z)   a22(z) = -a22(24 - z)   a_a12(z) = -a_a12(24 - z)
//! ```

use crate::basis::BasisFunction;
use crate::error::{Error, Result};
use crate::laplace;
use crate::quadrature::{check_outside_band, QuadratureGrid};
use serde::{Deserialize, Serialize};

pub const DEFAULT_QUADRATURE_N: usize = 64;
/// Width of the window below the band edge handled by the Bessel route.
pub const DEFAULT_EDGE_DELTA: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AKind {
    A11,
    A12,
    A22,
    AA12,
}

impl AKind {
    pub const ALL: [AKind; 4] = [AKind::A11, AKind::A12, AKind::A22, AKind::AA12];

    pub fn name(self) -> &'static str {
        match self {
            AKind::A11 => "a11",
            AKind::A12 => "a12",
            AKind::A22 => "a22",
            AKind::AA12 => "a_a12",
        }
    }

    /// Sign picked up under `z ↦ 24 - z`.
    pub fn reflection_sign(self) -> f64 {
        match self {
            AKind::A12 => 1.0,
            _ => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AFunctions {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
    pub a_a12: f64,
}

impl AFunctions {
    pub fn get(&self, kind: AKind) -> f64 {
        match kind {
            AKind::A11 => self.a11,
            AKind::A12 => self.a12,
            AKind::A22 => self.a22,
            AKind::AA12 => self.a_a12,
        }
    }

    pub fn all_finite(&self) -> bool {
        AKind::ALL.iter().all(|&k| self.get(k).is_finite())
    }

    /// Values at `24 - z` given values at `z`.
    pub fn reflected(&self) -> AFunctions {
        AFunctions { a11: -self.a11, a12: self.a12, a22: -self.a22, a_a12: -self.a_a12 }
    }

    /// `(a_ij)` of the symmetric sector.
    pub fn symmetric_matrix(&self) -> [[f64; 2]; 2] {
        [[self.a11, self.a12], [self.a12, self.a22]]
    }

    /// Residuals of `a12 = ((12-z) a11 - 1)/(2√6)` and `a22 = (12-z) a12/(2√6)`.
    pub fn identity_residuals(&self, z: f64) -> [f64; 2] {
        let s = 2.0 * 6f64.sqrt();
        [
            self.a12 - ((12.0 - z) * self.a11 - 1.0) / s,
            self.a22 - (12.0 - z) * self.a12 / s,
        ]
    }

    pub fn max_abs_diff(&self, other: &AFunctions) -> f64 {
        AKind::ALL.iter().map(|&k| (self.get(k) - other.get(k)).abs()).fold(0.0, f64::max)
    }
}

/// Evaluates a-functions anywhere outside `[0, 24]`.
#[derive(Debug, Clone)]
pub struct AEvaluator {
    grid: QuadratureGrid,
    edge_delta: f64,
}

impl AEvaluator {
    pub fn new(quadrature_n: usize, edge_delta: f64) -> Result<Self> {
        if !(edge_delta > 0.0 && edge_delta < 0.5) {
            return Err(Error::InvalidArgument(format!(
                "edge delta must lie in (0, 0.5), got {edge_delta}"
            )));
        }
        Ok(AEvaluator { grid: QuadratureGrid::new(quadrature_n)?, edge_delta })
    }

    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    pub fn edge_delta(&self) -> f64 {
        self.edge_delta
    }

    /// Dispatching evaluation of all four functions.
    pub fn eval(&self, z: f64) -> Result<AFunctions> {
        check_outside_band(z)?;
        if z > 24.0 {
            return Ok(self.eval_below(24.0 - z)?.reflected());
        }
        self.eval_below(z)
    }

    fn eval_below(&self, z: f64) -> Result<AFunctions> {
        if z > -self.edge_delta {
            laplace::afunctions(z)
        } else {
            self.grid.afunctions(z)
        }
    }

    /// Torus quadrature only (reflected above the band).
    pub fn eval_torus(&self, z: f64) -> Result<AFunctions> {
        check_outside_band(z)?;
        if z > 24.0 {
            return Ok(self.grid.afunctions(24.0 - z)?.reflected());
        }
        self.grid.afunctions(z)
    }

    /// Laplace–Bessel route only (reflected above the band).
    pub fn eval_bessel(&self, z: f64) -> Result<AFunctions> {
        check_outside_band(z)?;
        if z > 24.0 {
            return Ok(laplace::afunctions(24.0 - z)?.reflected());
        }
        laplace::afunctions(z)
    }

    /// `a^s_ij(z)` for `i, j ∈ {1, 2}`.
    pub fn a_s(&self, i: usize, j: usize, z: f64) -> Result<f64> {
        let a = self.eval(z)?;
        match (i, j) {
            (1, 1) => Ok(a.a11),
            (1, 2) | (2, 1) => Ok(a.a12),
            (2, 2) => Ok(a.a22),
            _ => Err(Error::InvalidArgument(format!("index pair ({i}, {j}) outside 1..=2"))),
        }
    }

    pub fn a_a12(&self, z: f64) -> Result<f64> {
        Ok(self.eval(z)?.a_a12)
    }

    /// `∫ a b / (E_0 - z)` for arbitrary interaction functions, torus rule.
    pub fn resolvent_integral(&self, a: BasisFunction, b: BasisFunction, z: f64) -> Result<f64> {
        self.grid.resolvent_integral(a, b, z)
    }
}

impl Default for AEvaluator {
    fn default() -> Self {
        AEvaluator::new(DEFAULT_QUADRATURE_N, DEFAULT_EDGE_DELTA).expect("default grid is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_validation() {
        let ev = AEvaluator::new(16, 0.25).unwrap();
        assert!(ev.a_s(1, 3, -1.0).is_err());
        assert_eq!(ev.a_s(1, 2, -1.0).unwrap(), ev.a_s(2, 1, -1.0).unwrap());
        assert!(AEvaluator::new(16, 0.0).is_err());
        assert!(AEvaluator::new(16, 0.5).is_err());
    }

    #[test]
    fn dispatch_switches_at_edge_delta() {
        let ev = AEvaluator::new(64, 0.25).unwrap();
        let inside = ev.eval(-0.1).unwrap();
        assert_eq!(inside, laplace::afunctions(-0.1).unwrap());
        let outside = ev.eval(-0.3).unwrap();
        assert_eq!(outside, ev.grid().afunctions(-0.3).unwrap());
    }

    #[test]
    fn above_band_is_reflected() {
        let ev = AEvaluator::new(32, 0.25).unwrap();
        let up = ev.eval(27.0).unwrap();
        let down = ev.eval(-3.0).unwrap();
        assert_eq!(up, down.reflected());
        assert!(up.a11 < 0.0 && up.a12 > 0.0 && up.a22 < 0.0 && up.a_a12 < 0.0);
    }
}
