//! The four orthonormal functions spanning the range of the interaction.
//!
//! ```text
//! S1  = 1 / sqrt(8π³)
//! S2  = (cos p1 + cos p2 + cos p3) / sqrt(12π³)
//! A12 = (cos p1 - cos p2) / sqrt(8π³)
//! MIX = (cos p1 + cos p2 - 2 cos p3) / sqrt(24π³)
//! ```
//!
//! `S1` and `S2` are fully symmetric, `A12` is odd under `p1 ↔ p2` and `MIX`
//! is even under `p1 ↔ p2` with zero totally symmetric part.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisFunction {
    S1,
    S2,
    A12,
    Mix,
}

impl BasisFunction {
    pub const ALL: [BasisFunction; 4] =
        [BasisFunction::S1, BasisFunction::S2, BasisFunction::A12, BasisFunction::Mix];

    pub fn normalization(self) -> f64 {
        let pi3 = PI * PI * PI;
        match self {
            BasisFunction::S1 | BasisFunction::A12 => 1.0 / (8.0 * pi3).sqrt(),
            BasisFunction::S2 => 1.0 / (12.0 * pi3).sqrt(),
            BasisFunction::Mix => 1.0 / (24.0 * pi3).sqrt(),
        }
    }

    /// Value from the three cosines `cos p_i`.
    #[inline]
    pub fn eval_cos(self, c: [f64; 3]) -> f64 {
        let shape = match self {
            BasisFunction::S1 => 1.0,
            BasisFunction::S2 => c[0] + c[1] + c[2],
            BasisFunction::A12 => c[0] - c[1],
            BasisFunction::Mix => c[0] + c[1] - 2.0 * c[2],
        };
        shape * self.normalization()
    }

    pub fn eval(self, p: [f64; 3]) -> f64 {
        self.eval_cos(p.map(f64::cos))
    }
}
