//! Two-particle dispersion `E_K(p) = 4 Σ (1 - cos(K_i/2) cos p_i)` and the
//! band `[E_min(K), E_max(K)]` it sweeps out.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

/// Maps an angle onto its representative in `[-π, π)`.
pub fn normalize_angle(x: f64) -> f64 {
    let mut r = x - TWO_PI * ((x + PI) / TWO_PI).floor();
    if r >= PI {
        r -= TWO_PI;
    }
    if r < -PI {
        r += TWO_PI;
    }
    r
}

/// Total quasi-momentum `K`, one angle per axis, stored normalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quasimomentum([f64; 3]);

impl Quasimomentum {
    pub const ZERO: Quasimomentum = Quasimomentum([0.0; 3]);

    pub fn new(k1: f64, k2: f64, k3: f64) -> Self {
        Quasimomentum([normalize_angle(k1), normalize_angle(k2), normalize_angle(k3)])
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    /// `cos(K_i / 2)`, non-negative on the normalized range.
    pub fn half_cosines(&self) -> [f64; 3] {
        self.0.map(|k| (0.5 * k).cos().max(0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0.0)
    }
}

impl Default for Quasimomentum {
    fn default() -> Self {
        Quasimomentum::ZERO
    }
}

/// Relative quasi-momentum `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumPoint([f64; 3]);

impl MomentumPoint {
    pub fn new(p1: f64, p2: f64, p3: f64) -> Self {
        MomentumPoint([normalize_angle(p1), normalize_angle(p2), normalize_angle(p3)])
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub e_min: f64,
    pub e_max: f64,
}

impl Band {
    pub fn contains(&self, z: f64) -> bool {
        self.e_min <= z && z <= self.e_max
    }

    pub fn width(&self) -> f64 {
        self.e_max - self.e_min
    }
}

pub fn dispersion(k: &Quasimomentum, p: &MomentumPoint) -> f64 {
    dispersion_from_cosines(&k.half_cosines(), p.components().map(f64::cos))
}

/// Dispersion from precomputed `cos(K_i/2)` and `cos p_i`.
#[inline]
pub fn dispersion_from_cosines(half_cos_k: &[f64; 3], cos_p: [f64; 3]) -> f64 {
    4.0 * ((1.0 - half_cos_k[0] * cos_p[0])
        + (1.0 - half_cos_k[1] * cos_p[1])
        + (1.0 - half_cos_k[2] * cos_p[2]))
}

/// Essential spectrum of `H(K)`: the range of `E_K`.
pub fn band_edges(k: &Quasimomentum) -> Band {
    let c = k.half_cosines();
    let s: f64 = c.iter().sum();
    Band { e_min: 4.0 * (3.0 - s), e_max: 4.0 * (3.0 + s) }
}

/// Shift `p ↦ p + (π, π, π)`; maps `E_0` to `24 - E_0`.
pub fn reflect_momentum(p: &MomentumPoint) -> MomentumPoint {
    let [p1, p2, p3] = p.components();
    MomentumPoint::new(p1 + PI, p2 + PI, p3 + PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dispersion_corner_values() {
        let k0 = Quasimomentum::ZERO;
        assert_eq!(dispersion(&k0, &MomentumPoint::new(0.0, 0.0, 0.0)), 0.0);
        assert!((dispersion(&k0, &MomentumPoint::new(PI, PI, PI)) - 24.0).abs() < 1e-14);
        let kpi = Quasimomentum::new(PI, PI, PI);
        for p in [[0.0, 0.0, 0.0], [0.3, -2.0, 1.0], [PI, 0.5, -0.5]] {
            let e = dispersion(&kpi, &MomentumPoint::new(p[0], p[1], p[2]));
            assert!((e - 12.0).abs() < 1e-14);
        }
    }

    #[test]
    fn band_edges_examples() {
        let b = band_edges(&Quasimomentum::ZERO);
        assert_eq!((b.e_min, b.e_max), (0.0, 24.0));
        let b = band_edges(&Quasimomentum::new(PI, PI, PI));
        assert!((b.e_min - 12.0).abs() < 1e-14 && (b.e_max - 12.0).abs() < 1e-14);
        let b = band_edges(&Quasimomentum::new(PI, 0.0, 0.0));
        assert!((b.e_min - 4.0).abs() < 1e-14 && (b.e_max - 20.0).abs() < 1e-14);
    }

    #[test]
    fn normalization_lands_in_half_open_range() {
        assert_eq!(normalize_angle(PI), -PI);
        assert_eq!(normalize_angle(-PI), -PI);
        assert!((normalize_angle(3.0 * PI + 0.25) - (-PI + 0.25)).abs() < 1e-14);
        assert!((normalize_angle(-0.5) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn reflection_examples() {
        let r = reflect_momentum(&MomentumPoint::new(0.0, 0.0, 0.0));
        assert_eq!(r.components(), [-PI, -PI, -PI]);
        let r = reflect_momentum(&MomentumPoint::new(PI / 2.0, 0.0, -PI / 2.0));
        let c = r.components();
        assert!((c[0] + PI / 2.0).abs() < 1e-15);
        assert_eq!(c[1], -PI);
        assert!((c[2] - PI / 2.0).abs() < 1e-15);
        let p = MomentumPoint::new(0.3, -1.1, 2.0);
        let back = reflect_momentum(&reflect_momentum(&p)).components();
        for (a, b) in back.iter().zip(p.components()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_is_the_only_grid_minimum() {
        let n = 16;
        let k0 = Quasimomentum::ZERO;
        let node = |i: usize| -PI + (i as f64) * 2.0 * PI / n as f64;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let p = MomentumPoint::new(node(i), node(j), node(l));
                    let e = dispersion(&k0, &p);
                    if (i, j, l) == (n / 2, n / 2, n / 2) {
                        assert_eq!(e, 0.0);
                    } else {
                        assert!(e > 0.0);
                    }
                }
            }
        }
    }

    fn angle() -> impl Strategy<Value = f64> {
        -PI..PI
    }

    proptest! {
        #[test]
        fn reflection_mirrors_energy(p1 in angle(), p2 in angle(), p3 in angle()) {
            let p = MomentumPoint::new(p1, p2, p3);
            let k0 = Quasimomentum::ZERO;
            let e = dispersion(&k0, &p);
            let er = dispersion(&k0, &reflect_momentum(&p));
            prop_assert!((er - (24.0 - e)).abs() < 1e-12);
        }

        #[test]
        fn dispersion_within_band(k1 in angle(), k2 in angle(), k3 in angle(),
                                  p1 in angle(), p2 in angle(), p3 in angle()) {
            let k = Quasimomentum::new(k1, k2, k3);
            let b = band_edges(&k);
            let e = dispersion(&k, &MomentumPoint::new(p1, p2, p3));
            prop_assert!(b.e_min - 1e-12 <= e && e <= b.e_max + 1e-12);
            prop_assert!(0.0 <= b.e_min && b.e_max <= 24.0 && b.e_min <= b.e_max);
        }

        #[test]
        fn even_and_permutation_symmetric(k in angle(), p1 in angle(), p2 in angle(), p3 in angle()) {
            let kk = Quasimomentum::new(k, k, k);
            let e = dispersion(&kk, &MomentumPoint::new(p1, p2, p3));
            let flipped = dispersion(&kk, &MomentumPoint::new(-p1, p2, -p3));
            let permuted = dispersion(&kk, &MomentumPoint::new(p3, p1, p2));
            prop_assert!((e - flipped).abs() < 1e-12);
            prop_assert!((e - permuted).abs() < 1e-12);
        }
    }
}
