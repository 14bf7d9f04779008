//! Midpoint-rule integration over the torus `[-π, π)³`.
//!
//! Nodes sit at `-π + (k + ½)·2π/N`, so `p = 0` (and every other point where
//! `E_0` touches a band edge) is never sampled. For smooth periodic integrands
//! the rule converges geometrically and integrates trigonometric polynomials
//! of degree `< N` exactly.

use crate::afunc::AFunctions;
use crate::basis::BasisFunction;
use crate::error::{Error, Result};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    n_per_axis: usize,
    nodes: Vec<f64>,
    cosines: Vec<f64>,
    weight: f64,
    /// Octant nodes up to permutation: `[E_0, m, m·s, m·s², m·q]` with `m`
    /// the orbit size, `s = Σ cos p_i` and `q` the mean of `(cos p_i - cos p_j)²`
    /// over the three pairs.
    orbits: Vec<[f64; 5]>,
}

impl QuadratureGrid {
    /// `n` must be even (an odd midpoint grid contains `p = 0`) and at least 4.
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::GridSize { n, reason: "need at least 4 nodes per axis" });
        }
        if n % 2 != 0 {
            return Err(Error::GridSize { n, reason: "nodes per axis must be even" });
        }
        let h = 2.0 * PI / n as f64;
        let nodes: Vec<f64> = (0..n).map(|k| -PI + (k as f64 + 0.5) * h).collect();
        let cosines: Vec<f64> = nodes.iter().map(|x| x.cos()).collect();
        let orbits = orbits(&cosines[n / 2..]);
        Ok(QuadratureGrid { n_per_axis: n, nodes, cosines, weight: h * h * h, orbits })
    }

    pub fn n_per_axis(&self) -> usize {
        self.n_per_axis
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn cosines(&self) -> &[f64] {
        &self.cosines
    }

    /// Weight of a single node, `(2π/N)³`.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.n_per_axis.pow(3)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All nodes in row-major order (`p3` fastest).
    pub fn points(&self) -> impl Iterator<Item = [f64; 3]> + '_ {
        let x = &self.nodes;
        x.iter()
            .flat_map(move |&a| x.iter().flat_map(move |&b| x.iter().map(move |&c| [a, b, c])))
    }

    /// Midpoint approximation of `∫_{T³} f(p) dp`.
    pub fn integrate<F>(&self, f: F) -> Result<f64>
    where
        F: Fn([f64; 3]) -> f64,
    {
        let mut total = 0.0;
        for p in self.points() {
            let v = f(p);
            if !v.is_finite() {
                return Err(Error::NonFinite { p1: p[0], p2: p[1], p3: p[2], value: v });
            }
            total += v;
        }
        Ok(total * self.weight)
    }

    /// Same as [`integrate`](Self::integrate) for integrands even in every
    /// coordinate, written in terms of `cos p_i`. Only the positive octant is
    /// visited.
    pub fn integrate_even<F>(&self, f: F) -> Result<f64>
    where
        F: Fn([f64; 3]) -> f64,
    {
        let half = self.n_per_axis / 2;
        let c = &self.cosines[half..];
        let mut total = 0.0;
        for (i, &c1) in c.iter().enumerate() {
            let mut plane = 0.0;
            for (j, &c2) in c.iter().enumerate() {
                for (l, &c3) in c.iter().enumerate() {
                    let v = f([c1, c2, c3]);
                    if !v.is_finite() {
                        let x = &self.nodes[half..];
                        return Err(Error::NonFinite { p1: x[i], p2: x[j], p3: x[l], value: v });
                    }
                    plane += v;
                }
            }
            total += plane;
        }
        Ok(8.0 * self.weight * total)
    }

    /// `∫ a(p) b(p) / (E_0(p) - z) dp` for two interaction functions.
    pub fn resolvent_integral(&self, a: BasisFunction, b: BasisFunction, z: f64) -> Result<f64> {
        check_outside_band(z)?;
        self.integrate_even(|c| {
            let e = 4.0 * (3.0 - c[0] - c[1] - c[2]);
            a.eval_cos(c) * b.eval_cos(c) / (e - z)
        })
    }

    /// All four a-functions by direct summation. Valid on both sides of the
    /// band; accuracy degrades as `z` approaches an edge.
    pub fn afunctions(&self, z: f64) -> Result<AFunctions> {
        check_outside_band(z)?;
        // E_0 and the four numerators are symmetric under permuting the
        // axes, so one node per orbit suffices.
        let (mut s0, mut s1, mut s2, mut sa) = (0.0, 0.0, 0.0, 0.0);
        for &[e, m, ms, ms2, mq] in &self.orbits {
            let inv = 1.0 / (e - z);
            s0 += m * inv;
            s1 += ms * inv;
            s2 += ms2 * inv;
            sa += mq * inv;
        }
        let w = 8.0 * self.weight;
        let pi3 = PI * PI * PI;
        let out = AFunctions {
            a11: w * s0 / (8.0 * pi3),
            a12: w * s1 / (pi3 * 96f64.sqrt()),
            a22: w * s2 / (12.0 * pi3),
            a_a12: w * sa / (8.0 * pi3),
        };
        if !out.all_finite() {
            return Err(Error::NonFinite { p1: f64::NAN, p2: f64::NAN, p3: f64::NAN, value: z });
        }
        Ok(out)
    }
}

fn orbits(c: &[f64]) -> Vec<[f64; 5]> {
    let mut out = Vec::new();
    for i in 0..c.len() {
        for j in i..c.len() {
            for l in j..c.len() {
                let m = match (i == j, j == l) {
                    (true, true) => 1.0,
                    (false, false) => 6.0,
                    _ => 3.0,
                };
                let (a, b, d) = (c[i], c[j], c[l]);
                let s = a + b + d;
                let q = ((a - b).powi(2) + (a - d).powi(2) + (b - d).powi(2)) / 3.0;
                out.push([4.0 * (3.0 - s), m, m * s, m * s * s, m * q]);
            }
        }
    }
    out
}

pub(crate) fn check_outside_band(z: f64) -> Result<()> {
    if !z.is_finite() || (0.0..=24.0).contains(&z) {
        return Err(Error::Domain { z, lo: 0.0, hi: 24.0 });
    }
    Ok(())
}
