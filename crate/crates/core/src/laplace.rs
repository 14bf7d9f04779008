//! Laplace–Bessel representation of the a-functions for `z ≤ 0`.
//!
//! With `E_0(p) - z = 4(c - Σ cos p_i)` and `c = 3 - z/4`,
//!
//! ```text
//! 1/(E_0 - z) = ¼ ∫₀^∞ e^{-ct} e^{t Σ cos p_i} dt,   ∫ e^{t cos p} cos(mp) dp = 2π I_m(t),
//! ```
//!
//! so each a-function is a one-dimensional integral of a product of three
//! scaled Bessel functions against `e^{-εt}`, `ε = -z/4 ≥ 0`:
//!
//! ```text
//! a11   = ¼        ∫ e^{-εt} b0³
//! a12   = 3/(2√6)  ∫ e^{-εt} b1 b0²
//! a22   = 1/6      ∫ e^{-εt} [3/2 (b0 + b2) b0² + 6 b1² b0]
//! a_a12 = ¼        ∫ e^{-εt} [(b0 + b2) b0² - 2 b1² b0]
//! ```
//!
//! where `b_m = e^{-t} I_m(t)`. At `ε = 0` the integrands decay only like
//! `t^{-3/2}`; the range `t > T` is mapped to `w = t^{-1/2} ∈ (0, T^{-1/2}]`,
//! where the integrand becomes smooth and bounded, so no truncation is
//! needed. Both pieces use a fixed composite Gauss–Legendre rule graded
//! geometrically toward `t = 0` and toward `w = 0`. Only the factor
//! `e^{-εt}` depends on `z`, so the Bessel products are tabulated once.

use crate::afunc::{AFunctions, AKind};
use crate::bessel::{asymptotic_bracket, scaled_i012};
use crate::error::{Error, Result};
use crate::gauss::GaussLegendre;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Split point between the direct `t` range and the mapped tail.
const SPLIT_T: f64 = 32.0;
/// Panels halve toward `t = 0` down to `2^-FINE_T_LEVELS`.
const FINE_T_LEVELS: i32 = 24;
/// Panels halve toward `w = 0` this many times.
const FINE_W_LEVELS: i32 = 30;
const NODES_PER_PANEL: usize = 24;

struct LaplaceRule {
    /// Decay variable: the factor applied to node `j` is `exp(-ε·decay[j])`.
    decay: Vec<f64>,
    /// Weight × prefactor × Bessel product, per a-function.
    kernel: [Vec<f64>; 4],
}

fn products(b: [f64; 3]) -> [f64; 4] {
    let [b0, b1, b2] = b;
    let b00 = b0 * b0;
    [
        0.25 * b00 * b0,
        3.0 / (2.0 * 6f64.sqrt()) * b1 * b00,
        (1.5 * (b0 + b2) * b00 + 6.0 * b1 * b1 * b0) / 6.0,
        0.25 * ((b0 + b2) * b00 - 2.0 * b1 * b1 * b0),
    ]
}

impl LaplaceRule {
    fn build() -> Self {
        let gl = GaussLegendre::new(NODES_PER_PANEL);
        let mut decay = Vec::new();
        let mut kernel: [Vec<f64>; 4] = Default::default();

        let mut t_edges = vec![0.0];
        t_edges.extend((-FINE_T_LEVELS..=5).map(|j| 2f64.powi(j)));
        for pair in t_edges.windows(2) {
            for (t, w) in gl.mapped(pair[0], pair[1]) {
                let p = products(scaled_i012(t));
                decay.push(t);
                for (k, v) in kernel.iter_mut().zip(p) {
                    k.push(w * v);
                }
            }
        }
        debug_assert_eq!(*t_edges.last().unwrap(), SPLIT_T);

        // Tail: t = 1/w², dt = 2 w^{-3} dw and e^{-3t} I_a I_b I_c = (2πt)^{-3/2} S_a S_b S_c.
        let w_top = SPLIT_T.sqrt().recip();
        let mut w_edges = vec![0.0];
        w_edges.extend((0..=FINE_W_LEVELS).rev().map(|j| w_top * 0.5f64.powi(j)));
        let scale = 2.0 / (2.0 * PI).powf(1.5);
        for pair in w_edges.windows(2) {
            for (w, wt) in gl.mapped(pair[0], pair[1]) {
                let t = 1.0 / (w * w);
                let s = [asymptotic_bracket(0, t), asymptotic_bracket(1, t), asymptotic_bracket(2, t)];
                let p = products(s);
                decay.push(t);
                for (k, v) in kernel.iter_mut().zip(p) {
                    k.push(wt * scale * v);
                }
            }
        }
        // Ascending decay lets evaluation stop once e^{-εt} underflows.
        let mut order: Vec<usize> = (0..decay.len()).collect();
        order.sort_by(|&a, &b| decay[a].total_cmp(&decay[b]));
        let decay = order.iter().map(|&j| decay[j]).collect();
        let kernel = kernel.map(|k| order.iter().map(|&j| k[j]).collect());
        LaplaceRule { decay, kernel }
    }

    fn get() -> &'static LaplaceRule {
        static RULE: OnceLock<LaplaceRule> = OnceLock::new();
        RULE.get_or_init(LaplaceRule::build)
    }
}

fn check_z(z: f64) -> Result<f64> {
    if !(z <= 0.0) || !z.is_finite() {
        return Err(Error::Domain { z, lo: 0.0, hi: f64::INFINITY });
    }
    Ok(-0.25 * z)
}

/// All four a-functions at `z ≤ 0` by the Laplace–Bessel route.
pub fn afunctions(z: f64) -> Result<AFunctions> {
    let eps = check_z(z)?;
    let rule = LaplaceRule::get();
    let mut acc = [0.0; 4];
    for (j, &x) in rule.decay.iter().enumerate() {
        let f = if eps == 0.0 { 1.0 } else { (-eps * x).exp() };
        if f == 0.0 {
            break;
        }
        for (a, k) in acc.iter_mut().zip(&rule.kernel) {
            *a += k[j] * f;
        }
    }
    Ok(AFunctions { a11: acc[0], a12: acc[1], a22: acc[2], a_a12: acc[3] })
}

/// One a-function at `z ≤ 0` by the Laplace–Bessel route.
pub fn a_bessel(kind: AKind, z: f64) -> Result<f64> {
    Ok(afunctions(z)?.get(kind))
}
