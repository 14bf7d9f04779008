//! Exponentially scaled modified Bessel functions `e^{-t} I_m(t)` for small
//! integer orders.
//!
//! Power series up to [`SERIES_LIMIT`], Hankel asymptotic expansion beyond.
//! Both branches only add positive terms (series) or terms of rapidly
//! decreasing size (asymptotic), so no cancellation occurs.

use std::f64::consts::PI;

/// Arguments at or below this use the power series.
pub const SERIES_LIMIT: f64 = 25.0;

const MAX_SERIES_TERMS: usize = 500;
const MAX_ASYMPTOTIC_TERMS: usize = 40;

/// `e^{-t} I_m(t)` for `t ≥ 0`.
pub fn scaled_i(m: u32, t: f64) -> f64 {
    debug_assert!(t >= 0.0);
    if t <= SERIES_LIMIT {
        series(m, t) * (-t).exp()
    } else {
        asymptotic_bracket(m, t) / (2.0 * PI * t).sqrt()
    }
}

/// `(e^{-t} I0, e^{-t} I1, e^{-t} I2)` at one argument.
pub fn scaled_i012(t: f64) -> [f64; 3] {
    [scaled_i(0, t), scaled_i(1, t), scaled_i(2, t)]
}

/// `I_m(t)` by its power series, unscaled.
fn series(m: u32, t: f64) -> f64 {
    let half = 0.5 * t;
    let mut term = 1.0;
    for j in 1..=m {
        term *= half / j as f64;
    }
    let q = half * half;
    let mut sum = term;
    for k in 1..MAX_SERIES_TERMS {
        term *= q / (k as f64 * (k as f64 + m as f64));
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
    }
    sum
}

/// The bracket `S_m(t)` in `e^{-t} I_m(t) = S_m(t) / sqrt(2πt)`,
/// `S_m(t) = Σ_k (-1)^k Π_{j≤k} (4m² - (2j-1)²) / (k! (8t)^k)`.
///
/// Summation stops at the first term below `1e-17` in size or once terms
/// start to grow.
pub fn asymptotic_bracket(m: u32, t: f64) -> f64 {
    let mu = 4.0 * (m as f64) * (m as f64);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..=MAX_ASYMPTOTIC_TERMS {
        let odd = (2 * k - 1) as f64;
        term *= -(mu - odd * odd) / (k as f64 * 8.0 * t);
        if term.abs() >= prev {
            break;
        }
        sum += term;
        prev = term.abs();
        if prev < 1e-17 {
            break;
        }
    }
    sum
}
