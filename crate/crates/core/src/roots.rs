//! Sign-change scanning and bisection for determinant zeros.
//!
//! Determinants vary like `sqrt(distance)` near a band edge, so samples are
//! spaced geometrically in the distance to the edge.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Which end of a search interval touches the band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeEnd {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    pub points: usize,
    /// Closest sample to the edge.
    pub min_distance: f64,
    /// Final bracket width.
    pub tolerance: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { points: 4000, min_distance: 1e-10, tolerance: 1e-12 }
    }
}

/// Sample points of `(lo, hi)`, ascending, clustered at the edge end. The
/// edge itself is not sampled; the far end is.
pub fn scan_points(interval: (f64, f64), edge: EdgeEnd, cfg: &ScanConfig) -> Vec<f64> {
    let (lo, hi) = interval;
    let len = hi - lo;
    if !(len > 0.0) || cfg.points < 2 {
        return Vec::new();
    }
    let d0 = cfg.min_distance.min(0.5 * len);
    let ratio = (len / d0).ln() / (cfg.points - 1) as f64;
    let mut pts: Vec<f64> = (0..cfg.points)
        .map(|k| {
            let d = if k + 1 == cfg.points { len } else { d0 * (ratio * k as f64).exp() };
            match edge {
                EdgeEnd::Upper => hi - d,
                EdgeEnd::Lower => lo + d,
            }
        })
        .collect();
    if edge == EdgeEnd::Upper {
        pts.reverse();
    }
    pts
}

/// Brackets `[z_i, z_{i+1}]` with a strict sign change, plus sample points
/// where the value is exactly zero.
pub fn sign_changes(points: &[f64], values: &[f64]) -> (Vec<(f64, f64)>, Vec<f64>) {
    let mut brackets = Vec::new();
    let mut exact = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for (&z, &v) in points.iter().zip(values) {
        if v == 0.0 {
            exact.push(z);
            last = None;
            continue;
        }
        if let Some((zp, vp)) = last {
            if vp.signum() != v.signum() {
                brackets.push((zp, z));
            }
        }
        last = Some((z, v));
    }
    (brackets, exact)
}

/// Bisects `[a, b]` (opposite signs at the ends) down to `tol`.
pub fn bisect<F>(mut det: F, mut a: f64, mut b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut fa = det(a)?;
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = det(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Roots from precomputed samples; errors when more than `max_zeros` sign
/// changes are seen.
pub fn zeros_from_samples<F>(
    mut det: F,
    points: &[f64],
    values: &[f64],
    max_zeros: usize,
    tol: f64,
) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (brackets, exact) = sign_changes(points, values);
    let found = brackets.len() + exact.len();
    if found > max_zeros {
        return Err(Error::Inconsistency {
            found,
            max: max_zeros,
            context: format!("scan of [{}, {}]", points[0], points[points.len() - 1]),
        });
    }
    let mut roots = exact;
    for (a, b) in brackets {
        roots.push(bisect(&mut det, a, b, tol)?);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Zeros of `det` in `interval`, at most `max_zeros` of them.
pub fn find_determinant_zeros<F>(
    mut det: F,
    interval: (f64, f64),
    edge: EdgeEnd,
    max_zeros: usize,
    cfg: &ScanConfig,
) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let points = scan_points(interval, edge, cfg);
    let values = points.iter().map(|&z| det(z)).collect::<Result<Vec<_>>>()?;
    zeros_from_samples(det, &points, &values, max_zeros, cfg.tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_cluster_at_the_edge() {
        let cfg = ScanConfig::default();
        let p = scan_points((-5.0, 0.0), EdgeEnd::Upper, &cfg);
        assert_eq!(p.len(), 4000);
        assert_eq!(p[0], -5.0);
        assert!((p[3999] + 1e-10).abs() < 1e-20);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        let q = scan_points((24.0, 30.0), EdgeEnd::Lower, &cfg);
        assert!(q[0] > 24.0 && q[0] - 24.0 < 2e-10 && q[3999] == 30.0);
    }

    #[test]
    fn constant_has_no_zeros() {
        let r = find_determinant_zeros(|_| Ok(1.0), (-5.0, 0.0), EdgeEnd::Upper, 2, &ScanConfig::default());
        assert!(r.unwrap().is_empty());
    }

    #[test]
    fn finds_polynomial_roots_near_edge() {
        let f = |z: f64| Ok((z + 3.0) * (z + 1e-6));
        let r = find_determinant_zeros(f, (-5.0, 0.0), EdgeEnd::Upper, 2, &ScanConfig::default()).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] + 3.0).abs() < 1e-12);
        assert!((r[1] + 1e-6).abs() < 1e-12);
    }

    #[test]
    fn too_many_roots_is_an_inconsistency() {
        let f = |z: f64| Ok((3.0 * z).sin());
        let err = find_determinant_zeros(f, (-5.0, -0.1), EdgeEnd::Upper, 2, &ScanConfig::default());
        assert!(matches!(err, Err(Error::Inconsistency { .. })));
    }
}
