//! Partition of the coupling plane by the critical hyperbolas and the
//! critical couplings of the antisymmetric sectors.
//!
//! `A∓ζ` count symmetric-sector levels below (−) or above (+) the band,
//! `B∓ζ` count the `A12` levels (each doubled by the `MIX` copy). The `D`
//! and `G` labels combine them the way the published tables do; they are
//! metadata only, the authoritative count is `sector_sum` (and ultimately
//! the determinant).

use crate::determinant::{band_edge_constants, CouplingPair};
use crate::error::{Error, Result};
use crate::spectrum::SpectrumSolver;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Points closer than this (in `μ2`) to a curve or critical coupling are
/// boundary points and receive no count.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Minus,
    Plus,
}

/// `μ2∓(μ1) = 24/(μ1 ± 12) ∓ μ0`.
pub fn critical_curve(branch: Branch, mu1: f64) -> Result<f64> {
    let mu0 = band_edge_constants().mu0;
    match branch {
        Branch::Minus if mu1 == -12.0 => Err(Error::Pole { mu1 }),
        Branch::Plus if mu1 == 12.0 => Err(Error::Pole { mu1 }),
        Branch::Minus => Ok(24.0 / (mu1 + 12.0) - mu0),
        Branch::Plus => Ok(24.0 / (mu1 - 12.0) + mu0),
    }
}

/// `μ2(0) = 1 / a_a12(0)`.
pub fn critical_coupling() -> f64 {
    band_edge_constants().mu2_crit
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryFlags {
    pub on_tau_minus: bool,
    pub on_tau_plus: bool,
    pub on_b_minus: bool,
    pub on_b_plus: bool,
}

impl BoundaryFlags {
    pub fn any(&self) -> bool {
        self.on_tau_minus || self.on_tau_plus || self.on_b_minus || self.on_b_plus
    }
}

impl fmt::Display for BoundaryFlags {
    /// `;`-joined names, empty when interior.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = [
            (self.on_tau_minus, "tau_minus"),
            (self.on_tau_plus, "tau_plus"),
            (self.on_b_minus, "b_minus"),
            (self.on_b_plus, "b_plus"),
        ];
        let s: Vec<&str> = names.iter().filter(|(on, _)| *on).map(|(_, n)| *n).collect();
        f.write_str(&s.join(";"))
    }
}

/// The two readings of the three-level region `D3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum D3Reading {
    /// `A1 ∩ {(0, μ2) : μ2 ∈ B1}`, confined to the `μ1 = 0` axis.
    OnAxis,
    /// `A1 ∩ {(μ1, μ2) : μ2 ∈ B1}`.
    OffAxis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableLabels {
    pub d_minus: Option<u8>,
    pub d_plus: Option<u8>,
    /// `(α, β)` with the point in `D−α ∩ D+β`.
    pub g: Option<(u8, u8)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub couplings: CouplingPair,
    pub a_minus: Option<u8>,
    pub a_plus: Option<u8>,
    pub b_minus: Option<u8>,
    pub b_plus: Option<u8>,
    pub flags: BoundaryFlags,
    pub on_axis: TableLabels,
    pub off_axis: TableLabels,
    /// `nS + 2 nA12` below the band, from the memberships.
    pub sum_below: Option<u8>,
    pub sum_above: Option<u8>,
}

impl RegionReport {
    pub fn labels(&self, reading: D3Reading) -> TableLabels {
        match reading {
            D3Reading::OnAxis => self.on_axis,
            D3Reading::OffAxis => self.off_axis,
        }
    }

    /// Either side's predicted count exceeds the three levels the tables allow.
    pub fn exceeds_table(&self) -> bool {
        self.sum_below.is_some_and(|n| n > 3) || self.sum_above.is_some_and(|n| n > 3)
    }
}

fn a_count(branch: Branch, mu1: f64, mu2: f64) -> (Option<u8>, bool) {
    // Mirror the plus side onto the minus side: A+ζ = -A-ζ.
    let (m1, m2) = match branch {
        Branch::Minus => (mu1, mu2),
        Branch::Plus => (-mu1, -mu2),
    };
    if m1 == -12.0 {
        return (Some(1), false);
    }
    let curve = critical_curve(Branch::Minus, m1).expect("pole handled above");
    if (m2 - curve).abs() < BOUNDARY_TOL {
        return (None, true);
    }
    let above = m2 > curve;
    let n = match (m1 > -12.0, above) {
        (true, true) => 0,
        (true, false) | (false, true) => 1,
        (false, false) => 2,
    };
    (Some(n), false)
}

fn b_count(branch: Branch, mu2: f64) -> (Option<u8>, bool) {
    let m2 = match branch {
        Branch::Minus => mu2,
        Branch::Plus => -mu2,
    };
    let crit = critical_coupling();
    if (m2 + crit).abs() < BOUNDARY_TOL {
        return (None, true);
    }
    (Some(u8::from(m2 < -crit)), false)
}

fn d_label(a: Option<u8>, b: Option<u8>, mu1: f64, reading: D3Reading) -> Option<u8> {
    match a? {
        1 => {
            let in_b1 = b? == 1;
            let on_line = match reading {
                D3Reading::OnAxis => mu1 == 0.0,
                D3Reading::OffAxis => true,
            };
            Some(if in_b1 && on_line { 3 } else { 1 })
        }
        n => Some(n),
    }
}

pub fn classify(c: CouplingPair) -> RegionReport {
    let (mu1, mu2) = (c.mu1, c.mu2);
    let (a_minus, on_tau_minus) = a_count(Branch::Minus, mu1, mu2);
    let (a_plus, on_tau_plus) = a_count(Branch::Plus, mu1, mu2);
    let (b_minus, on_b_minus) = b_count(Branch::Minus, mu2);
    let (b_plus, on_b_plus) = b_count(Branch::Plus, mu2);
    let labels = |reading| {
        let d_minus = d_label(a_minus, b_minus, mu1, reading);
        let d_plus = d_label(a_plus, b_plus, mu1, reading);
        TableLabels { d_minus, d_plus, g: d_minus.zip(d_plus) }
    };
    let sum = |a: Option<u8>, b: Option<u8>| Some(a? + 2 * b?);
    RegionReport {
        couplings: c,
        a_minus,
        a_plus,
        b_minus,
        b_plus,
        flags: BoundaryFlags { on_tau_minus, on_tau_plus, on_b_minus, on_b_plus },
        on_axis: labels(D3Reading::OnAxis),
        off_axis: labels(D3Reading::OffAxis),
        sum_below: sum(a_minus, b_minus),
        sum_above: sum(a_plus, b_plus),
    }
}

/// `n` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { hi } else { lo + step * i as f64 }).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub relation: String,
    pub mu1: f64,
    pub mu2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InclusionReport {
    pub points: usize,
    /// Violations of `A+2 ⊂ A-0`, `A-2 ⊂ A+0`, `B+1 ⊂ B-0`, `B-1 ⊂ B+0`.
    pub counterexamples: Vec<Counterexample>,
    /// Sampled points of `G12` and `G21` under either reading.
    pub g_forbidden: Vec<Counterexample>,
    /// Sampled points of `A-2 ∩ B-1` or `A+2 ∩ B+1`: four levels on one side.
    pub four_level_points: usize,
}

/// Checks the region inclusions on a 200×200 grid over `[-60, 60]²`.
pub fn inclusion_checks() -> InclusionReport {
    inclusion_checks_on(&linspace(-60.0, 60.0, 200), &linspace(-60.0, 60.0, 200))
}

pub fn inclusion_checks_on(mu1s: &[f64], mu2s: &[f64]) -> InclusionReport {
    let mut counterexamples = Vec::new();
    let mut g_forbidden = Vec::new();
    let mut four = 0;
    for &mu2 in mu2s {
        for &mu1 in mu1s {
            let r = classify(CouplingPair::new(mu1, mu2));
            let mut fail = |relation: &str| {
                counterexamples.push(Counterexample { relation: relation.into(), mu1, mu2 })
            };
            if r.a_plus == Some(2) && r.a_minus != Some(0) {
                fail("A+2 in A-0");
            }
            if r.a_minus == Some(2) && r.a_plus != Some(0) {
                fail("A-2 in A+0");
            }
            if r.b_plus == Some(1) && r.b_minus != Some(0) {
                fail("B+1 in B-0");
            }
            if r.b_minus == Some(1) && r.b_plus != Some(0) {
                fail("B-1 in B+0");
            }
            for labels in [r.on_axis, r.off_axis] {
                if let Some(g @ ((1, 2) | (2, 1))) = labels.g {
                    g_forbidden.push(Counterexample { relation: format!("G{}{}", g.0, g.1), mu1, mu2 });
                }
            }
            if r.exceeds_table() {
                four += 1;
            }
        }
    }
    InclusionReport {
        points: mu1s.len() * mu2s.len(),
        counterexamples,
        g_forbidden,
        four_level_points: four,
    }
}

/// Inclusive axis specification `lo:hi:n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl AxisRange {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::GridSize { n, reason: "a scan axis needs at least two points" });
        }
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite range {lo}:{hi}")));
        }
        Ok(AxisRange { lo, hi, n })
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.n)
    }
}

impl std::str::FromStr for AxisRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidArgument(format!("expected lo:hi:n, got `{s}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo = parts[0].trim().parse().map_err(|_| bad())?;
        let hi = parts[1].trim().parse().map_err(|_| bad())?;
        let n = parts[2].trim().parse().map_err(|_| bad())?;
        AxisRange::new(lo, hi, n)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub report: RegionReport,
    /// Determinant counts `(below, above)` with multiplicity, when verified.
    pub det: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseScan {
    /// Row-major: `μ2` outer, `μ1` inner.
    pub rows: Vec<ScanRow>,
}

impl PhaseScan {
    /// Rows whose predicted count exceeds three on one side.
    pub fn anomalies(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| r.report.exceeds_table())
    }

    /// Verified interior rows whose determinant count disagrees with `sector_sum`.
    pub fn mismatches(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| match (r.det, r.report.sum_below, r.report.sum_above) {
            (Some((b, a)), Some(sb), Some(sa)) => b != sb as usize || a != sa as usize,
            _ => false,
        })
    }
}

/// Classifies every grid point, optionally confirming the count with the
/// determinant solver. Output order does not depend on the thread count.
pub fn phase_scan(
    mu1: AxisRange,
    mu2: AxisRange,
    verify: Option<&SpectrumSolver>,
) -> Result<PhaseScan> {
    let xs = mu1.values();
    let ys = mu2.values();
    let points: Vec<CouplingPair> =
        ys.iter().flat_map(|&y| xs.iter().map(move |&x| CouplingPair::new(x, y))).collect();
    let rows = points
        .par_iter()
        .map(|&c| {
            let report = classify(c);
            let det = match verify {
                Some(sv) => Some(sv.full_spectrum_zero_k(c)?.counts()),
                None => None,
            };
            Ok(ScanRow { report, det })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhaseScan { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_examples() {
        let mu0 = band_edge_constants().mu0;
        assert!((critical_curve(Branch::Minus, 12.0).unwrap() - (1.0 - mu0)).abs() < 1e-14);
        assert!((critical_curve(Branch::Minus, 1e6).unwrap() + mu0).abs() < 1e-4);
        assert!((critical_curve(Branch::Plus, -12.0).unwrap() - (mu0 - 1.0)).abs() < 1e-14);
        assert!(matches!(critical_curve(Branch::Minus, -12.0), Err(Error::Pole { .. })));
        assert!(matches!(critical_curve(Branch::Plus, 12.0), Err(Error::Pole { .. })));
    }

    #[test]
    fn classify_examples() {
        let r = classify(CouplingPair::new(0.0, 0.0));
        assert_eq!((r.a_minus, r.a_plus), (Some(0), Some(0)));
        assert_eq!((r.sum_below, r.sum_above), (Some(0), Some(0)));
        assert_eq!(classify(CouplingPair::new(-20.0, -10.0)).a_minus, Some(2));
        let r = classify(CouplingPair::new(-13.0, -40.0));
        assert_eq!(r.sum_below, Some(4));
        assert!(r.exceeds_table());
        assert_eq!(r.on_axis.d_minus, Some(2));
    }

    #[test]
    fn pole_line_is_a1() {
        let r = classify(CouplingPair::new(-12.0, 3.0));
        assert_eq!(r.a_minus, Some(1));
        assert!(!r.flags.on_tau_minus);
        assert_eq!(classify(CouplingPair::new(12.0, 3.0)).a_plus, Some(1));
    }

    #[test]
    fn points_on_curves_are_undefined() {
        let mu1 = 4.0;
        let mu2 = critical_curve(Branch::Minus, mu1).unwrap();
        let r = classify(CouplingPair::new(mu1, mu2));
        assert!(r.flags.on_tau_minus);
        assert_eq!(r.a_minus, None);
        assert_eq!(r.sum_below, None);
        assert_eq!(r.on_axis.g, None);
        let r = classify(CouplingPair::new(1.0, critical_coupling()));
        assert!(r.flags.on_b_plus && r.b_plus.is_none());
        assert_eq!(r.flags.to_string(), "b_plus");
    }

    #[test]
    fn d3_readings_differ_off_axis() {
        let mu2 = -(critical_coupling() + 3.0);
        let on = classify(CouplingPair::new(0.0, mu2));
        assert_eq!(on.on_axis.g, Some((3, 0)));
        assert_eq!(on.off_axis.g, Some((3, 0)));
        let off = classify(CouplingPair::new(1.0, mu2));
        assert_eq!(off.on_axis.d_minus, Some(1));
        assert_eq!(off.off_axis.d_minus, Some(3));
        assert_eq!(off.sum_below, Some(3));
    }

    #[test]
    fn origin_symmetry() {
        for (x, y) in [(3.0, -7.0), (-20.0, -10.0), (15.0, 30.0), (-13.0, -40.0), (0.5, 11.0)] {
            let r = classify(CouplingPair::new(x, y));
            let m = classify(CouplingPair::new(-x, -y));
            assert_eq!((r.a_minus, r.b_minus), (m.a_plus, m.b_plus));
            assert_eq!((r.sum_below, r.sum_above), (m.sum_above, m.sum_below));
        }
    }

    #[test]
    fn inclusions_hold() {
        let rep = inclusion_checks();
        assert_eq!(rep.points, 40_000);
        assert!(rep.counterexamples.is_empty(), "{:?}", rep.counterexamples);
        assert!(rep.g_forbidden.is_empty());
        assert!(rep.four_level_points > 0);
    }

    #[test]
    fn small_scan_is_empty_region() {
        let r = AxisRange::new(-1.0, 1.0, 3).unwrap();
        let scan = phase_scan(r, r, None).unwrap();
        assert_eq!(scan.rows.len(), 9);
        assert!(scan.rows.iter().all(|row| (row.report.sum_below, row.report.sum_above) == (Some(0), Some(0))));
        assert_eq!(scan.rows[1].report.couplings, CouplingPair::new(0.0, -1.0));
    }

    #[test]
    fn scan_crossing_pole_line() {
        let scan = phase_scan(
            AxisRange::new(-13.0, -11.0, 3).unwrap(),
            AxisRange::new(-30.0, 30.0, 7).unwrap(),
            None,
        )
        .unwrap();
        // Left of the pole, decreasing μ2 walks from A-1 into A-2; right of it, A-0 into A-1.
        let col = |i: usize| scan.rows.iter().skip(i).step_by(3).map(|r| r.report.a_minus.unwrap()).collect::<Vec<_>>();
        assert_eq!(col(0).first(), Some(&2));
        assert_eq!(col(0).last(), Some(&1));
        assert_eq!(col(2).first(), Some(&1));
        assert_eq!(col(2).last(), Some(&0));
        assert!(col(1).iter().all(|&n| n == 1));
    }

    #[test]
    fn axis_range_parse() {
        let r: AxisRange = "-60:60:100".parse().unwrap();
        assert_eq!((r.lo, r.hi, r.n), (-60.0, 60.0, 100));
        assert!("1:2".parse::<AxisRange>().is_err());
        assert!("0:1:1".parse::<AxisRange>().is_err());
    }
}
