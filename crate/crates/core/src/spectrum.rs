//! Discrete spectrum of `H(0)` from determinant zeros, sector by sector.
//!
//! The symmetric sector carries a rank-two interaction (at most two
//! eigenvalues per side), the antisymmetric sector `A12` and the mixed sector
//! `MIX` a rank-one interaction each. The two rank-one sectors are unitarily
//! equivalent, so every `A12` eigenvalue occurs twice in the full operator.

use crate::afunc::{AEvaluator, AFunctions};
use crate::basis::BasisFunction;
use crate::determinant::{delta_a12_from, delta_s_from, CouplingPair};
use crate::error::{Error, Result};
use crate::roots::{scan_points, zeros_from_samples, EdgeEnd, ScanConfig};
use serde::{Deserialize, Serialize};

/// Roots closer than this to a band edge are not reported as eigenvalues.
pub const MARGINAL_DISTANCE: f64 = 1e-9;
/// Tolerance under which an S root and an A12 root are called coincident.
pub const COINCIDENCE_TOL: f64 = 1e-9;
/// Largest `|Δ(z)|` accepted as "z is an eigenvalue" by the eigenfunction builders.
pub const ROOT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    S,
    A12,
    Mix,
}

impl Sector {
    pub fn name(self) -> &'static str {
        match self {
            Sector::S => "s",
            Sector::A12 => "a12",
            Sector::Mix => "mix",
        }
    }

    /// Rank of the sector's interaction, hence its per-side eigenvalue bound.
    pub fn rank(self) -> usize {
        match self {
            Sector::S => 2,
            Sector::A12 | Sector::Mix => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Below,
    Above,
}

/// Interval containing every eigenvalue on `side`, from `‖V‖ = max(|μ1|, |μ2|)`.
pub fn search_interval(c: CouplingPair, side: Side) -> (f64, f64) {
    let r = c.interaction_norm() + 1.0;
    match side {
        Side::Below => (-r, 0.0),
        Side::Above => (24.0, 24.0 + r),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorSpectrum {
    pub sector: Sector,
    pub below: Vec<f64>,
    pub above: Vec<f64>,
    /// Zeros within [`MARGINAL_DISTANCE`] of an edge.
    pub marginal: Vec<f64>,
}

impl SectorSpectrum {
    fn empty(sector: Sector) -> Self {
        SectorSpectrum { sector, below: Vec::new(), above: Vec::new(), marginal: Vec::new() }
    }

    fn push(&mut self, z: f64, side: Side) {
        let dist = match side {
            Side::Below => -z,
            Side::Above => z - 24.0,
        };
        if dist < MARGINAL_DISTANCE {
            self.marginal.push(z);
        } else if side == Side::Below {
            self.below.push(z);
        } else {
            self.above.push(z);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub energy: f64,
    pub multiplicity: usize,
    /// `S`, or `A12` standing for the pair `A12 ⊕ MIX`.
    pub sector: Sector,
    /// An eigenvalue of the other sector lies within [`COINCIDENCE_TOL`].
    pub coincident: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullSpectrum {
    pub below: Vec<Level>,
    pub above: Vec<Level>,
    pub marginal: Vec<f64>,
}

impl FullSpectrum {
    fn expand(levels: &[Level]) -> Vec<f64> {
        levels.iter().flat_map(|l| std::iter::repeat(l.energy).take(l.multiplicity)).collect()
    }

    /// Eigenvalues below the band, repeated by multiplicity, ascending.
    pub fn below_energies(&self) -> Vec<f64> {
        Self::expand(&self.below)
    }

    pub fn above_energies(&self) -> Vec<f64> {
        Self::expand(&self.above)
    }

    pub fn counts(&self) -> (usize, usize) {
        let n = |v: &[Level]| v.iter().map(|l| l.multiplicity).sum();
        (n(&self.below), n(&self.above))
    }

    pub fn has_marginal(&self) -> bool {
        !self.marginal.is_empty()
    }
}

/// Finds determinant zeros; owns the a-function evaluator and scan settings.
#[derive(Debug, Clone, Default)]
pub struct SpectrumSolver {
    ev: AEvaluator,
    scan: ScanConfig,
}

impl SpectrumSolver {
    pub fn new(ev: AEvaluator) -> Self {
        SpectrumSolver { ev, scan: ScanConfig::default() }
    }

    pub fn with_scan(ev: AEvaluator, scan: ScanConfig) -> Self {
        SpectrumSolver { ev, scan }
    }

    pub fn evaluator(&self) -> &AEvaluator {
        &self.ev
    }

    /// Both independent sectors in one sweep per side; the a-functions are
    /// evaluated once per sample and shared by the two determinants.
    pub fn sector_spectra(&self, c: CouplingPair) -> Result<(SectorSpectrum, SectorSpectrum)> {
        let mut s = SectorSpectrum::empty(Sector::S);
        let mut a = SectorSpectrum::empty(Sector::A12);
        for side in [Side::Below, Side::Above] {
            let edge = match side {
                Side::Below => EdgeEnd::Upper,
                Side::Above => EdgeEnd::Lower,
            };
            let points = scan_points(search_interval(c, side), edge, &self.scan);
            let afs = points.iter().map(|&z| self.ev.eval(z)).collect::<Result<Vec<_>>>()?;
            let vs: Vec<f64> = afs.iter().map(|f| delta_s_from(f, c)).collect();
            let va: Vec<f64> = afs.iter().map(|f| delta_a12_from(f, c.mu2)).collect();
            let tol = self.scan.tolerance;
            let zs = zeros_from_samples(
                |z| Ok(delta_s_from(&self.ev.eval(z)?, c)),
                &points,
                &vs,
                Sector::S.rank(),
                tol,
            )
            .map_err(|e| with_context(e, c, Sector::S, side))?;
            let za = zeros_from_samples(
                |z| Ok(delta_a12_from(&self.ev.eval(z)?, c.mu2)),
                &points,
                &va,
                Sector::A12.rank(),
                tol,
            )
            .map_err(|e| with_context(e, c, Sector::A12, side))?;
            zs.into_iter().for_each(|z| s.push(z, side));
            za.into_iter().for_each(|z| a.push(z, side));
        }
        Ok((s, a))
    }

    pub fn sector_spectrum(&self, sector: Sector, c: CouplingPair) -> Result<SectorSpectrum> {
        let (s, a) = self.sector_spectra(c)?;
        Ok(match sector {
            Sector::S => s,
            Sector::A12 => a,
            Sector::Mix => SectorSpectrum { sector: Sector::Mix, ..a },
        })
    }

    /// Spectrum of the full `H(0)`: S roots once, A12 roots twice.
    pub fn full_spectrum_zero_k(&self, c: CouplingPair) -> Result<FullSpectrum> {
        let (s, a) = self.sector_spectra(c)?;
        let merge = |sz: &[f64], az: &[f64]| {
            let mut out: Vec<Level> = Vec::new();
            for &z in sz {
                let coincident = az.iter().any(|&w| (w - z).abs() < COINCIDENCE_TOL);
                out.push(Level { energy: z, multiplicity: 1, sector: Sector::S, coincident });
            }
            for &z in az {
                let coincident = sz.iter().any(|&w| (w - z).abs() < COINCIDENCE_TOL);
                out.push(Level { energy: z, multiplicity: 2, sector: Sector::A12, coincident });
            }
            out.sort_by(|x, y| x.energy.total_cmp(&y.energy));
            out
        };
        let mut marginal: Vec<f64> = s.marginal.iter().chain(&a.marginal).copied().collect();
        marginal.sort_by(f64::total_cmp);
        Ok(FullSpectrum {
            below: merge(&s.below, &a.below),
            above: merge(&s.above, &a.above),
            marginal,
        })
    }

    pub fn eigenfunction_s(&self, c: CouplingPair, z: f64) -> Result<EigenfunctionS> {
        let a = self.ev.eval(z)?;
        let det = delta_s_from(&a, c);
        if !(det.abs() < ROOT_TOL) {
            return Err(Error::Precondition(format!(
                "z = {z} is not a root of the symmetric determinant (|Δ| = {:e})",
                det.abs()
            )));
        }
        let row1 = [1.0 + c.mu1 * a.a11, c.mu2 * a.a12];
        let row2 = [c.mu1 * a.a12, 1.0 + c.mu2 * a.a22];
        let norm = |r: [f64; 2]| r[0].hypot(r[1]);
        // Null vector of [row1; row2] taken orthogonal to row1; when row1
        // vanishes (e.g. μ2 = 0) the second row is used instead.
        let (dir, degenerate) = if norm(row1) >= 1e-12 {
            ([-row1[1], row1[0]], false)
        } else if norm(row2) >= 1e-12 {
            ([-row2[1], row2[0]], true)
        } else {
            return Err(Error::DegenerateEigenvector { z });
        };
        let raw = EigenfunctionS {
            z,
            couplings: c,
            a,
            c1: dir[0],
            c2: dir[1],
            normalization: 1.0,
            degenerate,
        };
        let n2 = self.ev.grid().integrate_even(|cp| raw.eval_cos(cp).powi(2))?;
        if !(n2 > 0.0) {
            return Err(Error::DegenerateEigenvector { z });
        }
        let scale = n2.sqrt().recip();
        Ok(EigenfunctionS { c1: dir[0] * scale, c2: dir[1] * scale, normalization: scale, ..raw })
    }

    pub fn eigenfunction_a12(&self, mu2: f64, z: f64, sector: Sector) -> Result<EigenfunctionA12> {
        let basis = match sector {
            Sector::A12 => BasisFunction::A12,
            Sector::Mix => BasisFunction::Mix,
            Sector::S => {
                return Err(Error::InvalidArgument("symmetric sector has its own builder".into()))
            }
        };
        let a = self.ev.eval(z)?;
        let det = delta_a12_from(&a, mu2);
        if !(det.abs() < ROOT_TOL) {
            return Err(Error::Precondition(format!(
                "z = {z} is not a root of the antisymmetric determinant (|Δ| = {:e})",
                det.abs()
            )));
        }
        let raw = EigenfunctionA12 { z, sector, basis, mu2, a_a12: a.a_a12, normalization: 1.0 };
        let n2 = self.ev.grid().integrate_even(|cp| raw.eval_cos(cp).powi(2))?;
        if !(n2 > 0.0) {
            return Err(Error::DegenerateEigenvector { z });
        }
        Ok(EigenfunctionA12 { normalization: n2.sqrt().recip(), ..raw })
    }
}

fn with_context(e: Error, c: CouplingPair, sector: Sector, side: Side) -> Error {
    match e {
        Error::Inconsistency { found, max, context } => Error::Inconsistency {
            found,
            max,
            context: format!("{context}, sector {}, {side:?}, mu = ({}, {})", sector.name(), c.mu1, c.mu2),
        },
        other => other,
    }
}

/// Symmetric-sector eigenfunction
/// `f(p) = -[μ1 c1 S1(p) + μ2 c2 S2(p)] / (E_0(p) - z)` with `c_i = (f, S_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenfunctionS {
    pub z: f64,
    pub couplings: CouplingPair,
    /// a-functions at `z`.
    pub a: AFunctions,
    pub c1: f64,
    pub c2: f64,
    /// Factor that brought the quadrature norm of `f` to one.
    pub normalization: f64,
    /// The leading row of the 2×2 system vanished and the other row was used.
    pub degenerate: bool,
}

impl EigenfunctionS {
    pub fn eval_cos(&self, c: [f64; 3]) -> f64 {
        let e = 4.0 * (3.0 - c[0] - c[1] - c[2]);
        let num = self.couplings.mu1 * self.c1 * BasisFunction::S1.eval_cos(c)
            + self.couplings.mu2 * self.c2 * BasisFunction::S2.eval_cos(c);
        -num / (e - self.z)
    }

    pub fn eval(&self, p: [f64; 3]) -> f64 {
        self.eval_cos(p.map(f64::cos))
    }

    /// `‖(I - B(z)) c‖ / ‖c‖` for the 2×2 homogeneous system.
    pub fn system_residual(&self) -> f64 {
        let (m1, m2) = (self.couplings.mu1, self.couplings.mu2);
        let a = &self.a;
        let r1 = (1.0 + m1 * a.a11) * self.c1 + m2 * a.a12 * self.c2;
        let r2 = m1 * a.a12 * self.c1 + (1.0 + m2 * a.a22) * self.c2;
        r1.hypot(r2) / self.c1.hypot(self.c2)
    }
}

/// Eigenfunction `-μ2 c b(p) / (E_0(p) - z)` of the `A12` or `MIX` sector, with
/// `b` the sector's interaction function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenfunctionA12 {
    pub z: f64,
    pub sector: Sector,
    pub basis: BasisFunction,
    pub mu2: f64,
    pub a_a12: f64,
    /// The constant `c`, chosen for unit quadrature norm.
    pub normalization: f64,
}

impl EigenfunctionA12 {
    pub fn eval_cos(&self, c: [f64; 3]) -> f64 {
        let e = 4.0 * (3.0 - c[0] - c[1] - c[2]);
        -self.mu2 * self.normalization * self.basis.eval_cos(c) / (e - self.z)
    }

    pub fn eval(&self, p: [f64; 3]) -> f64 {
        self.eval_cos(p.map(f64::cos))
    }

    /// `(f, b)` predicted by the a-function: `-μ2 c a_a12(z)`; equals `c`
    /// exactly when `1 + μ2 a_a12(z) = 0`.
    pub fn projection(&self) -> f64 {
        -self.mu2 * self.normalization * self.a_a12
    }
}
