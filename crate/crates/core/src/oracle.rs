//! Brute-force check of the determinant results: `H(K)` sampled on the
//! midpoint grid as an `N³ × N³` symmetric matrix and diagonalized densely.
//!
//! The grid operator is `E_K(p_i) δ_ij + w Σ_k μ_k b_k(p_i) b_k(p_j)`, with
//! `w = (2π/N)³` and `b_k` the four interaction functions. It never touches
//! the a-functions, so agreement with the determinant route is a genuine
//! cross-check.

use crate::basis::BasisFunction;
use crate::determinant::CouplingPair;
use crate::dispersion::{band_edges, dispersion_from_cosines, Band, Quasimomentum};
use crate::eigen::{symmetric_eigenvalues, PackedSymmetric};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureGrid;
use crate::spectrum::SpectrumSolver;
use serde::{Deserialize, Serialize};

pub const MIN_DENSE_N: usize = 4;
pub const MAX_DENSE_N: usize = 24;

/// Default out-of-band margin, `10 / N`.
pub fn default_margin(n: usize) -> f64 {
    10.0 / n as f64
}

fn weights(c: CouplingPair) -> [f64; 4] {
    [c.mu1, c.mu2, c.mu2, c.mu2]
}

/// Diagonal and rank-four data of the grid operator, shared by the dense and
/// matrix-free forms.
#[derive(Debug, Clone, PartialEq)]
pub struct GridOperator {
    pub n_per_axis: usize,
    pub k: Quasimomentum,
    pub couplings: CouplingPair,
    pub quad_weight: f64,
    /// `E_K` at the nodes, row-major with `p3` fastest.
    pub diagonal: Vec<f64>,
    /// The four interaction functions at the nodes, in [`BasisFunction::ALL`] order.
    pub basis: [Vec<f64>; 4],
}

impl GridOperator {
    /// Any even `N ≥ 4`; nothing dense is allocated.
    pub fn new(c: CouplingPair, k: Quasimomentum, n: usize) -> Result<Self> {
        let grid = QuadratureGrid::new(n)?;
        let hk = k.half_cosines();
        let cs = grid.cosines();
        let len = grid.len();
        let mut diagonal = Vec::with_capacity(len);
        let mut basis: [Vec<f64>; 4] = std::array::from_fn(|_| Vec::with_capacity(len));
        for &c1 in cs {
            for &c2 in cs {
                for &c3 in cs {
                    let cp = [c1, c2, c3];
                    diagonal.push(dispersion_from_cosines(&hk, cp));
                    for (b, f) in basis.iter_mut().zip(BasisFunction::ALL) {
                        b.push(f.eval_cos(cp));
                    }
                }
            }
        }
        Ok(GridOperator { n_per_axis: n, k, couplings: c, quad_weight: grid.weight(), diagonal, basis })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn band(&self) -> Band {
        band_edges(&self.k)
    }

    /// `y = H x` without forming the matrix.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y: Vec<f64> = self.diagonal.iter().zip(x).map(|(d, v)| d * v).collect();
        for (b, mu) in self.basis.iter().zip(weights(self.couplings)) {
            if mu == 0.0 {
                continue;
            }
            let s = mu * self.quad_weight * b.iter().zip(x).map(|(u, v)| u * v).sum::<f64>();
            y.iter_mut().zip(b).for_each(|(yi, bi)| *yi += s * bi);
        }
        y
    }

    /// `‖(H - z) f‖ / ‖f‖` for node values `f`.
    pub fn relative_residual(&self, f: &[f64], z: f64) -> f64 {
        let hf = self.apply(f);
        let num: f64 = hf.iter().zip(f).map(|(a, v)| (a - z * v).powi(2)).sum();
        let den: f64 = f.iter().map(|v| v * v).sum();
        (num / den).sqrt()
    }

    /// Node values of a function of `(cos p1, cos p2, cos p3)`.
    pub fn sample(&self, f: impl Fn([f64; 3]) -> f64) -> Vec<f64> {
        let grid = QuadratureGrid::new(self.n_per_axis).expect("validated in new");
        let cs = grid.cosines();
        let mut out = Vec::with_capacity(self.dim());
        for &c1 in cs {
            for &c2 in cs {
                for &c3 in cs {
                    out.push(f([c1, c2, c3]));
                }
            }
        }
        out
    }

    fn interaction_entry(&self, i: usize, j: usize) -> f64 {
        let mut v = 0.0;
        for (b, mu) in self.basis.iter().zip(weights(self.couplings)) {
            v += mu * b[i] * b[j];
        }
        self.quad_weight * v
    }
}

/// The grid operator in dense form.
#[derive(Debug, Clone, PartialEq)]
pub struct GridHamiltonian {
    pub op: GridOperator,
    pub matrix: PackedSymmetric,
}

impl GridHamiltonian {
    pub fn assemble(c: CouplingPair, k: Quasimomentum, n: usize) -> Result<Self> {
        if !(MIN_DENSE_N..=MAX_DENSE_N).contains(&n) {
            return Err(Error::GridSize { n, reason: "dense grid needs 4 <= N <= 24" });
        }
        let op = GridOperator::new(c, k, n)?;
        let matrix = PackedSymmetric::from_lower(op.dim(), |i, j| {
            let v = op.interaction_entry(i, j);
            if i == j {
                op.diagonal[i] + v
            } else {
                v
            }
        });
        Ok(GridHamiltonian { op, matrix })
    }

    /// The rank-four interaction part alone.
    pub fn interaction_matrix(&self) -> PackedSymmetric {
        PackedSymmetric::from_lower(self.op.dim(), |i, j| self.op.interaction_entry(i, j))
    }

    pub fn eigenvalues(self) -> Result<Vec<f64>> {
        symmetric_eigenvalues(self.matrix)
    }
}

/// All eigenvalues of the grid Hamiltonian, ascending.
pub fn eigenvalues_dense(h: &GridHamiltonian) -> Result<Vec<f64>> {
    symmetric_eigenvalues(h.matrix.clone())
}

/// Number of singular values of the interaction matrix above `rel_tol`
/// times the largest.
pub fn interaction_rank(h: &GridHamiltonian, rel_tol: f64) -> Result<usize> {
    let ev = symmetric_eigenvalues(h.interaction_matrix())?;
    let top = ev.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if top == 0.0 {
        return Ok(0);
    }
    Ok(ev.iter().filter(|x| x.abs() > rel_tol * top).count())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleCounts {
    pub band: Band,
    pub margin: f64,
    /// Grid eigenvalues below `e_min - margin`, ascending.
    pub below: Vec<f64>,
    /// Grid eigenvalues above `e_max + margin`, ascending.
    pub above: Vec<f64>,
}

impl OracleCounts {
    pub fn from_eigenvalues(ev: &[f64], band: Band, margin: f64) -> Self {
        OracleCounts {
            band,
            margin,
            below: ev.iter().copied().filter(|&x| x < band.e_min - margin).collect(),
            above: ev.iter().copied().filter(|&x| x > band.e_max + margin).collect(),
        }
    }

    pub fn counts(&self) -> (usize, usize) {
        (self.below.len(), self.above.len())
    }
}

pub fn oracle_counts(c: CouplingPair, k: Quasimomentum, n: usize, margin: f64) -> Result<OracleCounts> {
    if !(margin > 0.0) {
        return Err(Error::InvalidArgument(format!("margin must be positive, got {margin}")));
    }
    let h = GridHamiltonian::assemble(c, k, n)?;
    let band = h.op.band();
    let ev = h.eigenvalues()?;
    Ok(OracleCounts::from_eigenvalues(&ev, band, margin))
}

/// `e_m(K) - E_min(K)` along `path`, with `e_m` the `m`-th smallest grid
/// eigenvalue and `E_min` the exact band bottom.
pub fn minmax_profile(
    c: CouplingPair,
    m: usize,
    path: &[Quasimomentum],
    n: usize,
) -> Result<Vec<(Quasimomentum, f64)>> {
    if !(1..=3).contains(&m) {
        return Err(Error::InvalidArgument(format!("level index must be 1..=3, got {m}")));
    }
    path.iter()
        .map(|&k| {
            let h = GridHamiltonian::assemble(c, k, n)?;
            let e_min = h.op.band().e_min;
            let ev = h.eigenvalues()?;
            Ok((k, ev[m - 1] - e_min))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootMatch {
    pub root: f64,
    pub nearest: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub couplings: CouplingPair,
    pub k: [f64; 3],
    pub n: usize,
    pub margin: f64,
    /// Determinant counts of `H(0)` with multiplicity.
    pub det_below: usize,
    pub det_above: usize,
    /// The part of those counts lying beyond the margin, which is all the grid
    /// can resolve.
    pub det_below_resolved: usize,
    pub det_above_resolved: usize,
    pub oracle: OracleCounts,
    /// Each determinant root against the nearest grid eigenvalue (`K = 0` only).
    pub roots: Vec<RootMatch>,
    /// `K = 0`: resolved counts agree exactly. Otherwise they are lower bounds.
    pub pass: bool,
}

/// Determinant route against the grid oracle for one coupling.
pub fn verify(
    solver: &SpectrumSolver,
    c: CouplingPair,
    k: Quasimomentum,
    n: usize,
    margin: f64,
) -> Result<VerifyReport> {
    let spec = solver.full_spectrum_zero_k(c)?;
    let (det_below, det_above) = spec.counts();
    let edge0 = band_edges(&Quasimomentum::ZERO);
    let det_below_resolved = spec.below_energies().iter().filter(|&&z| z < edge0.e_min - margin).count();
    let det_above_resolved = spec.above_energies().iter().filter(|&&z| z > edge0.e_max + margin).count();
    let h = GridHamiltonian::assemble(c, k, n)?;
    let band = h.op.band();
    let ev = h.eigenvalues()?;
    let oracle = OracleCounts::from_eigenvalues(&ev, band, margin);
    let (ob, oa) = oracle.counts();
    let mut roots = Vec::new();
    if k.is_zero() {
        for z in spec.below_energies().into_iter().chain(spec.above_energies()) {
            let nearest = nearest(&ev, z);
            roots.push(RootMatch { root: z, nearest, distance: (nearest - z).abs() });
        }
    }
    let pass = if k.is_zero() {
        (ob, oa) == (det_below_resolved, det_above_resolved)
    } else {
        ob >= det_below_resolved && oa >= det_above_resolved
    };
    Ok(VerifyReport {
        couplings: c,
        k: k.components(),
        n,
        margin,
        det_below,
        det_above,
        det_below_resolved,
        det_above_resolved,
        oracle,
        roots,
        pass,
    })
}

/// Element of the ascending slice `ev` closest to `z`.
pub fn nearest(ev: &[f64], z: f64) -> f64 {
    let i = ev.partition_point(|&x| x < z);
    let mut best = f64::NAN;
    for j in [i.wrapping_sub(1), i] {
        if let Some(&x) = ev.get(j) {
            if best.is_nan() || (x - z).abs() < (best - z).abs() {
                best = x;
            }
        }
    }
    best
}
