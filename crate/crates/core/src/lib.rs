//! Bound states of two identical bosons on the cubic lattice ℤ³ with an
//! on-site coupling `mu1` and a nearest-neighbour coupling `mu2`.
//!
//! The crate works with the fiber operators `H(K) = H0(K) + V` acting on even
//! functions of the relative quasi-momentum. At `K = 0` the operator splits
//! into a fully symmetric sector (rank-two interaction) and two unitarily
//! equivalent rank-one sectors, and every eigenvalue outside the band
//! `[0, 24]` is a zero of a small perturbation determinant built from four
//! torus integrals (the "a-functions").
//!
//! Module map:
//!
//! - [`dispersion`]: the two-particle dispersion and band edges.
//! - [`basis`]: the four orthonormal interaction functions.
//! - [`quadrature`]: midpoint torus grids and resolvent integrals.
//! - [`bessel`] / [`laplace`]: the independent Laplace–Bessel route to the
//!   same integrals, exact at the band edge.
//! - [`afunc`]: the dispatcher combining both routes.
//! - [`determinant`]: perturbation determinants, threshold polynomials and
//!   the band-edge constants.
//! - [`roots`] / [`spectrum`]: locating eigenvalues and eigenfunctions.
//! - [`regions`]: the coupling-plane partitions and phase scans.
//! - [`oracle`] / [`eigen`]: brute-force grid diagonalization used to check
//!   every count.

pub mod afunc;
pub mod basis;
pub mod bessel;
pub mod determinant;
pub mod dispersion;
pub mod eigen;
pub mod error;
pub mod gauss;
pub mod laplace;
pub mod oracle;
pub mod quadrature;
pub mod regions;
pub mod roots;
pub mod spectrum;

pub use afunc::{AEvaluator, AFunctions, AKind};
pub use basis::BasisFunction;
pub use determinant::{band_edge_constants, BandEdgeConstants, CouplingPair, ThresholdPolynomials};
pub use dispersion::{Band, MomentumPoint, Quasimomentum};
pub use error::{Error, Result};
pub use quadrature::QuadratureGrid;
pub use regions::{classify, critical_curve, Branch, RegionReport};
pub use spectrum::{FullSpectrum, Sector, SectorSpectrum, Side, SpectrumSolver};
