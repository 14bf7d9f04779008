use lbs_core::oracle::{self, default_margin, GridHamiltonian};
use lbs_core::{CouplingPair, Quasimomentum, SpectrumSolver};
use std::f64::consts::PI;

#[test]
fn at_most_four_levels_outside_the_band() {
    for (m1, m2) in [(-60.0, -60.0), (60.0, 60.0), (-60.0, 60.0), (0.0, -40.0)] {
        for k in [Quasimomentum::ZERO, Quasimomentum::new(PI / 3.0, 1.0, -0.5)] {
            let oc = oracle::oracle_counts(CouplingPair::new(m1, m2), k, 8, default_margin(8)).unwrap();
            assert!(oc.below.len() + oc.above.len() <= 4, "({m1}, {m2})");
        }
    }
}

#[test]
fn grid_levels_converge_to_roots() {
    let sv = SpectrumSolver::default();
    let c = CouplingPair::new(-20.0, -20.0);
    let roots = sv.full_spectrum_zero_k(c).unwrap().below_energies();
    let dist = |n| {
        let ev = GridHamiltonian::assemble(c, Quasimomentum::ZERO, n).unwrap().eigenvalues().unwrap();
        roots.iter().map(|&z| (oracle::nearest(&ev, z) - z).abs()).fold(0.0, f64::max)
    };
    let (d8, d12) = (dist(8), dist(12));
    assert!(d12 < d8 && d12 < 0.05, "{d8:e} {d12:e}");
}

#[test]
fn interaction_has_rank_four() {
    let h = GridHamiltonian::assemble(CouplingPair::new(-3.0, 2.0), Quasimomentum::new(0.4, 0.0, 1.0), 8).unwrap();
    assert_eq!(oracle::interaction_rank(&h, 1e-10).unwrap(), 4);
}

#[test]
fn verify_reports_pass() {
    let sv = SpectrumSolver::default();
    let r = oracle::verify(&sv, CouplingPair::new(-20.0, -10.0), Quasimomentum::ZERO, 12, default_margin(12)).unwrap();
    assert!(r.pass);
    let r = oracle::verify(&sv, CouplingPair::new(0.0, -16.0), Quasimomentum::new(PI / 2.0, 0.0, 0.0), 8, default_margin(8)).unwrap();
    assert!(r.pass);
}
