use lbs_core::regions::{self, D3Reading};
use lbs_core::{band_edge_constants, classify, CouplingPair};

#[test]
fn mirror_swaps_sides() {
    for (m1, m2) in [(-20.0, -20.0), (5.0, -3.0), (-13.0, 7.0), (0.0, -15.0), (40.0, 1.0)] {
        let a = classify(CouplingPair::new(m1, m2));
        let b = classify(CouplingPair::new(-m1, -m2));
        assert_eq!(a.a_minus, b.a_plus);
        assert_eq!(a.a_plus, b.a_minus);
        assert_eq!(a.b_minus, b.b_plus);
        assert_eq!(a.sum_below, b.sum_above);
        assert_eq!(a.on_axis.g.map(|(x, y)| (y, x)), b.on_axis.g);
    }
}

#[test]
fn table_labels() {
    let k = band_edge_constants();
    let g = |m1: f64, m2: f64, r: D3Reading| classify(CouplingPair::new(m1, m2)).labels(r).g;
    assert_eq!(g(0.0, 0.0, D3Reading::OnAxis), Some((0, 0)));
    assert_eq!(g(-20.0, -10.0, D3Reading::OnAxis), Some((2, 0)));
    assert_eq!(g(20.0, 10.0, D3Reading::OnAxis), Some((0, 2)));
    let deep = -(k.mu2_crit + 1.0);
    assert_eq!(g(0.0, deep, D3Reading::OnAxis), Some((3, 0)));
    assert_eq!(g(0.0, -deep, D3Reading::OnAxis), Some((0, 3)));
    // Off the axis the on-axis reading puts this point in D1.
    assert_eq!(g(-3.0, deep, D3Reading::OnAxis), Some((1, 0)));
    assert_eq!(g(-3.0, deep, D3Reading::OffAxis), Some((3, 0)));
}

#[test]
fn inclusions_hold_and_excess_is_found() {
    let r = regions::inclusion_checks();
    assert_eq!(r.points, 40_000);
    assert!(r.counterexamples.is_empty(), "{:?}", &r.counterexamples[..r.counterexamples.len().min(3)]);
    assert!(r.g_forbidden.is_empty());
    assert!(r.four_level_points > 0);
    assert!(classify(CouplingPair::new(-20.0, -20.0)).exceeds_table());
}

#[test]
fn axis_range_parsing() {
    let a: regions::AxisRange = "-60:60:5".parse().unwrap();
    assert_eq!(a.values(), vec![-60.0, -30.0, 0.0, 30.0, 60.0]);
    assert!("1:2".parse::<regions::AxisRange>().is_err());
    assert!("1:2:0".parse::<regions::AxisRange>().is_err());
}
