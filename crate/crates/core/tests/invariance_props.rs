use num_complex::Complex64;
use proptest::prelude::*;
use tfshift::gabor::{periodize, tf_shift, FiniteGaborSystem, Signal};
use tfshift::invariance::{
    criteria_engine, dft_vector_relation, gabor_space, group_closure_check, membership_residual,
    scan_invariance, transport_invariance_check, Verdict,
};
use tfshift::symplectic::{metaplectic_from_generators, J};

fn signal(l: usize) -> impl Strategy<Value = Signal> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), l).prop_filter_map("nonzero window", |v| {
        let s = Signal(
            v.into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        );
        (s.norm() > 1e-3).then_some(s)
    })
}

/// `(L, a, b)` triples with `ab > L` and `2 | a`.
fn shape() -> impl Strategy<Value = (usize, usize, usize)> {
    prop::sample::select(vec![
        (24, 6, 6),
        (24, 8, 4),
        (36, 6, 12),
        (30, 10, 6),
        (40, 10, 8),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn criteria_agree_on_random_windows(
        (l, a, b, g) in shape().prop_flat_map(|(l, a, b)| (Just(l), Just(a), Just(b), signal(l)))
    ) {
        let sys = FiniteGaborSystem::new(l, a, b, g).unwrap();
        let rep = criteria_engine(&sys, 2, 1e-8).unwrap();
        prop_assert!(rep.ambiguous.is_empty());
        prop_assert!(rep.verdict_consistent, "{:?}", rep.criteria);
        prop_assert!(dft_vector_relation(&sys, 2).unwrap() < 1e-8);
    }

    #[test]
    fn periodized_windows_satisfy_all_criteria(
        (l, a, b, g) in shape().prop_flat_map(|(l, a, b)| (Just(l), Just(a), Just(b), signal(l)))
    ) {
        let w = periodize(&g, a / 2).unwrap();
        let sys = FiniteGaborSystem::new(l, a, b, w).unwrap();
        let rep = criteria_engine(&sys, 2, 1e-8).unwrap();
        prop_assert_eq!(rep.verdict, Verdict::AllHold);
        prop_assert!(rep.projections_ok, "{:?}", rep.projections);
    }

    #[test]
    fn lattice_points_are_members(
        (l, a, b, g) in shape().prop_flat_map(|(l, a, b)| (Just(l), Just(a), Just(b), signal(l)))
    ) {
        let sys = FiniteGaborSystem::new(l, a, b, g).unwrap();
        let span = gabor_space(&sys);
        for (t, m) in sys.points() {
            let r = membership_residual(&span, &tf_shift(sys.window(), t, m)).unwrap();
            prop_assert!(r < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn scan_reports_close_under_the_group(
        (l, a, b, g) in shape().prop_flat_map(|(l, a, b)| (Just(l), Just(a), Just(b), signal(l)))
    ) {
        let sys = FiniteGaborSystem::new(l, a, b, g).unwrap();
        let rep = scan_invariance(&sys, 2, 1e-6).unwrap();
        prop_assert!(rep.ambiguous_points.is_empty());
        prop_assert!(group_closure_check(&rep, &sys, 1e-6));
    }
}

#[test]
fn dft_transport_of_a_periodic_window() {
    let g = tfshift::gabor::periodic_gaussian(36, std::f64::consts::PI, 3).unwrap();
    let sys = FiniteGaborSystem::new(36, 6, 6, g).unwrap();
    let op = metaplectic_from_generators(&J, 36).unwrap();
    let rep = transport_invariance_check(&sys, &op, 2, 1e-6).unwrap();
    assert!(rep.sets_equal);
    assert!(rep.within_bound);
}
