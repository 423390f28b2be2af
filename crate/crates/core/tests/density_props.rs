use proptest::prelude::*;
use tfshift::density::{
    count_in_box, interval_count_bounds, lower_density_empirical, omega_density_formula,
    PointSetSpec,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn omega_density_lower_bound(alpha in 0.05f64..20.0, beta in 0.05f64..20.0, nu in 2i64..12) {
        let d = omega_density_formula(alpha, beta, nu).unwrap();
        prop_assert!(d >= 2.0 * (1.0 - 1.0 / nu as f64).sqrt() - 1e-12);
    }

    #[test]
    fn interval_count_within_bounds(beta in 0.1f64..10.0, r in 0.5f64..500.0) {
        let (lo, hi, n) = interval_count_bounds(beta, r).unwrap();
        prop_assert!(lo - 1e-9 <= n as f64 && n as f64 <= hi + 1e-9);
    }

    #[test]
    fn lattice_box_count_near_area(
        alpha in 0.3f64..3.0,
        beta in 0.3f64..3.0,
        cx in -50.0f64..50.0,
        cy in -50.0f64..50.0,
    ) {
        let spec = PointSetSpec::separable(alpha, beta);
        let r = 20.0;
        let n = count_in_box(&spec, [cx, cy], r) as f64;
        // Per axis the count is within one of 2R/step.
        let (nx, ny) = (2.0 * r / alpha, 2.0 * r / beta);
        prop_assert!(n >= (nx - 1.0) * (ny - 1.0) - 1e-9);
        prop_assert!(n <= (nx + 1.0) * (ny + 1.0) + 1e-9);
    }

    #[test]
    fn shift_does_not_change_density(
        alpha in 0.5f64..2.0,
        beta in 0.5f64..2.0,
        sx in -1.0f64..1.0,
        sy in -1.0f64..1.0,
    ) {
        let basis = [[alpha, 0.0], [0.0, beta]];
        let plain = PointSetSpec::Lattice { basis };
        let shifted = PointSetSpec::ShiftedLattice { basis, shift: [sx, sy] };
        let a = lower_density_empirical(&plain, &[60.0], 16).unwrap()[0].theta;
        let b = lower_density_empirical(&shifted, &[60.0], 16).unwrap()[0].theta;
        prop_assert!((a - b).abs() < 0.05 * a);
    }
}
