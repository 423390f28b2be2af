//! Acceptance gate: twelve checks at their pinned tolerances, one line each.
//! Runs without the libtest harness so the lines are always printed.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tfshift::density::{
    density_transform_check, equidistribution_diagnostic, lower_density_empirical,
    omega_density_formula, PointSetSpec, DEFAULT_PROBE_GRID, GOLDEN_STEP,
};
use tfshift::gabor::{
    canonical_dual, cross_frame_operator, frame_bounds, frame_operator_direct,
    frame_operator_walnut, janssen_representation, periodic_gaussian, periodized_gaussian,
    FiniteGaborSystem, OperatorMatrix, Signal, DEFAULT_RANK_TOL,
};
use tfshift::invariance::{
    criteria_engine, dft_vector_relation, scan_invariance, transport_invariance_check,
    DichotomyVerdict, DEFAULT_TOL,
};
use tfshift::lattice::{
    order_in_lattice, order_in_lattice_brute, reduce_invariant_shift, Lattice2D, Rational,
    ReductionResult, SeparableLattice,
};
use tfshift::symplectic::{
    covariance_residual, metaplectic_from_generators, IntMatrix, MetaplecticOperator, J,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn positive_system() -> FiniteGaborSystem {
    FiniteGaborSystem::new(144, 12, 8, periodic_gaussian(144, PI, 6).unwrap()).unwrap()
}

fn negative_system() -> FiniteGaborSystem {
    FiniteGaborSystem::new(120, 12, 12, periodized_gaussian(120, PI).unwrap()).unwrap()
}

fn gaussian_144() -> FiniteGaborSystem {
    FiniteGaborSystem::new(144, 12, 8, periodized_gaussian(144, PI).unwrap()).unwrap()
}

fn reduction_exactness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad = 0;
    for _ in 0..1000 {
        let a = Rational::new(rng.random_range(1..50), rng.random_range(1..50));
        let b = Rational::new(rng.random_range(1..50), rng.random_range(1..50));
        let m = rng.random_range(2..=50);
        let (r, s) = loop {
            let (r, s) = (rng.random_range(0..m), rng.random_range(0..m));
            if (r, s) != (0, 0) {
                break (r, s);
            }
        };
        let res = reduce_invariant_shift(&a, &b, r, s, m).map_err(|e| e.to_string())?;
        let mapped = ReductionResult::source_lattice(&a, &b)
            .and_then(|src| src.transformed(&res.b))
            .map_err(|e| e.to_string())?;
        let image = res
            .b
            .apply(&[&a * Rational::new(r, m), &b * Rational::new(s, m)]);
        let ok = res.b.det() == Rational::one()
            && mapped.same_lattice(&res.target_lattice().to_lattice())
            && image[0] == &res.alpha * Rational::new(res.d, m)
            && image[1].is_zero();
        if !ok {
            bad += 1;
        }
    }
    ensure(bad == 0, format!("{bad} of 1000 cases inexact"))
}

fn walnut_direct() -> Check {
    let sys = gaussian_144();
    let err = frame_operator_walnut(&sys)
        .0
        .rel_diff(&frame_operator_direct(&sys));
    ensure(err < 1e-10, format!("relative Frobenius error {err:.2e}"))
}

fn janssen_cross() -> Check {
    let sys = gaussian_144();
    let gamma = canonical_dual(&sys, DEFAULT_RANK_TOL)
        .map_err(|e| e.to_string())?
        .gamma;
    let (t, f) = (144 / 8, 2 * 144 / 12);
    let cross = cross_frame_operator(&gamma, sys.window(), t, f).map_err(|e| e.to_string())?;
    let jans = janssen_representation(&gamma, sys.window(), t, f).map_err(|e| e.to_string())?;
    let err = jans.operator.rel_diff(&cross);
    ensure(err < 1e-8, format!("relative error {err:.2e}"))
}

fn positive_case() -> Check {
    let rep = criteria_engine(&positive_system(), 2, 1e-8).map_err(|e| e.to_string())?;
    let ii = rep.res_ii.iter().cloned().fold(0.0, f64::max);
    let p = rep.projections.max();
    let additive = rep.res_iii.rank_sum == rep.res_iii.joint_rank;
    ensure(
        rep.res_i < 1e-8 && ii < 1e-8 && rep.res_iv < 1e-8 && additive && p < 1e-8,
        format!(
            "res_i {:.1e}, res_ii {ii:.1e}, res_iv {:.1e}, ranks {:?} -> {}, projections {p:.1e}",
            rep.res_i, rep.res_iv, rep.res_iii.ranks, rep.res_iii.joint_rank
        ),
    )
}

fn negative_case() -> Check {
    let sys = negative_system();
    let riesz = frame_bounds(&sys, DEFAULT_RANK_TOL).is_riesz_sequence;
    let rep = criteria_engine(&sys, 2, 1e-8).map_err(|e| e.to_string())?;
    let scan = scan_invariance(&sys, 4, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let lattice_only = scan.is_lattice_only()
        && matches!(
            scan.dichotomy_verdict,
            DichotomyVerdict::SubsetOfRefinedLattice { m: 1 }
        );
    let gap = scan.gap_ratio();
    ensure(
        riesz && rep.res_i > 1e-3 && rep.res_iv > 1e-3 && lattice_only && gap >= 1e3,
        format!(
            "riesz {riesz}, res_i {:.3}, res_iv {:.3}, invariant set = lattice {lattice_only} \
             ({} points), gap {gap:.1e}",
            rep.res_i,
            rep.res_iv,
            scan.invariant_set.len()
        ),
    )
}

fn dft_identity() -> Check {
    let p = dft_vector_relation(&positive_system(), 2).map_err(|e| e.to_string())?;
    let n = dft_vector_relation(&negative_system(), 2).map_err(|e| e.to_string())?;
    ensure(
        p < 1e-8 && n < 1e-8,
        format!("positive {p:.1e}, negative {n:.1e}"),
    )
}

fn worst_covariance(op: &MetaplecticOperator) -> f64 {
    let l = op.l as i64;
    (0..l)
        .flat_map(|t| (0..l).map(move |m| (t, m)))
        .map(|z| covariance_residual(op, z))
        .fold(0.0, f64::max)
}

fn metaplectic_covariance() -> Check {
    let mats: [IntMatrix; 4] = [J, [[1, 1], [0, 1]], [[1, 0], [1, 1]], [[2, 1], [3, 2]]];
    let mut worst = 0.0f64;
    for l in [5usize, 7, 9, 15] {
        for b in &mats {
            let op = metaplectic_from_generators(b, l).map_err(|e| e.to_string())?;
            worst = worst.max(worst_covariance(&op));
        }
    }
    // Naive chirp e^{πi n²/L} in place of the lower shear.
    let l = 7;
    let chirp = Signal(
        (0..l as i64)
            .map(|n| num_complex::Complex64::from_polar(1.0, PI * (n * n) as f64 / l as f64))
            .collect(),
    );
    let naive =
        MetaplecticOperator::from_parts([[1, 0], [1, 1]], OperatorMatrix::diagonal(&chirp), l);
    let control = worst_covariance(&naive);
    ensure(
        worst < 1e-10 && control > 1e-2,
        format!("worst residual {worst:.1e}, naive-chirp control {control:.2}"),
    )
}

fn invariance_transport() -> Check {
    let op = metaplectic_from_generators(&J, 144).map_err(|e| e.to_string())?;
    let rep = transport_invariance_check(&positive_system(), &op, 2, DEFAULT_TOL)
        .map_err(|e| e.to_string())?;
    ensure(
        rep.sets_equal && rep.within_bound,
        format!(
            "{} invariant points, mapped sets equal {}, max mapped residual {:.1e}",
            rep.original_set.len(),
            rep.sets_equal,
            rep.max_mapped_residual
        ),
    )
}

fn beurling_density() -> Check {
    let (alpha, beta) = (1.5, 5.0 / 7.0);
    let (p, q) = PointSetSpec::omega_components(alpha, beta, 2);
    let mut worst_component = 0.0f64;
    for spec in [&p, &q] {
        let est = &lower_density_empirical(spec, &[200.0], DEFAULT_PROBE_GRID)
            .map_err(|e| e.to_string())?[0];
        let analytic = spec.analytic_density();
        worst_component = worst_component.max((est.theta - analytic).abs() / analytic);
    }
    let omega = PointSetSpec::omega(alpha, beta, 2);
    let mut worst_transform = 0.0f64;
    for b in [
        [[1.0, 1.0], [0.0, 1.0]],
        [[1.0, 0.0], [-2.0, 1.0]],
        [[2.0, 1.0], [1.0, 1.0]],
    ] {
        let (image, scaled) =
            density_transform_check(&omega, &b, 100.0).map_err(|e| e.to_string())?;
        worst_transform = worst_transform.max((image - scaled).abs() / scaled);
    }
    let mut below = 0;
    for i in 0..10 {
        for nu in 2..12 {
            let ab = 0.1 * 1.6f64.powi(i);
            let d = omega_density_formula(ab, 1.0, nu).map_err(|e| e.to_string())?;
            if d < 2f64.sqrt() {
                below += 1;
            }
        }
    }
    ensure(
        worst_component < 0.05 && worst_transform < 0.05 && below == 0,
        format!(
            "component error {:.2}%, transform error {:.2}%, {below} of 100 grid points below sqrt 2",
            100.0 * worst_component,
            100.0 * worst_transform
        ),
    )
}

fn equidistribution() -> Check {
    let lat = SeparableLattice::new(Rational::one(), Rational::one()).unwrap();
    let z = [1.0, 2f64.sqrt()];
    let many =
        equidistribution_diagnostic(z, &lat, GOLDEN_STEP, 10_000).map_err(|e| e.to_string())?;
    let few = equidistribution_diagnostic(z, &lat, GOLDEN_STEP, 100).map_err(|e| e.to_string())?;
    let control = equidistribution_diagnostic([1.0, 0.5], &lat, GOLDEN_STEP, 10_000)
        .map_err(|e| e.to_string())?;
    ensure(
        many.covering_radius < 0.05
            && many.discrepancy < few.discrepancy
            && control.covering_radius > 0.1,
        format!(
            "covering {:.4}, discrepancy {:.4} (n=1e4) vs {:.4} (n=1e2), rational control {:.3}",
            many.covering_radius, many.discrepancy, few.discrepancy, control.covering_radius
        ),
    )
}

fn order_finding() -> Check {
    let lat = Lattice2D::integer();
    let mut count = 0;
    let mut bad = 0;
    for q in 1..=20 {
        for p in 0..q {
            for v in 1..=20 {
                for u in 0..v {
                    let z = [Rational::new(p, q), Rational::new(u, v)];
                    count += 1;
                    if order_in_lattice(&z, &lat, 400) != order_in_lattice_brute(&z, &lat, 400) {
                        bad += 1;
                    }
                }
            }
        }
    }
    ensure(bad == 0, format!("{bad} mismatches over {count} points"))
}

fn cli_determinism() -> Check {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut outputs = Vec::new();
    for d in &dirs {
        let out = Command::new(env!("CARGO_BIN_EXE_tfshift"))
            .args(["criteria", "--L", "144", "--a", "12", "--b", "8"])
            .args(["--window", "periodic-gaussian", "--nu", "2", "--output-dir"])
            .arg(d.path())
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit status {}", out.status));
        }
        let json = std::fs::read(d.path().join("criteria.json")).map_err(|e| e.to_string())?;
        outputs.push((out.stdout, json));
    }
    ensure(
        outputs[0] == outputs[1] && !outputs[0].1.is_empty(),
        format!(
            "criteria.json {} bytes, identical {}",
            outputs[0].1.len(),
            outputs[0] == outputs[1]
        ),
    )
}

fn main() {
    let checks: [Criterion; 12] = [
        ("reduction exactness", reduction_exactness),
        ("Walnut form equals direct frame operator", walnut_direct),
        ("Janssen form equals cross-frame operator", janssen_cross),
        ("criteria agree, positive case", positive_case),
        ("criteria agree, undersampled Gaussian", negative_case),
        ("DFT-vector identity", dft_identity),
        ("metaplectic covariance", metaplectic_covariance),
        ("invariance-set transport", invariance_transport),
        ("Beurling density", beurling_density),
        ("equidistribution", equidistribution),
        ("order finding", order_finding),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] {:>2}. {name}: {detail} ({secs:.2}s)", i + 1);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        checks.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
