//! Acceptance suite: one test per release criterion. Each test pins its
//! tolerance in code and prints a PASS line (visible with `--nocapture`).
//!
//! Run with:  cargo test -p spincorr-cli --test acceptance -- --nocapture

use std::f64::consts::{PI, SQRT_2, TAU};
use std::process::Command;
use std::time::Instant;

use rand::Rng;
use spincorr_core::{
    agreement_sweep,amplitude_matrix, basis_states, chsh, cond_prob_matrix,
    cond_prob_matrix_singlet, context_rng, context_rotation, correlation_exact,
    correlation_singlet, correlation_singlet_direct, ks_statistic, ks_test, product_basis,
    ChshAngles, Direction, Engine, Mode, PartitionSpec, ALGEBRA_TOL,
};

const TSIRELSON: f64 = 2.0 * SQRT_2;

fn pass(number: u32, what: &str) {
    println!("PASS criterion {number}: {what}");
}

fn random_direction(rng: &mut impl Rng) -> Direction {
    Direction::new(rng.gen::<f64>() * TAU)
}

#[test]
fn criterion_01_single_spin_exact_correlation() {
    let start = Instant::now();
    let origin = Direction::new(0.0);
    for i in 0..1000 {
        let theta = TAU * i as f64 / 1000.0;
        let got = correlation_exact(origin, Direction::new(theta));
        assert!(
            (got - theta.cos()).abs() < ALGEBRA_TOL,
            "theta {theta}: {got} vs {}",
            theta.cos()
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(1, "single-spin exact correlation equals cos θ within 1e-12 on a 1000-point grid");
}

#[test]
fn criterion_02_singlet_exact_correlation_both_routes() {
    let start = Instant::now();
    let origin = Direction::new(0.0);
    for i in 0..1000 {
        let theta = TAU * i as f64 / 1000.0;
        let b = Direction::new(theta);
        let want = -theta.cos();
        let spectral = correlation_singlet(origin, b);
        let direct = correlation_singlet_direct(origin, b);
        assert!((spectral - want).abs() < ALGEBRA_TOL, "spectral at {theta}");
        assert!((direct - want).abs() < ALGEBRA_TOL, "direct at {theta}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(2, "singlet correlation equals −cos θ within 1e-12 via spectral and direct routes");
}

#[test]
fn criterion_03_double_stochasticity() {
    let mut rng = context_rng(303, 0);
    for _ in 0..1000 {
        let (a, b) = (random_direction(&mut rng), random_direction(&mut rng));
        for m in [cond_prob_matrix(a, b).entries(), cond_prob_matrix_singlet(a, b).entries()] {
            for (i, row) in m.iter().enumerate() {
                assert!((row[0] + row[1] - 1.0).abs() < ALGEBRA_TOL);
                assert!((m[0][i] + m[1][i] - 1.0).abs() < ALGEBRA_TOL);
                assert!(row.iter().all(|entry| (0.0..=1.0).contains(entry)));
            }
            assert!((m[0][0] - m[1][1]).abs() < ALGEBRA_TOL);
            assert!((m[0][1] - m[1][0]).abs() < ALGEBRA_TOL);
        }
    }
    pass(3, "conditional matrices doubly stochastic and sign-symmetric for 1000 random contexts");
}

#[test]
fn criterion_04_unitary_context_algebra() {
    let mut rng = context_rng(404, 0);
    for _ in 0..100 {
        let (a, b, c) = (
            random_direction(&mut rng),
            random_direction(&mut rng),
            random_direction(&mut rng),
        );
        let transported = context_rotation(b, c).compose(&amplitude_matrix(a, b));
        assert!(transported.max_abs_diff(&amplitude_matrix(a, c)) < ALGEBRA_TOL);
    }
    for _ in 0..100 {
        let (b, c, d) = (
            random_direction(&mut rng),
            random_direction(&mut rng),
            random_direction(&mut rng),
        );
        let chained = context_rotation(c, d).compose(&context_rotation(b, c));
        assert!(chained.max_abs_diff(&context_rotation(b, d)) < ALGEBRA_TOL);
    }
    for _ in 0..100 {
        let (b, c) = (random_direction(&mut rng), random_direction(&mut rng));
        let u = context_rotation(b, c);
        let from = basis_states(b);
        let to = basis_states(c);
        for (source, target) in [(from.0, to.0), (from.1, to.1)] {
            let moved = u.apply(&source);
            assert!((moved.amp_plus - target.amp_plus).norm() < ALGEBRA_TOL);
            assert!((moved.amp_minus - target.amp_minus).norm() < ALGEBRA_TOL);
        }
    }
    pass(4, "context rotations transport amplitude matrices, compose, and map bases within 1e-12");
}

#[test]
fn criterion_05_projector_completeness() {
    let mut rng = context_rng(505, 0);
    for _ in 0..100 {
        let (a, b) = (random_direction(&mut rng), random_direction(&mut rng));
        let check = product_basis(a, b).projector_check();
        assert!(
            check.within(ALGEBRA_TOL),
            "projector family off: {check:?} at ({}, {})",
            a.theta(),
            b.theta()
        );
    }
    pass(5, "product-basis projectors idempotent, orthogonal, complete for 100 random contexts");
}

#[test]
fn criterion_06_sampler_law() {
    // Fixed seed set 0..100; the law predicts about one α = 0.01 failure.
    let passes = (0..100).filter(|&seed| ks_test(100_000, seed).pass).count();
    assert!(passes >= 99, "only {passes}/100 seeds passed the KS test");

    // Distinguishing power: uniform draws on [0, π] must fail loudly.
    let n = 100_000u64;
    let mut rng = context_rng(606, 0);
    let mut fixture: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * PI).collect();
    let statistic = ks_statistic(&mut fixture, spincorr_core::cdf);
    let critical = spincorr_core::bell::KS_CRITICAL_COEFF_001 / (n as f64).sqrt();
    assert!(
        statistic > critical,
        "uniform fixture passed: {statistic} <= {critical}"
    );
    pass(6, "KS accepts the sine law in ≥99/100 seeds and rejects the uniform fixture");
}

#[test]
fn criterion_07_monte_carlo_agreement_sweep() {
    let start = Instant::now();
    for mode in [Mode::Single, Mode::Bipartite] {
        let report = agreement_sweep(mode, 50, 100_000, 707);
        assert!(
            report.max_abs_z < 5.0,
            "{mode:?}: max |z| = {}",
            report.max_abs_z
        );
        assert!(!report.flagged);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    pass(7, "50-point sweeps at n=1e5 stay under |z| = 5 in both modes within the time budget");
}

#[test]
fn criterion_08_partition_probabilities() {
    let n = 1_000_000u64;
    for (index, theta) in [PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0]
        .into_iter()
        .enumerate()
    {
        let p_up = (theta / 2.0).cos().powi(2);
        let sigma = (p_up * (1.0 - p_up) / n as f64).sqrt();
        let band = 4.0 * sigma;

        let seed = 808 + index as u64;
        let single =
            spincorr_core::partition_probabilities(&PartitionSpec::new(Mode::Single, theta), n, seed);
        assert!(
            (single.0 - p_up).abs() < band,
            "single θ={theta}: {} vs {p_up}",
            single.0
        );
        assert!((single.1 - (1.0 - p_up)).abs() < band);

        let pair = spincorr_core::partition_probabilities(
            &PartitionSpec::new(Mode::Bipartite, theta),
            n,
            seed,
        );
        assert!(
            (pair.0 - (1.0 - p_up)).abs() < band,
            "bipartite θ={theta}: {} vs {}",
            pair.0,
            1.0 - p_up
        );
        assert!((pair.1 - p_up).abs() < band);
    }
    pass(8, "partition frequencies converge to the half-angle laws, swapped in bipartite mode");
}

#[test]
fn criterion_09_chsh() {
    let exact = chsh(&ChshAngles::standard(), Engine::Exact, 0, 0);
    assert!(
        (exact.s_value - TSIRELSON).abs() < ALGEBRA_TOL,
        "exact s = {}",
        exact.s_value
    );

    let sampled = chsh(&ChshAngles::standard(), Engine::Sampled, 1_000_000, 909);
    assert!(
        (sampled.s_value - TSIRELSON).abs() < 4.0 * sampled.s_std_error,
        "sampled s = {} ± {}",
        sampled.s_value,
        sampled.s_std_error
    );

    let mut rng = context_rng(910, 0);
    let mut best: f64 = 0.0;
    for _ in 0..10_000 {
        let angles = ChshAngles::from_array([
            rng.gen::<f64>() * TAU,
            rng.gen::<f64>() * TAU,
            rng.gen::<f64>() * TAU,
            rng.gen::<f64>() * TAU,
        ]);
        best = best.max(chsh(&angles, Engine::Exact, 0, 0).s_value);
    }
    assert!(best <= TSIRELSON + 1e-9, "search found s = {best}");
    pass(9, "CHSH hits 2√2 exactly and sampled, and never exceeds it over 10^4 random settings");
}

#[test]
fn criterion_10_byte_identical_serialization() {
    let runs: &[&[&str]] = &[
        &["exact", "--theta", "0.7", "--theta", "2.1", "--seed", "5"],
        &["matrix", "--theta", "0.7", "--mode", "bipartite"],
        &["sample", "--theta", "1.1", "--mode", "bipartite", "--n", "20000", "--seed", "5"],
        &["sweep", "--grid-size", "8", "--n", "2000", "--seed", "5"],
        &["chsh", "--engine", "sampled", "--n", "5000", "--seed", "5"],
        &["kstest", "--n", "5000", "--seed", "5"],
    ];
    for base in runs {
        for format in ["json", "csv"] {
            let mut args = base.to_vec();
            args.extend(["--format", format]);
            let first = run_binary(&args);
            let second = run_binary(&args);
            assert!(!first.is_empty());
            assert_eq!(first, second, "{args:?} not byte-identical");
        }
    }

    // Same contract through --output files.
    let dir = tempfile::tempdir().unwrap();
    let path_a = dir.path().join("a.csv");
    let path_b = dir.path().join("b.csv");
    for (path, _) in [(&path_a, 0), (&path_b, 1)] {
        let status = Command::new(env!("CARGO_BIN_EXE_spincorr"))
            .args([
                "sweep", "--grid-size", "6", "--n", "2000", "--seed", "9", "--format", "csv",
                "--output",
            ])
            .arg(path)
            .env_remove("SPIN_SIM_SEED")
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(
        std::fs::read(&path_a).unwrap(),
        std::fs::read(&path_b).unwrap()
    );
    pass(10, "every command is byte-identical across repeated runs with a fixed config and seed");
}

fn run_binary(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_spincorr"))
        .args(args)
        .env_remove("SPIN_SIM_SEED")
        .output()
        .expect("binary should run");
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}
