//! Cross-engine experiments: exact-vs-sampled agreement sweeps, CHSH
//! evaluation for the singlet, and a Kolmogorov–Smirnov check that the
//! sampler really draws from the sine density.

use std::f64::consts::PI;

use serde::Serialize;

use crate::bipartite::correlation_singlet;
use crate::direction::{reduce_separation, Direction};
use crate::sampler::{
    cdf, classify, context_rng, fresh_context_estimates, sample_phi, Mode, PartitionSpec,
};
use crate::spin::correlation_exact;

/// A sweep whose |z| exceeds this is flagged: with ≤100 grid points the
/// chance of a false flag under agreement is negligible.
pub const SWEEP_Z_FLAG: f64 = 6.0;

/// Asymptotic α = 0.01 Kolmogorov–Smirnov coefficient: critical = 1.628/√n.
pub const KS_CRITICAL_COEFF_001: f64 = 1.628;

/// One grid point of an agreement sweep. `z_score` is undefined (None) when
/// the sampled standard error is zero, which happens at the certain angles
/// θ = 0 and θ = π; there the sampled mean must equal the exact value.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub exact: f64,
    pub sampled_mean: f64,
    pub std_error: f64,
    pub z_score: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub mode: Mode,
    pub grid_size: u64,
    pub n: u64,
    pub seed: u64,
    /// Largest |z| over the grid; infinite if a zero-error row mismatched.
    pub max_abs_z: f64,
    /// True when `max_abs_z` exceeds [`SWEEP_Z_FLAG`].
    pub flagged: bool,
    pub rows: Vec<SweepRow>,
}

/// Sweep θ over a uniform grid on [0, π], estimating each context with the
/// sampler (fresh stream per grid point) and comparing against the exact
/// engine for the chosen mode.
pub fn agreement_sweep(mode: Mode, grid_size: u64, n: u64, seed: u64) -> SweepReport {
    assert!(grid_size >= 2, "grid needs at least its two endpoints");
    assert!(n >= 1_000, "sweep needs at least 1000 samples per point");
    let thetas: Vec<f64> = (0..grid_size)
        .map(|i| PI * i as f64 / (grid_size - 1) as f64)
        .collect();
    let estimates = fresh_context_estimates(&thetas, mode, n, seed);

    let origin = Direction::new(0.0);
    let mut max_abs_z: f64 = 0.0;
    let rows: Vec<SweepRow> = thetas
        .iter()
        .zip(estimates.iter())
        .map(|(&theta, est)| {
            let exact = match mode {
                Mode::Single => correlation_exact(origin, Direction::new(theta)),
                Mode::Bipartite => correlation_singlet(origin, Direction::new(theta)),
            };
            let z_score = if est.std_error > 0.0 {
                let z = (est.mean - exact) / est.std_error;
                max_abs_z = max_abs_z.max(z.abs());
                Some(z)
            } else {
                // Zero spread means the angle is certain; the sampled mean
                // must sit on the exact value up to the algebra tolerance.
                if (est.mean - exact).abs() > crate::ALGEBRA_TOL {
                    max_abs_z = f64::INFINITY;
                }
                None
            };
            SweepRow {
                theta,
                exact,
                sampled_mean: est.mean,
                std_error: est.std_error,
                z_score,
            }
        })
        .collect();

    SweepReport {
        mode,
        grid_size,
        n,
        seed,
        max_abs_z,
        flagged: !max_abs_z.is_finite() || max_abs_z > SWEEP_Z_FLAG,
        rows,
    }
}

/// Which engine produced a CHSH value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Exact,
    Sampled,
}

/// The four measurement angles of a CHSH run: two settings per side.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ChshAngles {
    pub a: f64,
    pub a_alt: f64,
    pub b: f64,
    pub b_alt: f64,
}

impl ChshAngles {
    /// The angle set (0, π/2, π/4, 3π/4) that maximizes the singlet value.
    pub fn standard() -> Self {
        Self {
            a: 0.0,
            a_alt: PI / 2.0,
            b: PI / 4.0,
            b_alt: 3.0 * PI / 4.0,
        }
    }

    pub fn from_array(angles: [f64; 4]) -> Self {
        Self {
            a: angles[0],
            a_alt: angles[1],
            b: angles[2],
            b_alt: angles[3],
        }
    }

    /// Separation angles of the four correlation contexts, in the fixed
    /// order (a,b), (a,b′), (a′,b), (a′,b′).
    pub fn context_separations(&self) -> [f64; 4] {
        [
            reduce_separation(self.b - self.a),
            reduce_separation(self.b_alt - self.a),
            reduce_separation(self.b - self.a_alt),
            reduce_separation(self.b_alt - self.a_alt),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChshResult {
    pub engine: Engine,
    pub angles: ChshAngles,
    /// E(a,b), E(a,b′), E(a′,b), E(a′,b′).
    pub correlations: [f64; 4],
    /// Standard errors of the four correlations; zeros for the exact engine.
    pub std_errors: [f64; 4],
    /// |E(a,b) − E(a,b′) + E(a′,b) + E(a′,b′)|
    pub s_value: f64,
    /// Quadrature sum of the four standard errors.
    pub s_std_error: f64,
    pub n: u64,
    pub seed: u64,
}

fn combine(correlations: [f64; 4], std_errors: [f64; 4]) -> (f64, f64) {
    let s = (correlations[0] - correlations[1] + correlations[2] + correlations[3]).abs();
    let se = std_errors.iter().map(|e| e * e).sum::<f64>().sqrt();
    (s, se)
}

/// Evaluate the CHSH combination for the singlet. The sampled engine gives
/// each of the four contexts its own independent φ stream; results from one
/// context are never reused in another.
pub fn chsh(angles: &ChshAngles, engine: Engine, n: u64, seed: u64) -> ChshResult {
    let (correlations, std_errors) = match engine {
        Engine::Exact => {
            let mut e = [0.0; 4];
            for (value, pair) in e.iter_mut().zip([
                (angles.a, angles.b),
                (angles.a, angles.b_alt),
                (angles.a_alt, angles.b),
                (angles.a_alt, angles.b_alt),
            ]) {
                *value = correlation_singlet(Direction::new(pair.0), Direction::new(pair.1));
            }
            (e, [0.0; 4])
        }
        Engine::Sampled => {
            assert!(n >= 1_000, "sampled CHSH needs at least 1000 draws per context");
            let estimates =
                fresh_context_estimates(&angles.context_separations(), Mode::Bipartite, n, seed);
            let mut e = [0.0; 4];
            let mut se = [0.0; 4];
            for (i, est) in estimates.iter().enumerate() {
                e[i] = est.mean;
                se[i] = est.std_error;
            }
            (e, se)
        }
    };
    let (s_value, s_std_error) = combine(correlations, std_errors);
    ChshResult {
        engine,
        angles: *angles,
        correlations,
        std_errors,
        s_value,
        s_std_error,
        n,
        seed,
    }
}

/// Diagnostic variant of the sampled CHSH that reuses ONE φ realization for
/// all four contexts. Non-physical: individual results may not be carried
/// from one context to another, and this run exists only to show that the
/// four estimates become statistically dependent. Kept out of the CLI.
pub fn chsh_shared_phi(angles: &ChshAngles, n: u64, seed: u64) -> ChshResult {
    assert!(n >= 1_000, "sampled CHSH needs at least 1000 draws per context");
    let phis = sample_phi(&mut context_rng(seed, 0), n);
    let mut correlations = [0.0; 4];
    let mut std_errors = [0.0; 4];
    for (i, &theta) in angles.context_separations().iter().enumerate() {
        let spec = PartitionSpec::new(Mode::Bipartite, theta);
        let sum: i64 = phis.iter().map(|&phi| classify(phi, &spec).signum()).sum();
        let mean = sum as f64 / n as f64;
        correlations[i] = mean;
        std_errors[i] = if n > 1 {
            ((1.0 - mean * mean).max(0.0) / (n as f64 - 1.0)).sqrt()
        } else {
            0.0
        };
    }
    let (s_value, s_std_error) = combine(correlations, std_errors);
    ChshResult {
        engine: Engine::Sampled,
        angles: *angles,
        correlations,
        std_errors,
        s_value,
        s_std_error,
        n,
        seed,
    }
}

/// One-sample Kolmogorov–Smirnov statistic of `samples` against a CDF.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    assert!(!samples.is_empty());
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        sup = sup.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    sup
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub critical_001: f64,
    pub pass: bool,
    pub n: u64,
    pub seed: u64,
}

/// Goodness-of-fit of the sampler against its target law at α = 0.01,
/// using the asymptotic critical value 1.628/√n.
pub fn ks_test(n: u64, seed: u64) -> KsResult {
    assert!(n >= 1_000, "KS test needs at least 1000 samples");
    let mut samples = sample_phi(&mut context_rng(seed, 0), n);
    let statistic = ks_statistic(&mut samples, cdf);
    let critical_001 = KS_CRITICAL_COEFF_001 / (n as f64).sqrt();
    KsResult {
        statistic,
        critical_001,
        pass: statistic < critical_001,
        n,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::inverse_cdf;
    use approx::assert_abs_diff_eq;
    use rand::Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    const TSIRELSON: f64 = 2.828_427_124_746_190_3; // 2√2

    #[test]
    fn chsh_exact_standard_angles() {
        let result = chsh(&ChshAngles::standard(), Engine::Exact, 0, 0);
        assert_abs_diff_eq!(result.s_value, TSIRELSON, epsilon = 1e-12);
        assert_eq!(result.std_errors, [0.0; 4]);
        assert_eq!(result.s_std_error, 0.0);
        assert_eq!(result.engine, Engine::Exact);
    }

    #[test]
    fn chsh_exact_degenerate_angles() {
        // Settings (0, π/2, 0, π/2): separations (0, π/2, π/2, 0) give
        // correlations (−1, 0, 0, −1) and s = 2.
        let angles = ChshAngles::from_array([0.0, FRAC_PI_2, 0.0, FRAC_PI_2]);
        let result = chsh(&angles, Engine::Exact, 0, 0);
        assert_abs_diff_eq!(result.s_value, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(result.correlations[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(result.correlations[1], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn chsh_exact_is_offset_invariant() {
        let base = chsh(&ChshAngles::standard(), Engine::Exact, 0, 0);
        for offset in [0.3, -1.9, 11.0] {
            let shifted = ChshAngles::from_array([
                offset,
                FRAC_PI_2 + offset,
                FRAC_PI_4 + offset,
                3.0 * FRAC_PI_4 + offset,
            ]);
            let result = chsh(&shifted, Engine::Exact, 0, 0);
            assert_abs_diff_eq!(result.s_value, base.s_value, epsilon = 1e-12);
        }
    }

    #[test]
    fn chsh_sampled_converges() {
        let result = chsh(&ChshAngles::standard(), Engine::Sampled, 200_000, 5);
        assert!(
            (result.s_value - TSIRELSON).abs() < 4.0 * result.s_std_error,
            "s = {} ± {}",
            result.s_value,
            result.s_std_error
        );
    }

    #[test]
    fn shared_phi_differs_from_fresh_streams() {
        let fresh = chsh(&ChshAngles::standard(), Engine::Sampled, 50_000, 9);
        let shared = chsh_shared_phi(&ChshAngles::standard(), 50_000, 9);
        assert_ne!(fresh.correlations, shared.correlations);
        // Same draws classified per context: contexts with equal separation
        // angles yield bit-identical estimates under the shared stream.
        let symmetric = chsh_shared_phi(&ChshAngles::standard(), 50_000, 9);
        assert_eq!(shared.correlations, symmetric.correlations);
        assert!((shared.s_value - TSIRELSON).abs() < 5.0 * shared.s_std_error);
    }

    #[test]
    fn sweep_endpoints_match_exactly() {
        let report = agreement_sweep(Mode::Single, 9, 2_000, 3);
        assert_eq!(report.rows.len(), 9);
        let first = &report.rows[0];
        assert_eq!(first.sampled_mean, 1.0);
        assert!(first.z_score.is_none());
        let last = &report.rows[8];
        assert_eq!(last.sampled_mean, -1.0);
        assert!(last.z_score.is_none());
        assert!(report.max_abs_z.is_finite());
        assert!(!report.flagged, "max |z| = {}", report.max_abs_z);
    }

    #[test]
    fn sweep_bipartite_mirrors_single() {
        let single = agreement_sweep(Mode::Single, 7, 2_000, 4);
        let pair = agreement_sweep(Mode::Bipartite, 7, 2_000, 4);
        for (s, p) in single.rows.iter().zip(pair.rows.iter()) {
            assert_abs_diff_eq!(s.exact, -p.exact, epsilon = 1e-12);
            assert_eq!(s.sampled_mean, -p.sampled_mean);
        }
    }

    #[test]
    fn ks_critical_value() {
        let result = ks_test(10_000, 1);
        assert_abs_diff_eq!(result.critical_001, 0.01628, epsilon = 1e-12);
    }

    #[test]
    fn ks_accepts_the_sine_law() {
        let result = ks_test(100_000, 2);
        assert!(result.pass, "statistic {} ≥ {}", result.statistic, result.critical_001);
    }

    #[test]
    fn ks_rejects_uniform_samples() {
        // Fixture: uniform draws on [0, π] masquerading as hidden angles.
        let n = 100_000;
        let mut rng = context_rng(2, 0);
        let mut samples: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * PI).collect();
        let statistic = ks_statistic(&mut samples, cdf);
        let critical = KS_CRITICAL_COEFF_001 / (n as f64).sqrt();
        assert!(
            statistic > critical,
            "uniform fixture slipped through: {statistic} < {critical}"
        );
        // The asymptotic distance between the two laws is ≈ 0.105.
        assert!((statistic - 0.105).abs() < 0.01);
    }

    #[test]
    fn ks_statistic_handles_exact_grid() {
        // Statistic of the CDF's own quantile grid stays near 1/(2n).
        let n = 1000;
        let mut samples: Vec<f64> =
            (0..n).map(|i| inverse_cdf((i as f64 + 0.5) / n as f64)).collect();
        let statistic = ks_statistic(&mut samples, cdf);
        assert!(statistic <= 0.5 / n as f64 + 1e-12, "statistic {statistic}");
    }
}
