//! The hidden-variable engine. A random inclination angle φ is drawn from
//! the density ½·sin φ on [0, π]; a measurement context splits that interval
//! at the separation angle θ_ab and the outcome is the side φ falls on.
//! Repeating over seeded streams and averaging the ±1 outcomes reproduces
//! the exact correlations, provided every context draws its own fresh
//! realizations — outcomes are never transferred between contexts.
//!
//! Randomness contract: all sampling uses ChaCha8 keyed by a 64-bit seed,
//! with one ChaCha stream per context (`set_stream(index)`), so runs are
//! bit-reproducible given (seed, n) and contexts are independent by
//! construction. Outcome sums are accumulated in integers, so estimates are
//! exact deterministic functions of the drawn bits, independent of any
//! summation order.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::direction::{reduce_separation, Direction};
use crate::spin::Sign;

/// Density of the hidden inclination angle: ½·sin φ on [0, π], zero outside.
pub fn pdf(phi: f64) -> f64 {
    if (0.0..=PI).contains(&phi) {
        0.5 * phi.sin()
    } else {
        0.0
    }
}

/// Cumulative distribution of the hidden angle: (1 − cos φ)/2 on [0, π].
pub fn cdf(phi: f64) -> f64 {
    if phi <= 0.0 {
        0.0
    } else if phi >= PI {
        1.0
    } else {
        0.5 * (1.0 - phi.cos())
    }
}

/// Exact inverse of the CDF: maps u ∈ [0, 1) to φ = arccos(1 − 2u).
pub fn inverse_cdf(u: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&u));
    (1.0 - 2.0 * u).acos()
}

/// Seeded generator for one measurement context. Stream 0 is the default
/// context; independent contexts take consecutive stream indices.
pub fn context_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draw `n` independent hidden angles by inverse-transform sampling.
pub fn sample_phi<R: Rng + ?Sized>(rng: &mut R, n: u64) -> Vec<f64> {
    assert!(n >= 1, "sample count must be at least 1");
    (0..n).map(|_| inverse_cdf(rng.gen::<f64>())).collect()
}

/// Which correlation experiment the partition encodes: a single spin
/// measured along two axes, or the two halves of a singlet pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Single,
    Bipartite,
}

/// A measurement context for the sampler: the mode plus the separation
/// angle θ_ab, reduced to [0, π] where the partition boundaries live.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionSpec {
    mode: Mode,
    theta_ab: f64,
}

impl PartitionSpec {
    /// Build a context from a raw separation angle (any finite radians).
    pub fn new(mode: Mode, theta_ab: f64) -> Self {
        Self {
            mode,
            theta_ab: reduce_separation(theta_ab),
        }
    }

    pub fn from_directions(mode: Mode, a: Direction, b: Direction) -> Self {
        Self {
            mode,
            theta_ab: a.separation(b),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn theta_ab(&self) -> f64 {
        self.theta_ab
    }
}

/// Geometric classification rule. In single mode the outcome is +1 when the
/// hidden angle clears the separation angle (φ ≥ θ_ab) and −1 below it; in
/// bipartite mode the second spin is anti-aligned, so the sign is inverted.
/// The boundary φ = θ_ab carries no probability mass; it is assigned to the
/// upper set to keep the rule deterministic.
pub fn classify(phi: f64, spec: &PartitionSpec) -> Sign {
    let upper = if phi >= spec.theta_ab {
        Sign::Plus
    } else {
        Sign::Minus
    };
    match spec.mode {
        Mode::Single => upper,
        Mode::Bipartite => upper.flipped(),
    }
}

/// One classified realization of the hidden angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiSample {
    pub phi: f64,
    pub context_angle: f64,
    pub outcome: Sign,
}

impl PhiSample {
    pub fn classify(phi: f64, spec: &PartitionSpec) -> Self {
        Self {
            phi,
            context_angle: spec.theta_ab(),
            outcome: classify(phi, spec),
        }
    }
}

/// Monte Carlo correlation estimate with its seed provenance: the estimate
/// was produced by ChaCha stream `stream` of `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelationEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n: u64,
    pub seed: u64,
    pub stream: u64,
}

/// Empirical (+, −) outcome frequencies over `n` fresh draws.
///
/// The pair always sums to exactly 1, and the bipartite pair is exactly the
/// single-mode pair swapped: inverting every outcome exchanges the counts.
pub fn partition_probabilities(spec: &PartitionSpec, n: u64, seed: u64) -> (f64, f64) {
    assert!(n >= 1, "sample count must be at least 1");
    let mut rng = context_rng(seed, 0);
    let mut upper = 0u64;
    for _ in 0..n {
        if inverse_cdf(rng.gen::<f64>()) >= spec.theta_ab {
            upper += 1;
        }
    }
    let p_upper = upper as f64 / n as f64;
    match spec.mode {
        Mode::Single => (p_upper, 1.0 - p_upper),
        Mode::Bipartite => (1.0 - p_upper, p_upper),
    }
}

/// Monte Carlo estimate of the correlation for one context, using the
/// default stream 0.
pub fn estimate_correlation(spec: &PartitionSpec, n: u64, seed: u64) -> CorrelationEstimate {
    estimate_correlation_stream(spec, n, seed, 0)
}

/// Monte Carlo estimate on an explicit ChaCha stream. The ±1 outcomes are
/// summed as integers, so the mean is exact given the drawn bits; the
/// standard error is the Bessel-corrected sample deviation over √n
/// (√((1 − mean²)/(n − 1)) for ±1 outcomes), zero when n = 1.
pub fn estimate_correlation_stream(
    spec: &PartitionSpec,
    n: u64,
    seed: u64,
    stream: u64,
) -> CorrelationEstimate {
    assert!(n >= 1, "sample count must be at least 1");
    let mut rng = context_rng(seed, stream);
    let mut sum: i64 = 0;
    for _ in 0..n {
        sum += classify(inverse_cdf(rng.gen::<f64>()), spec).signum();
    }
    let mean = sum as f64 / n as f64;
    let std_error = if n > 1 {
        ((1.0 - mean * mean).max(0.0) / (n as f64 - 1.0)).sqrt()
    } else {
        0.0
    };
    CorrelationEstimate {
        mean,
        std_error,
        n,
        seed,
        stream,
    }
}

/// Estimates for a list of contexts, each on its own ChaCha stream
/// (stream = position in the list). No φ realization is shared between
/// contexts — re-running the same angle at a different position yields a
/// statistically independent estimate, not a copy.
pub fn fresh_context_estimates(
    thetas: &[f64],
    mode: Mode,
    n: u64,
    seed: u64,
) -> Vec<CorrelationEstimate> {
    thetas
        .iter()
        .enumerate()
        .map(|(index, &theta)| {
            let spec = PartitionSpec::new(mode, theta);
            estimate_correlation_stream(&spec, n, seed, index as u64)
        })
        .collect()
}

/// Masses of the two partition cells by deterministic quadrature of the
/// density over [θ, π] and [0, θ] — a sampling-free cross-check of the
/// closed forms cos²(θ/2) and sin²(θ/2).
pub fn numeric_partition_integrals(theta: f64) -> (f64, f64) {
    assert!(
        (0.0..=PI).contains(&theta),
        "partition angle must lie in [0, π]"
    );
    (simpson(pdf, theta, PI), simpson(pdf, 0.0, theta))
}

/// Composite Simpson rule. 2000 panels hold the error near 1e-13 for the
/// smooth integrands used here, comfortably under the 1e-10 budget.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const PANELS: usize = 2000;
    if a == b {
        return 0.0;
    }
    let h = (b - a) / PANELS as f64;
    let mut acc = f(a) + f(b);
    for i in 1..PANELS {
        let weight = if i % 2 == 0 { 2.0 } else { 4.0 };
        acc += weight * f(a + i as f64 * h);
    }
    acc * h / 3.0
}
