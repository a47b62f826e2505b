//! Spin-1/2 projection probabilities and correlations, computed two ways:
//! exactly from the Hilbert-space formalism, and by Monte Carlo over a
//! geometric hidden-angle distribution with density `½ sin φ` on `[0, π]`.
//! A Bell/CHSH harness cross-checks the two engines.
//!
//! Modules:
//! - [`spin`]: single-spin bases, overlaps, conditional-probability matrices,
//!   correlations and orthogonal context transforms.
//! - [`bipartite`]: the two-spin singlet — tensor products, projector
//!   families, spectral weights and the singlet correlation (two routes).
//! - [`sampler`]: the hidden-angle engine — seeded inverse-transform
//!   sampling, geometric outcome classification, Monte Carlo estimates.
//! - [`bell`]: agreement sweeps, CHSH evaluation and a Kolmogorov–Smirnov
//!   check of the sampler against its target law.

pub mod bell;
pub mod bipartite;
pub mod direction;
pub mod sampler;
pub mod spin;

pub use bell::{
    agreement_sweep, chsh, chsh_shared_phi, ks_statistic, ks_test, ChshAngles, ChshResult,
    Engine, KsResult, SweepReport, SweepRow,
};
pub use bipartite::{
    cond_prob_matrix_singlet, correlation_singlet, correlation_singlet_direct, kron,
    partition_distinctness, product_basis, singlet, spectral_weights, PartitionReport,
    ProductBasis, ProjectorFamilyCheck, SpectralWeights, SpinState4,
};
pub use direction::{half_angle_between, reduce_separation, Direction};
pub use sampler::{
    cdf, classify, context_rng, estimate_correlation, estimate_correlation_stream,
    fresh_context_estimates, inverse_cdf, numeric_partition_integrals,
    partition_probabilities, pdf, sample_phi, CorrelationEstimate, Mode, PartitionSpec,
    PhiSample,
};
pub use spin::{
    amplitude_matrix, basis_states, cond_prob_matrix, context_rotation, correlation_exact,
    joint_and_total, overlap, CondProbMatrix, ContextTransform, JointProbs, Sign, SpinState2,
};

/// Absolute tolerance for identities that hold exactly in real arithmetic.
/// Double precision on 2×2 and 4×4 matrices stays orders of magnitude below it.
pub const ALGEBRA_TOL: f64 = 1e-12;

/// Errors surfaced by operations with checked preconditions.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error(
        "directions {theta_b} rad and {theta_b_alt} rad coincide modulo a half turn; \
         they generate the same product basis"
    )]
    DegenerateContexts { theta_b: f64, theta_b_alt: f64 },
    #[error("invalid matrix: {0}")]
    InvalidMatrix(&'static str),
    #[error("state vector is not normalized: squared norm {0}")]
    NotNormalized(f64),
}
