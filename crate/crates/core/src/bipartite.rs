//! Exact treatment of the entangled two-spin singlet: tensor-product states
//! and bases, projector families, spectral weights, and the singlet
//! correlation computed along two independent routes that must agree —
//! the spectral sum over projector eigenvalues, and the direct expectation
//! of the product of spin-projection operators.

use num_complex::Complex64;

use crate::direction::Direction;
use crate::spin::{basis_states, cond_prob_matrix, CondProbMatrix, SpinState2};
use crate::{Error, ALGEBRA_TOL};

/// Normalized two-spin state; amplitudes indexed by (sign₁, sign₂) in the
/// fixed order (++, +−, −+, −−).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState4 {
    pub amps: [Complex64; 4],
}

impl SpinState4 {
    pub fn new(amps: [Complex64; 4]) -> Result<Self, Error> {
        let state = Self { amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > ALGEBRA_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Inner product ⟨self|ket⟩.
    pub fn inner(&self, ket: &SpinState4) -> Complex64 {
        self.amps
            .iter()
            .zip(ket.amps.iter())
            .map(|(bra, k)| bra.conj() * k)
            .sum()
    }
}

/// The singlet state, written in the z-basis of both spins:
/// amplitudes (0, 1/√2, −1/√2, 0). The reference basis drops out — the
/// state is spherically symmetric, which the tests verify rather than assume.
pub fn singlet() -> SpinState4 {
    let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    SpinState4 {
        amps: [Complex64::ZERO, amp, -amp, Complex64::ZERO],
    }
}

/// Tensor product of two single-spin states in the (++, +−, −+, −−) order.
pub fn kron(first: &SpinState2, second: &SpinState2) -> SpinState4 {
    SpinState4 {
        amps: [
            first.amp_plus * second.amp_plus,
            first.amp_plus * second.amp_minus,
            first.amp_minus * second.amp_plus,
            first.amp_minus * second.amp_minus,
        ],
    }
}

/// Product basis for the context (a, b) with the eigenvalue of the
/// correlation observable attached to each basis vector.
///
/// Order: |+⟩|−⟩, |−⟩|+⟩ (eigenvalue −1), then |+⟩|+⟩, |−⟩|−⟩ (eigenvalue +1).
#[derive(Debug, Clone, Copy)]
pub struct ProductBasis {
    pub states: [SpinState4; 4],
    pub eigenvalues: [f64; 4],
}

/// The four product-basis eigenvalues in order: anti-aligned pairs carry −1,
/// aligned pairs +1.
pub const PRODUCT_EIGENVALUES: [f64; 4] = [-1.0, -1.0, 1.0, 1.0];

pub fn product_basis(a: Direction, b: Direction) -> ProductBasis {
    let (a_plus, a_minus) = basis_states(a);
    let (b_plus, b_minus) = basis_states(b);
    ProductBasis {
        states: [
            kron(&a_plus, &b_minus),
            kron(&a_minus, &b_plus),
            kron(&a_plus, &b_plus),
            kron(&a_minus, &b_minus),
        ],
        eigenvalues: PRODUCT_EIGENVALUES,
    }
}

impl ProductBasis {
    /// Rank-1 projectors onto the four basis vectors.
    pub fn projectors(&self) -> [Mat4c; 4] {
        [
            outer(&self.states[0]),
            outer(&self.states[1]),
            outer(&self.states[2]),
            outer(&self.states[3]),
        ]
    }

    /// Numeric verification that the projectors are idempotent, mutually
    /// orthogonal and complete.
    pub fn projector_check(&self) -> ProjectorFamilyCheck {
        let projectors = self.projectors();
        let mut idem: f64 = 0.0;
        let mut ortho: f64 = 0.0;
        for (j, pj) in projectors.iter().enumerate() {
            idem = idem.max(mat4_max_abs_diff(&mat4_mul(pj, pj), pj));
            for (k, pk) in projectors.iter().enumerate() {
                if j != k {
                    ortho = ortho.max(mat4_max_abs(&mat4_mul(pj, pk)));
                }
            }
        }
        let mut sum = MAT4_ZERO;
        for p in &projectors {
            for i in 0..4 {
                for j in 0..4 {
                    sum[i][j] += p[i][j];
                }
            }
        }
        ProjectorFamilyCheck {
            max_idempotency_dev: idem,
            max_orthogonality_dev: ortho,
            max_completeness_dev: mat4_max_abs_diff(&sum, &mat4_identity()),
        }
    }
}

/// Largest deviations of a projector family from an exact orthogonal
/// decomposition of the whole space.
#[derive(Debug, Clone, Copy)]
pub struct ProjectorFamilyCheck {
    pub max_idempotency_dev: f64,
    pub max_orthogonality_dev: f64,
    pub max_completeness_dev: f64,
}

impl ProjectorFamilyCheck {
    pub fn within(&self, tol: f64) -> bool {
        self.max_idempotency_dev <= tol
            && self.max_orthogonality_dev <= tol
            && self.max_completeness_dev <= tol
    }
}

/// Born weights of the four product-basis outcomes in the singlet state,
/// computed from explicit inner products.
#[derive(Debug, Clone, Copy)]
pub struct SpectralWeights {
    pub c: [f64; 4],
}

pub fn spectral_weights(a: Direction, b: Direction) -> SpectralWeights {
    let psi = singlet();
    let basis = product_basis(a, b);
    let mut c = [0.0; 4];
    for (weight, state) in c.iter_mut().zip(basis.states.iter()) {
        *weight = state.inner(&psi).norm_sqr();
    }
    SpectralWeights { c }
}

/// Singlet correlation via the spectral route: Σₖ Aₖ·Cₖ = −cos(θ_b − θ_a).
pub fn correlation_singlet(a: Direction, b: Direction) -> f64 {
    let weights = spectral_weights(a, b);
    PRODUCT_EIGENVALUES
        .iter()
        .zip(weights.c.iter())
        .map(|(eig, w)| eig * w)
        .sum()
}

/// Singlet correlation via the direct route: the expectation of the product
/// of the two spin-projection operators, built as explicit 4×4 matrices
/// (σ·a)⊗𝕀 and 𝕀⊗(σ·b).
pub fn correlation_singlet_direct(a: Direction, b: Direction) -> f64 {
    let first = kron_mat(&spin_projection_operator(a), &mat2_identity());
    let second = kron_mat(&mat2_identity(), &spin_projection_operator(b));
    let observable = mat4_mul(&first, &second);
    expectation(&singlet(), &observable).re
}

/// Conditional probabilities for singlet projections along `a` then `b`:
/// the single-spin matrix with the outcome along `b` inverted, reflecting
/// the perfect anti-alignment of the pair.
pub fn cond_prob_matrix_singlet(a: Direction, b: Direction) -> CondProbMatrix {
    cond_prob_matrix(a, b).outcome_inverted()
}

/// How the product-basis partitions for contexts (a, b) and (a, b′) relate:
/// each family is checked as a complete orthogonal decomposition, and the
/// cross-overlap matrix |⟨φʲ_{ab}|φᵏ_{ab′}⟩|² records how the two partitions
/// mix. Off-unit entries mean the partitions cannot be diagonalized together.
#[derive(Debug, Clone)]
pub struct PartitionReport {
    pub base: ProjectorFamilyCheck,
    pub alternative: ProjectorFamilyCheck,
    /// overlap[j][k] = |⟨φʲ_{ab}|φᵏ_{ab′}⟩|²; rows and columns each sum to 1.
    pub overlap: [[f64; 4]; 4],
    /// True when some overlap entry lies strictly between 0 and 1, i.e. the
    /// two contexts partition the space differently.
    pub distinct: bool,
}

/// Compare the probability-space partitions induced by contexts (a, b) and
/// (a, b_alt). Directions `b` and `b_alt` that coincide modulo a half turn
/// generate the same ray pair and are rejected as degenerate.
pub fn partition_distinctness(
    a: Direction,
    b: Direction,
    b_alt: Direction,
) -> Result<PartitionReport, Error> {
    const DEGENERACY_TOL: f64 = 1e-9;
    let gap = (b_alt.theta() - b.theta()).rem_euclid(std::f64::consts::PI);
    if !(DEGENERACY_TOL..=std::f64::consts::PI - DEGENERACY_TOL).contains(&gap) {
        return Err(Error::DegenerateContexts {
            theta_b: b.theta(),
            theta_b_alt: b_alt.theta(),
        });
    }

    let base = product_basis(a, b);
    let alternative = product_basis(a, b_alt);
    let mut overlap = [[0.0; 4]; 4];
    let mut distinct = false;
    for (j, row) in overlap.iter_mut().enumerate() {
        for (k, entry) in row.iter_mut().enumerate() {
            *entry = base.states[j].inner(&alternative.states[k]).norm_sqr();
            if *entry > ALGEBRA_TOL && *entry < 1.0 - ALGEBRA_TOL {
                distinct = true;
            }
        }
    }
    Ok(PartitionReport {
        base: base.projector_check(),
        alternative: alternative.projector_check(),
        overlap,
        distinct,
    })
}

// ---------------------------------------------------------------------------
// Small fixed-size complex matrix helpers. Everything here is 2×2 or 4×4;
// explicit loops beat a linear-algebra dependency at this scale.

pub type Mat2c = [[Complex64; 2]; 2];
pub type Mat4c = [[Complex64; 4]; 4];

const MAT4_ZERO: Mat4c = [[Complex64::ZERO; 4]; 4];

/// Spin-projection operator along an in-plane axis; the basis states of the
/// same direction are its eigenvectors with eigenvalues ±1.
pub fn spin_projection_operator(dir: Direction) -> Mat2c {
    let (sin, cos) = dir.theta().sin_cos();
    [
        [Complex64::new(cos, 0.0), Complex64::new(-sin, 0.0)],
        [Complex64::new(-sin, 0.0), Complex64::new(-cos, 0.0)],
    ]
}

fn mat2_identity() -> Mat2c {
    [
        [Complex64::ONE, Complex64::ZERO],
        [Complex64::ZERO, Complex64::ONE],
    ]
}

fn kron_mat(a: &Mat2c, b: &Mat2c) -> Mat4c {
    let mut out = MAT4_ZERO;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn mat4_identity() -> Mat4c {
    let mut out = MAT4_ZERO;
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = Complex64::ONE;
    }
    out
}

fn mat4_mul(a: &Mat4c, b: &Mat4c) -> Mat4c {
    let mut out = MAT4_ZERO;
    for (out_row, a_row) in out.iter_mut().zip(a.iter()) {
        for (j, entry) in out_row.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for (a_ik, b_row) in a_row.iter().zip(b.iter()) {
                acc += a_ik * b_row[j];
            }
            *entry = acc;
        }
    }
    out
}

/// |s⟩⟨s|
fn outer(s: &SpinState4) -> Mat4c {
    let mut out = MAT4_ZERO;
    for (row, amp_i) in out.iter_mut().zip(s.amps.iter()) {
        for (entry, amp_j) in row.iter_mut().zip(s.amps.iter()) {
            *entry = amp_i * amp_j.conj();
        }
    }
    out
}

/// ⟨ψ|M|ψ⟩
fn expectation(state: &SpinState4, m: &Mat4c) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for (row, amp_i) in m.iter().zip(state.amps.iter()) {
        for (entry, amp_j) in row.iter().zip(state.amps.iter()) {
            acc += amp_i.conj() * entry * amp_j;
        }
    }
    acc
}

fn mat4_max_abs(m: &Mat4c) -> f64 {
    m.iter()
        .flatten()
        .map(|entry| entry.norm())
        .fold(0.0, f64::max)
}

fn mat4_max_abs_diff(a: &Mat4c, b: &Mat4c) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            d = d.max((a[i][j] - b[i][j]).norm());
        }
    }
    d
}
