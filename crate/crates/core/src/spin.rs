//! Exact single-spin formalism: bases along in-plane directions, overlaps,
//! conditional-probability matrices, correlations, and the orthogonal
//! transforms that move between measurement contexts.
//!
//! Sign conventions, fixed once for the whole crate: with ϑ = θ/2,
//! the basis along a direction at polar angle θ is
//! `|+⟩ = (cos ϑ, −sin ϑ)` and `|−⟩ = (sin ϑ, cos ϑ)`, and every relative
//! quantity uses the signed half-angle ϑ_ba = (θ_b − θ_a)/2.

use num_complex::Complex64;

use crate::direction::{half_angle_between, Direction};
use crate::{Error, ALGEBRA_TOL};

/// Outcome of a spin projection: +1 or −1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn signum(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Row/column index in probability matrices: + ↦ 0, − ↦ 1.
    pub fn index(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

/// Normalized two-component spin state.
///
/// Components are carried as complex numbers even though the in-plane bases
/// are real, so unitary context transforms and phased states fit unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState2 {
    pub amp_plus: Complex64,
    pub amp_minus: Complex64,
}

impl SpinState2 {
    /// Build a state, rejecting amplitudes whose squared norm strays from 1.
    pub fn new(amp_plus: Complex64, amp_minus: Complex64) -> Result<Self, Error> {
        let state = Self { amp_plus, amp_minus };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > ALGEBRA_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    fn from_reals(amp_plus: f64, amp_minus: f64) -> Self {
        Self {
            amp_plus: Complex64::new(amp_plus, 0.0),
            amp_minus: Complex64::new(amp_minus, 0.0),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp_plus.norm_sqr() + self.amp_minus.norm_sqr()
    }

    /// Inner product ⟨self|ket⟩.
    pub fn inner(&self, ket: &SpinState2) -> Complex64 {
        self.amp_plus.conj() * ket.amp_plus + self.amp_minus.conj() * ket.amp_minus
    }

    pub fn amp(&self, outcome: Sign) -> Complex64 {
        match outcome {
            Sign::Plus => self.amp_plus,
            Sign::Minus => self.amp_minus,
        }
    }
}

/// The orthonormal pair (|+⟩, |−⟩) along `dir`.
pub fn basis_states(dir: Direction) -> (SpinState2, SpinState2) {
    let (sin, cos) = dir.half_angle().sin_cos();
    (
        SpinState2::from_reals(cos, -sin),
        SpinState2::from_reals(sin, cos),
    )
}

/// Overlap ⟨bra_sign|ket_sign⟩ between basis states of two directions.
///
/// Equal signs give cos ϑ_ba; the mixed overlaps are ∓sin ϑ_ba with the
/// minus sign on (bra +, ket −), where ϑ_ba = (θ_bra − θ_ket)/2.
pub fn overlap(bra_dir: Direction, bra_sign: Sign, ket_dir: Direction, ket_sign: Sign) -> f64 {
    let half = half_angle_between(ket_dir, bra_dir);
    match (bra_sign, ket_sign) {
        (Sign::Plus, Sign::Plus) | (Sign::Minus, Sign::Minus) => half.cos(),
        (Sign::Plus, Sign::Minus) => -half.sin(),
        (Sign::Minus, Sign::Plus) => half.sin(),
    }
}

/// 2×2 doubly stochastic matrix of conditional outcome probabilities.
///
/// Rows are indexed by the conditioning outcome along the first direction
/// (+, −), columns by the outcome along the second (+, −).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CondProbMatrix {
    p: [[f64; 2]; 2],
}

impl CondProbMatrix {
    /// Validate an externally supplied matrix against the full contract:
    /// entries in [0, 1], rows and columns summing to 1, and symmetry under
    /// a simultaneous interchange of all plus and minus signs.
    pub fn new(p: [[f64; 2]; 2]) -> Result<Self, Error> {
        for row in &p {
            for &entry in row {
                if !(0.0..=1.0).contains(&entry) {
                    return Err(Error::InvalidMatrix("entry outside [0, 1]"));
                }
            }
            if (row[0] + row[1] - 1.0).abs() > ALGEBRA_TOL {
                return Err(Error::InvalidMatrix("row does not sum to 1"));
            }
        }
        if (p[0][0] + p[1][0] - 1.0).abs() > ALGEBRA_TOL
            || (p[0][1] + p[1][1] - 1.0).abs() > ALGEBRA_TOL
        {
            return Err(Error::InvalidMatrix("column does not sum to 1"));
        }
        if (p[0][0] - p[1][1]).abs() > ALGEBRA_TOL || (p[0][1] - p[1][0]).abs() > ALGEBRA_TOL {
            return Err(Error::InvalidMatrix("not symmetric under sign interchange"));
        }
        Ok(Self { p })
    }

    pub(crate) fn from_half_angle(half: f64) -> Self {
        let c2 = half.cos().powi(2);
        let s2 = half.sin().powi(2);
        Self {
            p: [[c2, s2], [s2, c2]],
        }
    }

    /// P(outcome along second direction | given along first).
    pub fn prob(&self, outcome: Sign, given: Sign) -> f64 {
        self.p[given.index()][outcome.index()]
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        self.p
    }

    /// Correlation carried by the matrix alone: P(+|+) − P(−|+).
    pub fn correlation(&self) -> f64 {
        self.p[0][0] - self.p[0][1]
    }

    /// The same context with the outcome along the second direction
    /// inverted, i.e. columns interchanged.
    pub fn outcome_inverted(&self) -> Self {
        Self {
            p: [
                [self.p[0][1], self.p[0][0]],
                [self.p[1][1], self.p[1][0]],
            ],
        }
    }
}

/// Conditional probabilities for projections along `a` then `b`.
pub fn cond_prob_matrix(a: Direction, b: Direction) -> CondProbMatrix {
    CondProbMatrix::from_half_angle(half_angle_between(a, b))
}

/// Joint outcome probabilities, indexed `[a_sign][b_sign]`.
pub type JointProbs = [[f64; 2]; 2];

/// Joint probabilities from a marginal P_a(+) and a conditional matrix,
/// together with the total probability P_b(+).
///
/// The marginal enters only here: the conditional matrix itself is a
/// property of the measurement context, not of the prepared state.
pub fn joint_and_total(p_a_plus: f64, m: &CondProbMatrix) -> Result<(JointProbs, f64), Error> {
    if !p_a_plus.is_finite() || !(0.0..=1.0).contains(&p_a_plus) {
        return Err(Error::ProbabilityOutOfRange(p_a_plus));
    }
    let marginal = [p_a_plus, 1.0 - p_a_plus];
    let conditional = m.entries();
    let mut joint = [[0.0; 2]; 2];
    for ((joint_row, cond_row), &weight) in
        joint.iter_mut().zip(conditional.iter()).zip(marginal.iter())
    {
        for (entry, &cond) in joint_row.iter_mut().zip(cond_row.iter()) {
            *entry = weight * cond;
        }
    }
    let p_b_plus = joint[0][0] + joint[1][0];
    Ok((joint, p_b_plus))
}

/// Exact quantum correlation of the two projections: cos(θ_b − θ_a),
/// obtained from the conditional matrix and independent of any marginal.
pub fn correlation_exact(a: Direction, b: Direction) -> f64 {
    cond_prob_matrix(a, b).correlation()
}

/// Real orthogonal 2×2 context transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContextTransform {
    m: [[f64; 2]; 2],
}

impl ContextTransform {
    /// Validate orthogonality (M·Mᵀ = 1) of an externally supplied matrix.
    pub fn new(m: [[f64; 2]; 2]) -> Result<Self, Error> {
        let t = Self { m };
        if t.orthogonality_defect() > ALGEBRA_TOL {
            return Err(Error::InvalidMatrix("matrix is not orthogonal"));
        }
        Ok(t)
    }

    fn from_rows(r0: [f64; 2], r1: [f64; 2]) -> Self {
        Self { m: [r0, r1] }
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.m[row][col]
    }

    /// Largest deviation of M·Mᵀ from the identity.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let dot = self.m[i][0] * self.m[j][0] + self.m[i][1] * self.m[j][1];
                let target = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((dot - target).abs());
            }
        }
        defect
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &ContextTransform) -> ContextTransform {
        let mut out = [[0.0; 2]; 2];
        for (out_row, row) in out.iter_mut().zip(self.m.iter()) {
            for (j, entry) in out_row.iter_mut().enumerate() {
                *entry = row[0] * rhs.m[0][j] + row[1] * rhs.m[1][j];
            }
        }
        ContextTransform { m: out }
    }

    /// Apply the transform to a state vector.
    pub fn apply(&self, s: &SpinState2) -> SpinState2 {
        SpinState2 {
            amp_plus: s.amp_plus * self.m[0][0] + s.amp_minus * self.m[0][1],
            amp_minus: s.amp_plus * self.m[1][0] + s.amp_minus * self.m[1][1],
        }
    }

    pub fn max_abs_diff(&self, other: &ContextTransform) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        d
    }
}

/// Orthogonal matrix of transition amplitudes between the bases of `a` and
/// `b`: its element-wise squares reproduce `cond_prob_matrix(a, b)`.
pub fn amplitude_matrix(a: Direction, b: Direction) -> ContextTransform {
    let (sin, cos) = half_angle_between(a, b).sin_cos();
    ContextTransform::from_rows([cos, -sin], [-sin, -cos])
}

/// Rotation taking the measurement context from `b` to `c`: unitary, and
/// composing with `amplitude_matrix(a, b)` on the left yields
/// `amplitude_matrix(a, c)` while leaving the conditioning direction alone.
pub fn context_rotation(b: Direction, c: Direction) -> ContextTransform {
    let (sin, cos) = half_angle_between(b, c).sin_cos();
    ContextTransform::from_rows([cos, sin], [-sin, cos])
}
