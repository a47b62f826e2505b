//! Measurement directions in the xz-plane.

use std::f64::consts::{PI, TAU};

/// A measurement axis in the xz-plane, identified by its polar angle from +z.
///
/// The angle is stored reduced to `[0, 2π)`. Half-angle differences between
/// two directions are taken without further reduction: every observable
/// quantity built from them is π-periodic in the half angle, so the choice
/// of representative cannot be detected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    theta: f64,
}

impl Direction {
    /// Direction at polar angle `theta` (radians). Panics on a non-finite angle.
    pub fn new(theta: f64) -> Self {
        assert!(theta.is_finite(), "direction angle must be finite");
        let mut reduced = theta.rem_euclid(TAU);
        // rem_euclid can round up to the modulus for tiny negative inputs.
        if reduced >= TAU {
            reduced = 0.0;
        }
        Self { theta: reduced }
    }

    pub fn from_degrees(degrees: f64) -> Self {
        Self::new(degrees.to_radians())
    }

    /// Polar angle in `[0, 2π)`.
    pub fn theta(self) -> f64 {
        self.theta
    }

    /// Half the polar angle, ϑ = θ/2 — the angle spinor components live at.
    pub fn half_angle(self) -> f64 {
        self.theta / 2.0
    }

    /// In-plane separation between the two axes, reduced to `[0, π]`.
    pub fn separation(self, other: Direction) -> f64 {
        reduce_separation(other.theta - self.theta)
    }
}

/// Signed half-angle `(θ_to − θ_from)/2` between two directions.
pub fn half_angle_between(from: Direction, to: Direction) -> f64 {
    (to.theta - from.theta) / 2.0
}

/// Reduce an arbitrary finite angle to the separation range `[0, π]`.
pub fn reduce_separation(theta: f64) -> f64 {
    assert!(theta.is_finite(), "separation angle must be finite");
    let t = theta.rem_euclid(TAU);
    if t > PI {
        TAU - t
    } else {
        t
    }
}
