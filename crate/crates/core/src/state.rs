//! State vectors and viscosity parameters.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// A point `u = (u1, u2)` in the plane of unknowns.
///
/// Also serves as left/right Riemann data and as an equilibrium location of
/// the profile ODE. Both components are plain dimensionless reals.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct State {
    pub u1: f64,
    pub u2: f64,
}

impl State {
    pub const fn new(u1: f64, u2: f64) -> Self {
        State { u1, u2 }
    }

    /// Reflection across the axis `u2 = 0`.
    ///
    /// The system is invariant under `u2 -> -u2`; every operation on data in
    /// the lower half-plane is computed by reflecting, solving in the upper
    /// half-plane and reflecting back.
    pub fn mirror(self) -> Self {
        State::new(self.u1, -self.u2)
    }

    pub fn dot(self, other: State) -> f64 {
        self.u1 * other.u1 + self.u2 * other.u2
    }

    /// Scalar cross product `self.u1 * other.u2 - self.u2 * other.u1`.
    pub fn cross(self, other: State) -> f64 {
        self.u1 * other.u2 - self.u2 * other.u1
    }

    pub fn norm(self) -> f64 {
        self.u1.hypot(self.u2)
    }

    pub fn dist(self, other: State) -> f64 {
        (self - other).norm()
    }

    pub fn normalized(self) -> State {
        let n = self.norm();
        State::new(self.u1 / n, self.u2 / n)
    }

    pub fn is_finite(self) -> bool {
        self.u1.is_finite() && self.u2.is_finite()
    }
}

impl Add for State {
    type Output = State;
    fn add(self, rhs: State) -> State {
        State::new(self.u1 + rhs.u1, self.u2 + rhs.u2)
    }
}

impl Sub for State {
    type Output = State;
    fn sub(self, rhs: State) -> State {
        State::new(self.u1 - rhs.u1, self.u2 - rhs.u2)
    }
}

impl Mul<f64> for State {
    type Output = State;
    fn mul(self, s: f64) -> State {
        State::new(self.u1 * s, self.u2 * s)
    }
}

impl Neg for State {
    type Output = State;
    fn neg(self) -> State {
        State::new(-self.u1, -self.u2)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u1, self.u2)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ViscosityError {
    #[error("viscosity components must be positive and finite, got ({0}, {1})")]
    NotPositive(f64, f64),
}

/// The diagonal viscosity pair `M = diag(mu1, mu2)`.
///
/// Only the ratio `mu1/mu2` matters for wave admissibility: the regularized
/// system is invariant under `(t, x, mu) -> (s t, s x, s mu)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viscosity {
    mu1: f64,
    mu2: f64,
}

impl Viscosity {
    pub fn new(mu1: f64, mu2: f64) -> Result<Self, ViscosityError> {
        if !(mu1 > 0.0 && mu2 > 0.0 && mu1.is_finite() && mu2.is_finite()) {
            return Err(ViscosityError::NotPositive(mu1, mu2));
        }
        Ok(Viscosity { mu1, mu2 })
    }

    pub fn mu1(self) -> f64 {
        self.mu1
    }

    pub fn mu2(self) -> f64 {
        self.mu2
    }

    /// The anisotropy parameter `m = sqrt(mu2 / (2 mu1 - mu2))`.
    ///
    /// It is the single viscosity-ratio quantity that controls the
    /// saddle-connection speeds and the structure thresholds, and satisfies
    /// `0 < m < 1` exactly when `mu2 < mu1`. Returns `None` otherwise —
    /// saddle connections (and undercompressive shocks) then do not exist.
    pub fn anisotropy(self) -> Option<f64> {
        if self.mu2 < self.mu1 {
            Some((self.mu2 / (2.0 * self.mu1 - self.mu2)).sqrt())
        } else {
            None
        }
    }

    /// True in the regime `mu1 <= mu2`, where every compressive shock has a
    /// viscous profile.
    pub fn all_shocks_structured(self) -> bool {
        self.mu1 <= self.mu2
    }

    pub fn scaled(self, s: f64) -> Self {
        Viscosity {
            mu1: self.mu1 * s,
            mu2: self.mu2 * s,
        }
    }
}

impl fmt::Display for Viscosity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.mu1, self.mu2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anisotropy_defined_only_below_ratio_one() {
        let v = Viscosity::new(1.0, 0.5).unwrap();
        let m = v.anisotropy().unwrap();
        assert!((m - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);

        assert!(Viscosity::new(1.0, 1.0).unwrap().anisotropy().is_none());
        assert!(Viscosity::new(1.0, 2.0).unwrap().anisotropy().is_none());
    }

    #[test]
    fn anisotropy_depends_only_on_ratio() {
        let v = Viscosity::new(1.3, 0.7).unwrap();
        let m0 = v.anisotropy().unwrap();
        for s in [1e-3, 0.1, 7.0, 1e4] {
            let m = v.scaled(s).anisotropy().unwrap();
            assert!((m - m0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_nonpositive_viscosity() {
        assert!(Viscosity::new(0.0, 1.0).is_err());
        assert!(Viscosity::new(1.0, -2.0).is_err());
        assert!(Viscosity::new(f64::NAN, 1.0).is_err());
    }
}
