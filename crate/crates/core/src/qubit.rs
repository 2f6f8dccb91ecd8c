//! Spin-½ representation of a rotation about the local 2-axis and the
//! observables built on it.

use std::f64::consts::SQRT_2;

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Allowed deviation of `|α|² + |β|²` from 1.
pub const NORM_TOL: f64 = 1e-12;

/// `α|0⟩ + β|1⟩` in the `σ_z` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    alpha: Complex64,
    beta: Complex64,
}

impl QubitState {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if !((norm - 1.0).abs() <= NORM_TOL) {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { alpha, beta })
    }

    pub fn real(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0))
    }

    /// Normalizes any nonzero pair of amplitudes.
    pub fn normalized(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::NotNormalized(n * n));
        }
        Self::new(alpha / n, beta / n)
    }

    pub fn zero() -> Self {
        Self {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    pub fn one() -> Self {
        Self {
            alpha: Complex64::new(0.0, 0.0),
            beta: Complex64::new(1.0, 0.0),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn norm_sqr(&self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }

    pub fn as_vector(&self) -> Vector2<Complex64> {
        Vector2::new(self.alpha, self.beta)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QubitState) -> Complex64 {
        self.alpha.conj() * other.alpha + self.beta.conj() * other.beta
    }
}

/// The 2×2 operator `D` acting on qubit amplitudes. The global phase is kept,
/// so a `2π` rotation is `−1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinHalfRotation {
    pub matrix: Matrix2<Complex64>,
}

impl SpinHalfRotation {
    /// `max |D†D − 1|` over entries.
    pub fn unitarity_residual(&self) -> f64 {
        let product = self.matrix.adjoint() * self.matrix;
        (product - Matrix2::identity()).iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn determinant(&self) -> Complex64 {
        self.matrix.determinant()
    }

    /// Applies `D` without re-checking normalization.
    pub fn apply(&self, state: &QubitState) -> QubitState {
        let v = self.matrix * state.as_vector();
        QubitState { alpha: v[0], beta: v[1] }
    }

    pub fn compose(&self, other: &SpinHalfRotation) -> SpinHalfRotation {
        SpinHalfRotation {
            matrix: self.matrix * other.matrix,
        }
    }
}

/// `D(Ω)` with `D|0⟩ = cos(Ω/2)|0⟩ + sin(Ω/2)|1⟩` and
/// `D|1⟩ = cos(Ω/2)|1⟩ − sin(Ω/2)|0⟩`.
pub fn rotation_operator(omega: f64) -> SpinHalfRotation {
    let (s, c) = (0.5 * omega).sin_cos();
    let re = |v: f64| Complex64::new(v, 0.0);
    SpinHalfRotation {
        matrix: Matrix2::new(re(c), re(-s), re(s), re(c)),
    }
}

pub fn apply_rotation(state: &QubitState, omega: f64) -> Result<QubitState> {
    let state = QubitState::new(state.alpha, state.beta)?;
    Ok(rotation_operator(omega).apply(&state))
}

/// Probability of finding the orthogonal state after rotating `state` by `omega`,
/// `1 − |⟨Ψ|D|Ψ⟩|²`.
pub fn orthogonal_error(state: &QubitState, omega: f64) -> f64 {
    let rotated = rotation_operator(omega).apply(state);
    (1.0 - state.inner(&rotated).norm_sqr()).clamp(0.0, 1.0)
}

/// CHSH combination for the unadjusted measurement directions, `2√2 cos²Ω`.
pub fn bell_chsh(omega: f64) -> f64 {
    let c = omega.cos();
    2.0 * SQRT_2 * c * c
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn normalization_is_checked() {
        assert!(matches!(QubitState::real(1.0, 1.0), Err(Error::NotNormalized(_))));
        assert!(QubitState::real(0.6, 0.8).is_ok());
        let s = QubitState::normalized(Complex64::new(1.0, 1.0), Complex64::new(0.0, 1.0)).unwrap();
        assert_relative_eq!(s.norm_sqr(), 1.0, epsilon = 1e-15);
        assert!(QubitState::normalized(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn operator_examples() {
        assert_eq!(rotation_operator(0.0).matrix, Matrix2::identity());
        let half = rotation_operator(PI).apply(&QubitState::zero());
        assert!(half.alpha().norm() < 1e-15);
        assert_relative_eq!(half.beta().re, 1.0, epsilon = 1e-15);
        let flipped = rotation_operator(PI).apply(&QubitState::one());
        assert_relative_eq!(flipped.alpha().re, -1.0, epsilon = 1e-15);
        let full = rotation_operator(2.0 * PI).matrix;
        assert!((full + Matrix2::identity()).iter().all(|v| v.norm() < 1e-15));
        assert_relative_eq!(rotation_operator(1.234).determinant().re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn apply_examples() {
        let out = apply_rotation(&QubitState::zero(), FRAC_PI_2).unwrap();
        assert_relative_eq!(out.alpha().re, SQRT_2 / 2.0, epsilon = 1e-15);
        assert_relative_eq!(out.beta().re, SQRT_2 / 2.0, epsilon = 1e-15);
        let bad = QubitState {
            alpha: Complex64::new(2.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        };
        assert!(apply_rotation(&bad, 0.3).is_err());
    }

    #[test]
    fn error_examples() {
        assert_eq!(orthogonal_error(&QubitState::zero(), 0.0), 0.0);
        assert_relative_eq!(orthogonal_error(&QubitState::zero(), PI), 1.0, epsilon = 1e-15);
        // σ_y eigenstate is invariant up to phase
        let y = QubitState::normalized(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)).unwrap();
        assert!(orthogonal_error(&y, 1.0) < 1e-15);
    }

    #[test]
    fn chsh_examples() {
        assert_relative_eq!(bell_chsh(0.0), 2.0 * SQRT_2, epsilon = 1e-15);
        assert!(bell_chsh(FRAC_PI_2).abs() < 1e-15);
        assert_relative_eq!(bell_chsh(FRAC_PI_4), SQRT_2, epsilon = 1e-15);
    }
}
