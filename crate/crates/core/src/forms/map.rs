use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// A real linear map of `C = R²`, stored as its matrix in the basis `(1, i)`.
///
/// The image of `x + iy` is `(m11 x + m12 y) + i (m21 x + m22 y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "MatrixJson", into = "MatrixJson")]
pub struct RealLinearMap {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    m: [f64; 4],
}

impl From<MatrixJson> for RealLinearMap {
    fn from(j: MatrixJson) -> Self {
        Self::from_row_major(j.m)
    }
}

impl From<RealLinearMap> for MatrixJson {
    fn from(l: RealLinearMap) -> Self {
        MatrixJson {
            m: l.to_row_major(),
        }
    }
}

impl RealLinearMap {
    pub const IDENTITY: Self = Self::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub const fn from_row_major(m: [f64; 4]) -> Self {
        Self::new(m[0], m[1], m[2], m[3])
    }

    pub const fn to_row_major(&self) -> [f64; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    pub const fn diag(x: f64, y: f64) -> Self {
        Self::new(x, 0.0, 0.0, y)
    }

    /// The complex-linear map `z ↦ τz`.
    pub fn multiplication(tau: Complex64) -> Self {
        Self::new(tau.re, -tau.im, tau.im, tau.re)
    }

    /// Multiplication by `e^{iθ}`.
    pub fn rotation(theta: f64) -> Self {
        Self::multiplication(Complex64::from_polar(1.0, theta))
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        Complex64::new(
            self.m11 * z.re + self.m12 * z.im,
            self.m21 * z.re + self.m22 * z.im,
        )
    }

    pub fn det(&self) -> f64 {
        // fma keeps the cancellation in m11 m22 - m12 m21 to one rounding
        let p = self.m12 * self.m21;
        let e = self.m12.mul_add(self.m21, -p);
        self.m11.mul_add(self.m22, -p) - e
    }

    /// Induced ∞-norm (largest absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (self.m11.abs() + self.m12.abs()).max(self.m21.abs() + self.m22.abs())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )
    }

    pub fn is_invertible(&self, tol: &Tolerances) -> bool {
        self.det().abs() > self.singular_threshold(tol)
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.det() > 0.0
    }

    fn singular_threshold(&self, tol: &Tolerances) -> f64 {
        let n = self.norm_inf();
        tol.singular * (1.0 + n * n)
    }

    /// Accepts invertible orientation-preserving maps and returns their determinant.
    pub fn check_orientation_preserving(&self, tol: &Tolerances) -> Result<f64> {
        let det = self.det();
        if !det.is_finite() || det.abs() <= self.singular_threshold(tol) {
            return Err(Error::Singular { det });
        }
        if det < 0.0 {
            return Err(Error::OrientationReversing { det });
        }
        Ok(det)
    }
}

impl Mul for RealLinearMap {
    type Output = RealLinearMap;

    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}
