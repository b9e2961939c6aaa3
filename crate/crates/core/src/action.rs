//! The action of real linear maps on complex dilatations.
//!
//! An orientation-preserving invertible `u` induces the disc automorphism
//! `u*` with `μ_{T∘u} = u*(μ_T)`. Expanding the Wirtinger derivatives of
//! `T∘u` gives
//!
//! ```text
//! u*(μ) = (conj(u_z)·μ + u_z̄) / (conj(u_z̄)·μ + u_z)
//! ```
//!
//! i.e. a Möbius map `(Aμ + B)/(conj(B)μ + conj(A))` with `A = conj(u_z)`,
//! `B = u_z̄` and `|A|² − |B|² = det u > 0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dilatation::wirtinger;
use crate::error::{Error, Result};
use crate::forms::{DefiniteForm, RealLinearMap};
use crate::models::{klein_to_poincare, poincare_to_klein, PoincarePoint};
use crate::tolerance::Tolerances;

/// Default central-difference step for [`cauchy_riemann_residual`].
pub const DEFAULT_STEP: f64 = 1e-5;

/// `μ ↦ (Aμ + B)/(conj(B)μ + conj(A))`, normalized so that
/// `|A|² − |B|² = 1` and `Re A > 0` (or `A` positive imaginary).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AutomorphismJson", into = "AutomorphismJson")]
pub struct DiscAutomorphism {
    a: Complex64,
    b: Complex64,
}

#[derive(Serialize, Deserialize)]
struct AutomorphismJson {
    #[serde(rename = "A", with = "crate::json::complex")]
    a: Complex64,
    #[serde(rename = "B", with = "crate::json::complex")]
    b: Complex64,
}

impl TryFrom<AutomorphismJson> for DiscAutomorphism {
    type Error = Error;

    fn try_from(j: AutomorphismJson) -> Result<Self> {
        DiscAutomorphism::from_coefficients(j.a, j.b)
    }
}

impl From<DiscAutomorphism> for AutomorphismJson {
    fn from(f: DiscAutomorphism) -> Self {
        AutomorphismJson { a: f.a, b: f.b }
    }
}

impl DiscAutomorphism {
    pub const IDENTITY: Self = Self {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
    };

    /// Normalizes `(A, B)`; requires `|A| > |B|`.
    pub fn from_coefficients(a: Complex64, b: Complex64) -> Result<Self> {
        let det = a.norm_sqr() - b.norm_sqr();
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::Singular { det });
        }
        let mut scale = det.sqrt().recip();
        if a.re < 0.0 || (a.re == 0.0 && a.im < 0.0) {
            scale = -scale;
        }
        Ok(Self {
            a: a * scale,
            b: b * scale,
        })
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// Evaluates the Möbius expression at any `z` where it is defined.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.b.conj() * z + self.a.conj())
    }

    pub fn apply(&self, mu: PoincarePoint) -> PoincarePoint {
        PoincarePoint::clamped(self.eval(mu.value()))
    }

    /// Complex derivative `1 / (conj(B)μ + conj(A))²`.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let d = self.b.conj() * z + self.a.conj();
        (d * d).inv()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let a = self.a * other.a + self.b * other.b.conj();
        let b = self.a * other.b + self.b * other.a.conj();
        Self::from_coefficients(a, b).expect("composition of disc automorphisms")
    }

    pub fn inverse(&self) -> Self {
        Self::from_coefficients(self.a.conj(), -self.b).expect("inverse of a disc automorphism")
    }

    pub fn cauchy_riemann_residual(&self, mu: PoincarePoint, h: f64) -> Result<f64> {
        cauchy_riemann_residual(|z| self.eval(z), mu.value(), h)
    }
}

/// The automorphism `u*` of the Poincaré disc induced by `u`.
pub fn induced_automorphism(u: &RealLinearMap) -> Result<DiscAutomorphism> {
    induced_automorphism_with(u, &Tolerances::default())
}

pub fn induced_automorphism_with(u: &RealLinearMap, tol: &Tolerances) -> Result<DiscAutomorphism> {
    u.check_orientation_preserving(tol)?;
    let w = wirtinger(u);
    DiscAutomorphism::from_coefficients(w.t_z.conj(), w.t_zbar)
}

/// `u*(μ)` computed geometrically: pull back a form in the conformal class
/// `Ω⁻¹(μ)` through `u` and take its Poincaré invariant.
pub fn act_via_forms(u: &RealLinearMap, mu: PoincarePoint) -> Result<PoincarePoint> {
    let tol = Tolerances::default();
    u.check_orientation_preserving(&tol)?;
    let representative = DefiniteForm::representative(poincare_to_klein(mu));
    Ok(klein_to_poincare(representative.pullback(u)?.klein_point()))
}

/// `|∂f/∂x + i ∂f/∂y|` at `mu` by central differences with step `h`.
///
/// This is `2|∂f/∂z̄|`, zero for holomorphic `f` up to an `O(h²)`
/// truncation error.
pub fn cauchy_riemann_residual<F>(f: F, mu: Complex64, h: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidStep(h));
    }
    if !(mu.norm() + 2.0 * h < 1.0) {
        return Err(Error::OutOfDisc {
            re: mu.re,
            im: mu.im,
        });
    }
    let dx = Complex64::new(h, 0.0);
    let dy = Complex64::new(0.0, h);
    let fx = (f(mu + dx) - f(mu - dx)) / (2.0 * h);
    let fy = (f(mu + dy) - f(mu - dy)) / (2.0 * h);
    Ok((fx + Complex64::i() * fy).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dilatation::classical_mu;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn p(re: f64, im: f64) -> PoincarePoint {
        PoincarePoint::new(c(re, im)).unwrap()
    }

    #[test]
    fn identity_induces_identity() {
        let f = induced_automorphism(&RealLinearMap::IDENTITY).unwrap();
        assert_eq!(f, DiscAutomorphism::IDENTITY);
        assert_eq!(f.apply(p(0.3, -0.2)), p(0.3, -0.2));
    }

    #[test]
    fn multiplication_induces_rotation() {
        let a = c(1.2, -0.5);
        let f = induced_automorphism(&RealLinearMap::multiplication(a)).unwrap();
        let mu = c(0.4, 0.3);
        let want = a.conj() / a * mu;
        assert!((f.eval(mu) - want).norm() < 1e-15);
        let g = induced_automorphism(&RealLinearMap::multiplication(c(0.0, 1.0))).unwrap();
        assert!((g.eval(mu) + mu).norm() < 1e-15);
    }

    #[test]
    fn origin_goes_to_dilatation_of_u() {
        let f = induced_automorphism(&RealLinearMap::diag(2.0, 1.0)).unwrap();
        assert!((f.apply(PoincarePoint::ORIGIN).value() - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn functoriality_on_fixed_maps() {
        let t = RealLinearMap::new(2.0, 1.0, -0.5, 1.5);
        let u = RealLinearMap::new(0.7, -1.3, 0.4, 2.1);
        let lhs = classical_mu(&(t * u)).unwrap().value();
        let rhs = induced_automorphism(&u)
            .unwrap()
            .apply(classical_mu(&t).unwrap())
            .value();
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn geometric_route_agrees() {
        let u = RealLinearMap::new(0.7, -1.3, 0.4, 2.1);
        let f = induced_automorphism(&u).unwrap();
        for mu in [p(0.0, 0.0), p(0.5, -0.1), p(-0.2, 0.9)] {
            let geo = act_via_forms(&u, mu).unwrap().value();
            assert!((geo - f.apply(mu).value()).norm() < 1e-13);
        }
    }

    #[test]
    fn normalization_and_json() {
        let f = DiscAutomorphism::from_coefficients(c(-2.0, 0.0), c(0.0, 1.0)).unwrap();
        assert!(f.a().re > 0.0);
        assert!((f.a().norm_sqr() - f.b().norm_sqr() - 1.0).abs() < 1e-15);
        let s = serde_json::to_value(f).unwrap();
        assert!(s["A"]["re"].is_number() && s["B"]["im"].is_number());
        let back: DiscAutomorphism = serde_json::from_value(s).unwrap();
        assert_eq!(back, f);
        assert!(DiscAutomorphism::from_coefficients(c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn compose_and_inverse() {
        let f = DiscAutomorphism::from_coefficients(c(1.0, 0.5), c(0.3, -0.2)).unwrap();
        let g = DiscAutomorphism::from_coefficients(c(0.2, -1.0), c(-0.4, 0.1)).unwrap();
        let z = c(0.1, 0.6);
        assert!((f.compose(&g).eval(z) - f.eval(g.eval(z))).norm() < 1e-14);
        assert!((f.compose(&f.inverse()).eval(z) - z).norm() < 1e-14);
    }

    #[test]
    fn rejects_orientation_reversing() {
        assert!(matches!(
            induced_automorphism(&RealLinearMap::diag(1.0, -2.0)),
            Err(Error::OrientationReversing { .. })
        ));
    }

    #[test]
    fn residual_examples() {
        let id = DiscAutomorphism::IDENTITY;
        assert!(id.cauchy_riemann_residual(p(0.2, 0.1), 1e-5).unwrap() < 1e-9);
        let f = induced_automorphism(&RealLinearMap::diag(2.0, 1.0)).unwrap();
        assert!(
            f.cauchy_riemann_residual(PoincarePoint::ORIGIN, 1e-5)
                .unwrap()
                < 1e-6
        );
        let r = cauchy_riemann_residual(|z| z.conj(), c(0.3, 0.0), 1e-5).unwrap();
        assert!((r - 2.0).abs() < 1e-6);
    }

    #[test]
    fn residual_rejects_bad_stencils() {
        let id = DiscAutomorphism::IDENTITY;
        assert!(matches!(
            id.cauchy_riemann_residual(p(0.99999, 0.0), 1e-5),
            Err(Error::OutOfDisc { .. })
        ));
        assert_eq!(
            id.cauchy_riemann_residual(p(0.0, 0.0), 0.0),
            Err(Error::InvalidStep(0.0))
        );
    }
}
