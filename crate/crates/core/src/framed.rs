//! Dilatation of real linear maps between one-dimensional complex vector
//! spaces.
//!
//! A space is presented inside a fixed reference frame: a basis is a
//! non-zero vector `v`, given by its reference coordinate, and the
//! coordinate map `f_v` sends `w` to `w / v`. Dilatations computed in
//! coordinates depend on the source basis through the factor `conj(a)/a`
//! (for `v = a·u`); the tensor coefficient removes that factor.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dilatation::poincare_dilatation_with;
use crate::error::{Error, Result};
use crate::forms::RealLinearMap;
use crate::models::PoincarePoint;
use crate::tolerance::Tolerances;

/// A complex line with a chosen basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FramedLineJson", into = "FramedLineJson")]
pub struct FramedLine {
    basis: Complex64,
}

#[derive(Serialize, Deserialize)]
struct FramedLineJson {
    #[serde(with = "crate::json::complex")]
    basis: Complex64,
}

impl TryFrom<FramedLineJson> for FramedLine {
    type Error = Error;

    fn try_from(j: FramedLineJson) -> Result<Self> {
        FramedLine::new(j.basis)
    }
}

impl From<FramedLine> for FramedLineJson {
    fn from(l: FramedLine) -> Self {
        FramedLineJson { basis: l.basis }
    }
}

impl FramedLine {
    /// The reference frame itself.
    pub const REFERENCE: Self = Self {
        basis: Complex64::new(1.0, 0.0),
    };

    pub fn new(basis: Complex64) -> Result<Self> {
        if basis.norm_sqr() > 0.0 && basis.re.is_finite() && basis.im.is_finite() {
            Ok(Self { basis })
        } else {
            Err(Error::ZeroBasis)
        }
    }

    pub fn basis(&self) -> Complex64 {
        self.basis
    }

    /// `f_v(w)`: the coordinate of `w` in this basis.
    pub fn coordinate(&self, w: Complex64) -> Complex64 {
        w / self.basis
    }

    /// `q_v(w) = |f_v(w)|²`, the pull-back of `n` by the coordinate map.
    pub fn form_qv(&self, w: Complex64) -> f64 {
        self.coordinate(w).norm_sqr()
    }

    /// `f_v⁻¹ = m_v` as a real linear map.
    fn inverse_coordinate_map(&self) -> RealLinearMap {
        RealLinearMap::multiplication(self.basis)
    }

    fn coordinate_map(&self) -> RealLinearMap {
        RealLinearMap::multiplication(self.basis.inv())
    }
}

/// The coefficient of `π_T` on `e•⊗e` for the reference basis `e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DilatationTensor {
    #[serde(with = "crate::json::complex")]
    pub coeff: Complex64,
}

/// The coordinate expression `f_w ∘ T ∘ f_v⁻¹` of `T`.
pub fn in_coordinates(t: &RealLinearMap, src: &FramedLine, dst: &FramedLine) -> RealLinearMap {
    dst.coordinate_map() * *t * src.inverse_coordinate_map()
}

/// `π_T(v, w)`: the dilatation of `T` read in the bases `v` of the source
/// and `w` of the target. `T` is given in reference coordinates.
pub fn dilatation_wrt_bases(
    t: &RealLinearMap,
    src: &FramedLine,
    dst: &FramedLine,
) -> Result<PoincarePoint> {
    dilatation_wrt_bases_with(t, src, dst, &Tolerances::default())
}

pub fn dilatation_wrt_bases_with(
    t: &RealLinearMap,
    src: &FramedLine,
    dst: &FramedLine,
    tol: &Tolerances,
) -> Result<PoincarePoint> {
    t.check_orientation_preserving(tol)?;
    // the composite has det = det T·|v|²/|w|², positive whenever det T is;
    // only the structural check on T itself is scale-free
    let relaxed = Tolerances {
        singular: 0.0,
        ..*tol
    };
    poincare_dilatation_with(&in_coordinates(t, src, dst), &relaxed)
}

/// The basis-free dilatation tensor, `π_T(v)·(a/conj(a))` for `v = a·e`.
pub fn dilatation_tensor(t: &RealLinearMap, src: &FramedLine) -> Result<DilatationTensor> {
    dilatation_tensor_with(t, src, &Tolerances::default())
}

pub fn dilatation_tensor_with(
    t: &RealLinearMap,
    src: &FramedLine,
    tol: &Tolerances,
) -> Result<DilatationTensor> {
    let pi = dilatation_wrt_bases_with(t, src, &FramedLine::REFERENCE, tol)?.value();
    let a = src.basis();
    Ok(DilatationTensor {
        coeff: pi * (a / a.conj()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn line(re: f64, im: f64) -> FramedLine {
        FramedLine::new(c(re, im)).unwrap()
    }

    #[test]
    fn zero_basis_rejected() {
        assert_eq!(FramedLine::new(c(0.0, 0.0)), Err(Error::ZeroBasis));
        assert!(serde_json::from_str::<FramedLine>(r#"{"basis":{"re":0.0,"im":0.0}}"#).is_err());
    }

    #[test]
    fn coordinate_examples() {
        let w = c(0.3, -2.0);
        assert_eq!(FramedLine::REFERENCE.coordinate(w), w);
        assert_eq!(line(0.0, 2.0).coordinate(c(0.0, 2.0)), c(1.0, 0.0));
        assert_eq!(line(0.0, 2.0).coordinate(c(4.0, 0.0)), c(0.0, -2.0));
    }

    #[test]
    fn form_qv_examples() {
        let w = c(3.0, 4.0);
        assert_eq!(FramedLine::REFERENCE.form_qv(w), 25.0);
        assert_eq!(line(2.0, 0.0).form_qv(c(2.0, 0.0)), 1.0);
        // q_{a·u} = |a|⁻² q_u
        let (u, a) = (c(0.5, 1.0), c(-1.0, 2.0));
        let lhs = line((a * u).re, (a * u).im).form_qv(w);
        let rhs = line(u.re, u.im).form_qv(w) / a.norm_sqr();
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn conformal_class_of_qv_is_standard() {
        use crate::forms::QuadraticForm;
        let v = line(0.7, -2.0);
        let qv = QuadraticForm::N.pullback(&v.coordinate_map());
        assert!(qv.klein_point().unwrap().value().norm() < 1e-15);
    }

    #[test]
    fn dilatation_examples() {
        let t = RealLinearMap::diag(2.0, 1.0);
        let r = FramedLine::REFERENCE;
        let third = c(1.0 / 3.0, 0.0);
        assert!((dilatation_wrt_bases(&t, &r, &r).unwrap().value() - third).norm() < 1e-15);
        let far = line(7.0, -3.0);
        assert!((dilatation_wrt_bases(&t, &r, &far).unwrap().value() - third).norm() < 1e-15);
        let rot = FramedLine::new(Complex64::from_polar(1.0, FRAC_PI_4)).unwrap();
        let got = dilatation_wrt_bases(&t, &rot, &r).unwrap().value();
        assert!((got - c(0.0, -1.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn tensor_examples() {
        let t = RealLinearMap::diag(2.0, 1.0);
        for v in [line(1.0, 0.0), line(0.0, 3.0), line(-0.2, 0.9)] {
            let coeff = dilatation_tensor(&t, &v).unwrap().coeff;
            assert!((coeff - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
            let id = dilatation_tensor(&RealLinearMap::IDENTITY, &v)
                .unwrap()
                .coeff;
            assert!(id.norm() < 1e-16);
        }
        let json = serde_json::to_string(&dilatation_tensor(&t, &line(0.0, 1.0)).unwrap()).unwrap();
        assert!(json.starts_with(r#"{"coeff":{"re":"#));
    }

    #[test]
    fn tiny_bases_are_not_singular() {
        let t = RealLinearMap::new(1.0, 0.5, -0.25, 2.0);
        let small = line(1e-4, 0.0);
        let big = line(1e4, 1e4);
        assert!(dilatation_wrt_bases(&t, &small, &big).is_ok());
    }
}
