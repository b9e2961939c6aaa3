//! The classical complex dilatation of a real linear map and its geometric
//! counterpart: the Poincaré invariant of the pulled-back standard form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::forms::{diagonalize, normalize_half_turn, DefiniteForm, QuadraticForm, RealLinearMap};
use crate::models::{klein_to_poincare, KleinPoint, PoincarePoint};
use crate::tolerance::Tolerances;

/// Below this value of `D − 1` the direction of maximal stretch is undefined.
pub const ALPHA_UNDEFINED_TOL: f64 = 1e-9;

/// The Wirtinger derivatives of a real linear map `T`, so that
/// `T(z) = t_z·z + t_zbar·conj(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WirtingerPair {
    #[serde(with = "crate::json::complex")]
    pub t_z: Complex64,
    #[serde(with = "crate::json::complex")]
    pub t_zbar: Complex64,
}

impl WirtingerPair {
    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.t_z * z + self.t_zbar * z.conj()
    }

    /// `det T = |t_z|² − |t_zbar|²`.
    pub fn det(&self) -> f64 {
        self.t_z.norm_sqr() - self.t_zbar.norm_sqr()
    }
}

/// With `T₁ = T(1)` and `T₂ = T(i)`: `t_z = (T₁ − iT₂)/2`, `t_zbar = (T₁ + iT₂)/2`.
pub fn wirtinger(t: &RealLinearMap) -> WirtingerPair {
    WirtingerPair {
        t_z: 0.5 * Complex64::new(t.m11 + t.m22, t.m21 - t.m12),
        t_zbar: 0.5 * Complex64::new(t.m11 - t.m22, t.m21 + t.m12),
    }
}

/// `μ_T = T_z̄ / T_z` for an orientation-preserving invertible `T`.
pub fn classical_mu(t: &RealLinearMap) -> Result<PoincarePoint> {
    classical_mu_with(t, &Tolerances::default())
}

pub fn classical_mu_with(t: &RealLinearMap, tol: &Tolerances) -> Result<PoincarePoint> {
    t.check_orientation_preserving(tol)?;
    let w = wirtinger(t);
    Ok(PoincarePoint::clamped(w.t_zbar / w.t_z))
}

/// Axis ratio of the image ellipse and the domain direction of maximal
/// stretch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisData {
    pub ratio: f64,
    pub alpha: f64,
    pub alpha_defined: bool,
}

pub fn axis_data(t: &RealLinearMap) -> Result<AxisData> {
    axis_data_with(t, &Tolerances::default())
}

pub fn axis_data_with(t: &RealLinearMap, tol: &Tolerances) -> Result<AxisData> {
    let det = t.check_orientation_preserving(tol)?;
    let w = wirtinger(t);
    let sum = w.t_z.norm() + w.t_zbar.norm();
    // |t_z| − |t_zbar| = det / (|t_z| + |t_zbar|)
    let ratio = sum * sum / det;
    if ratio - 1.0 <= ALPHA_UNDEFINED_TOL {
        return Ok(AxisData {
            ratio,
            alpha: 0.0,
            alpha_defined: false,
        });
    }
    // T*n = m_τ* q_{a,c} with a ≥ c, so |T z| peaks where τz is real
    let diag = diagonalize(&QuadraticForm::N.pullback(t));
    Ok(AxisData {
        ratio,
        alpha: normalize_half_turn(-diag.theta),
        alpha_defined: true,
    })
}

/// `P(q) = Ω([q])` for a definite form.
pub fn poincare_invariant(q: &QuadraticForm) -> Result<PoincarePoint> {
    poincare_invariant_with(q, &Tolerances::default())
}

pub fn poincare_invariant_with(q: &QuadraticForm, tol: &Tolerances) -> Result<PoincarePoint> {
    q.klein_point_with(tol).map(klein_to_poincare)
}

/// `π_T = Ω(T*[n])`.
///
/// The hemisphere height of the Klein point `ζ/t` of `T*n` is
/// `√D(T*n) / t = |det T| / t`, taken from the determinant of `T` rather
/// than from the rounded coefficients of `T*n`.
pub fn poincare_dilatation(t: &RealLinearMap) -> Result<PoincarePoint> {
    poincare_dilatation_with(t, &Tolerances::default())
}

pub fn poincare_dilatation_with(t: &RealLinearMap, tol: &Tolerances) -> Result<PoincarePoint> {
    let det = t.check_orientation_preserving(tol)?;
    Ok(pipeline(t, det).1)
}

fn pipeline(t: &RealLinearMap, det: f64) -> (KleinPoint, PoincarePoint) {
    let pulled = QuadraticForm::N.pullback(t);
    let klein = DefiniteForm::tracked(pulled, det * det).klein_point();
    (klein, klein_to_poincare(klein))
}

/// Everything the CLI reports about a single map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DilatationSummary {
    #[serde(with = "crate::json::complex")]
    pub mu: Complex64,
    pub axis_ratio: f64,
    pub alpha: f64,
    pub alpha_defined: bool,
    #[serde(with = "crate::json::complex")]
    pub klein: Complex64,
}

pub fn summarize(t: &RealLinearMap, tol: &Tolerances) -> Result<DilatationSummary> {
    let det = t.check_orientation_preserving(tol)?;
    let (klein, mu) = pipeline(t, det);
    let axes = axis_data_with(t, tol)?;
    Ok(DilatationSummary {
        mu: mu.value(),
        axis_ratio: axes.ratio,
        alpha: axes.alpha,
        alpha_defined: axes.alpha_defined,
        klein: klein.value(),
    })
}
