//! Real quadratic forms on `C = R²`.
//!
//! A form `q = aX² + bXY + cY²` is stored by its coefficients. The
//! `(t, r, s)` coordinates split it along `Q(C) = R·n ⊕ C`:
//! `q(z) = t|z|² + Re(conj(ζ) z²)` with `ζ = r + is`, and
//! `D(q) = t² − |ζ|²`.

mod map;

pub use map::RealLinearMap;

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::KleinPoint;
use crate::tolerance::Tolerances;

/// Below this relative size of `|ζ|` a form is treated as isotropic by
/// [`diagonalize`].
pub const ISOTROPY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrsCoordinates {
    pub t: f64,
    pub r: f64,
    pub s: f64,
}

impl TrsCoordinates {
    /// The `C`-component `r + is`.
    pub fn zeta(&self) -> Complex64 {
        Complex64::new(self.r, self.s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    Positive,
    Negative,
    NotDefinite,
}

impl QuadraticForm {
    /// `n = X² + Y²`, so `n(z) = |z|²`.
    pub const N: Self = Self::new(1.0, 0.0, 1.0);
    /// `r = X² − Y²`, so `r(z) = Re z²`.
    pub const R: Self = Self::new(1.0, 0.0, -1.0);
    /// `i = 2XY`, so `i(z) = Im z²`.
    pub const I: Self = Self::new(0.0, 2.0, 0.0);

    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    /// The diagonal form `aX² + cY²`.
    pub const fn standard(a: f64, c: f64) -> Self {
        Self::new(a, 0.0, c)
    }

    pub fn from_trs(t: f64, r: f64, s: f64) -> Self {
        Self::new(t + r, 2.0 * s, t - r)
    }

    /// Builds the form with `t`-component `t` and `C`-component `zeta`.
    pub fn from_t_zeta(t: f64, zeta: Complex64) -> Self {
        Self::from_trs(t, zeta.re, zeta.im)
    }

    pub fn trs(&self) -> TrsCoordinates {
        TrsCoordinates {
            t: 0.5 * (self.a + self.c),
            r: 0.5 * (self.a - self.c),
            s: 0.5 * self.b,
        }
    }

    pub fn evaluate(&self, z: Complex64) -> f64 {
        let (x, y) = (z.re, z.im);
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// The symmetric bilinear form `B_q` with `B_q(v, v) = q(v)`.
    pub fn polarize(&self, v: Complex64, w: Complex64) -> f64 {
        self.a * v.re * w.re + 0.5 * self.b * (v.re * w.im + v.im * w.re) + self.c * v.im * w.im
    }

    /// `D(q) = ac − b²/4`.
    pub fn determinant(&self) -> f64 {
        let h = 0.5 * self.b;
        let p = h * h;
        let e = h.mul_add(h, -p);
        self.a.mul_add(self.c, -p) - e
    }

    pub fn norm_inf(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs())
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(k * self.a, k * self.b, k * self.c)
    }

    pub fn definiteness(&self) -> Definiteness {
        self.definiteness_with(&Tolerances::default())
    }

    pub fn definiteness_with(&self, tol: &Tolerances) -> Definiteness {
        let n = self.norm_inf();
        let d = self.determinant();
        if !(n > 0.0) || !(d > tol.definite * n * n) {
            Definiteness::NotDefinite
        } else if self.a > 0.0 {
            Definiteness::Positive
        } else {
            Definiteness::Negative
        }
    }

    /// The pull-back `L*q = q ∘ L`, expanded exactly in the matrix entries.
    pub fn pullback(&self, l: &RealLinearMap) -> Self {
        let RealLinearMap { m11, m12, m21, m22 } = *l;
        let (a, b, c) = (self.a, self.b, self.c);
        Self::new(
            a * m11 * m11 + b * m11 * m21 + c * m21 * m21,
            2.0 * a * m11 * m12 + b * (m11 * m22 + m12 * m21) + 2.0 * c * m21 * m22,
            a * m12 * m12 + b * m12 * m22 + c * m22 * m22,
        )
    }

    /// `m_τ* q`, computed on the `(t, ζ)` components: `t ↦ |τ|² t`,
    /// `ζ ↦ conj(τ)² ζ`.
    pub fn mult_pullback(&self, tau: Complex64) -> Self {
        let trs = self.trs();
        let tau_bar = tau.conj();
        Self::from_t_zeta(tau.norm_sqr() * trs.t, tau_bar * tau_bar * trs.zeta())
    }

    /// Conformal class of a definite form as a point of the Klein disc.
    pub fn klein_point(&self) -> Result<KleinPoint> {
        self.klein_point_with(&Tolerances::default())
    }

    pub fn klein_point_with(&self, tol: &Tolerances) -> Result<KleinPoint> {
        if self.definiteness_with(tol) == Definiteness::NotDefinite {
            return Err(Error::NotDefinite {
                determinant: self.determinant(),
            });
        }
        Ok(DefiniteForm::tracked(*self, self.determinant()).klein_point())
    }

    pub fn diagonalize(&self) -> Diagonalization {
        diagonalize(self)
    }
}

/// A definite form paired with its determinant.
///
/// Pull-backs update the determinant by `D(L*q) = det(L)² D(q)` instead of
/// recomputing it from coefficients, so the conformal class stays accurate
/// when `q` is close to degenerate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefiniteForm {
    form: QuadraticForm,
    determinant: f64,
}

impl DefiniteForm {
    pub const N: Self = Self {
        form: QuadraticForm::N,
        determinant: 1.0,
    };

    pub fn new(q: QuadraticForm) -> Result<Self> {
        Self::new_with(q, &Tolerances::default())
    }

    pub fn new_with(q: QuadraticForm, tol: &Tolerances) -> Result<Self> {
        match q.definiteness_with(tol) {
            Definiteness::NotDefinite => Err(Error::NotDefinite {
                determinant: q.determinant(),
            }),
            _ => Ok(Self::tracked(q, q.determinant())),
        }
    }

    /// Representative `t = 1, ζ = p` of a Klein point.
    pub fn representative(p: KleinPoint) -> Self {
        let z = p.value();
        Self::tracked(QuadraticForm::from_t_zeta(1.0, z), p.defect())
    }

    pub(crate) fn tracked(form: QuadraticForm, determinant: f64) -> Self {
        Self { form, determinant }
    }

    pub fn form(&self) -> QuadraticForm {
        self.form
    }

    pub fn determinant(&self) -> f64 {
        self.determinant
    }

    /// Fails with `Singular` when `det L = 0`.
    pub fn pullback(&self, l: &RealLinearMap) -> Result<Self> {
        let det = l.det();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Singular { det });
        }
        Ok(Self::tracked(
            self.form.pullback(l),
            self.determinant * det * det,
        ))
    }

    pub fn klein_point(&self) -> KleinPoint {
        let trs = self.form.trs();
        KleinPoint::from_parts(trs.zeta() / trs.t, self.determinant / (trs.t * trs.t))
    }
}

/// `q = m_τ* q_{a,c}` with `τ = e^{iθ}` and `|a| ≥ |c|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagonalization {
    pub a: f64,
    pub c: f64,
    pub theta: f64,
}

impl Diagonalization {
    pub fn reconstruct(&self) -> QuadraticForm {
        QuadraticForm::standard(self.a, self.c)
            .mult_pullback(Complex64::from_polar(1.0, self.theta))
    }
}

/// Brings a form to diagonal shape by a rotation.
///
/// Since `ζ(m_τ* q_{a,c}) = ((a − c)/2)·conj(τ)²`, the rotation angle is
/// read off `arg ζ`. Isotropic forms get `θ = 0`; a swap enforcing
/// `|a| ≥ |c|` shifts `θ` by `π/2`. `θ` is reported in `(−π/2, π/2]`.
pub fn diagonalize(q: &QuadraticForm) -> Diagonalization {
    let trs = q.trs();
    let zeta = trs.zeta();
    let rho = zeta.norm();
    if rho <= ISOTROPY_TOL * q.norm_inf() {
        return Diagonalization {
            a: trs.t,
            c: trs.t,
            theta: 0.0,
        };
    }
    let mut theta = -0.5 * zeta.arg();
    let (mut a, mut c) = (trs.t + rho, trs.t - rho);
    if a.abs() < c.abs() {
        std::mem::swap(&mut a, &mut c);
        theta += FRAC_PI_2;
    }
    Diagonalization {
        a,
        c,
        theta: normalize_half_turn(theta),
    }
}

/// Reduces an angle modulo `π` into `(−π/2, π/2]`.
pub fn normalize_half_turn(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(PI);
    if t > FRAC_PI_2 {
        t -= PI;
    }
    // -0.0 + 0.0 is +0.0
    t + 0.0
}
