//! The Klein and Poincaré models of the hyperbolic plane on the unit disc,
//! and the isomorphism `Ω` between them.
//!
//! `Ω` is the vertical lift of the Klein disc onto the upper unit hemisphere
//! followed by stereographic projection from the south pole `(0, −1)` back to
//! the equatorial disc. Both the radial closed form ([`klein_to_poincare`])
//! and the explicit construction ([`hemisphere_lift`], [`stereographic`]) are
//! provided; the latter serves as a reference route.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Points whose modulus is at least `1 - NEAR_BOUNDARY` are flagged.
pub const NEAR_BOUNDARY: f64 = 1e-12;

/// Largest `f64` strictly below one.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

const ARTANH_CLAMP: f64 = 1.0 - 1e-15;

fn check_disc(z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() && z.norm() < 1.0 {
        Ok(z)
    } else {
        Err(Error::OutOfDisc { re: z.re, im: z.im })
    }
}

/// Pulls a value that rounding pushed onto the unit circle back inside.
fn clamp_into_disc(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r < 1.0 {
        z
    } else {
        z * (BELOW_ONE / r)
    }
}

/// A point of the Klein disc: a conformal structure on `C`.
///
/// Alongside the value `p` the point carries `1 − |p|²`, the squared height
/// of its lift to the upper hemisphere. Near the boundary that quantity is
/// not recoverable from the rounded `p`, so producers that know it in closed
/// form (`Ω⁻¹`, pull-backs of forms with a known determinant) supply it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KleinPoint {
    value: Complex64,
    defect: f64,
}

impl KleinPoint {
    pub const ORIGIN: Self = Self {
        value: Complex64::new(0.0, 0.0),
        defect: 1.0,
    };

    pub fn new(z: Complex64) -> Result<Self> {
        let value = check_disc(z)?;
        Ok(Self {
            value,
            defect: defect_of(value),
        })
    }

    /// `defect` is `1 − |z|²` computed by the caller without cancellation.
    pub(crate) fn from_parts(z: Complex64, defect: f64) -> Self {
        let value = clamp_into_disc(z);
        let defect = if defect > 0.0 && defect <= 1.0 {
            defect
        } else {
            defect_of(value)
        };
        Self { value, defect }
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    /// `1 − |p|²`.
    pub fn defect(&self) -> f64 {
        self.defect
    }

    pub fn is_near_boundary(&self) -> bool {
        self.value.norm() >= 1.0 - NEAR_BOUNDARY
    }
}

impl From<KleinPoint> for Complex64 {
    fn from(p: KleinPoint) -> Complex64 {
        p.value
    }
}

fn defect_of(z: Complex64) -> f64 {
    let r = z.norm();
    ((1.0 - r) * (1.0 + r)).max(f64::MIN_POSITIVE)
}

/// A point of the Poincaré disc, where complex dilatations live.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincarePoint(Complex64);

impl PoincarePoint {
    pub const ORIGIN: Self = Self(Complex64::new(0.0, 0.0));

    pub fn new(z: Complex64) -> Result<Self> {
        check_disc(z).map(Self)
    }

    pub(crate) fn clamped(z: Complex64) -> Self {
        Self(clamp_into_disc(z))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn is_near_boundary(&self) -> bool {
        self.0.norm() >= 1.0 - NEAR_BOUNDARY
    }
}

impl From<PoincarePoint> for Complex64 {
    fn from(p: PoincarePoint) -> Complex64 {
        p.0
    }
}

/// A point `(x, w)` of the upper unit hemisphere in `C × R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HemisphereJson", into = "HemisphereJson")]
pub struct HemispherePoint {
    x: Complex64,
    w: f64,
}

#[derive(Serialize, Deserialize)]
struct HemisphereJson {
    re: f64,
    im: f64,
    w: f64,
}

impl TryFrom<HemisphereJson> for HemispherePoint {
    type Error = Error;

    fn try_from(j: HemisphereJson) -> Result<Self> {
        HemispherePoint::new(Complex64::new(j.re, j.im), j.w)
    }
}

impl From<HemispherePoint> for HemisphereJson {
    fn from(h: HemispherePoint) -> Self {
        HemisphereJson {
            re: h.x.re,
            im: h.x.im,
            w: h.w,
        }
    }
}

impl HemispherePoint {
    pub fn new(x: Complex64, w: f64) -> Result<Self> {
        if w > 0.0 && (x.norm_sqr() + w * w - 1.0).abs() <= 1e-12 {
            Ok(Self { x, w })
        } else {
            Err(Error::OffHemisphere)
        }
    }

    /// Horizontal component.
    pub fn horizontal(&self) -> Complex64 {
        self.x
    }

    /// Height above the equatorial plane.
    pub fn height(&self) -> f64 {
        self.w
    }

    /// Orthogonal projection back to the Klein disc.
    pub fn project(&self) -> KleinPoint {
        KleinPoint::from_parts(self.x, self.w * self.w)
    }
}

/// Vertical lift of a Klein point onto the upper hemisphere, with the
/// height `√(1 − |p|²)` recomputed from the value of `p`.
pub fn hemisphere_lift(p: KleinPoint) -> HemispherePoint {
    let r = p.value.norm();
    HemispherePoint {
        x: p.value,
        w: ((1.0 - r) * (1.0 + r)).sqrt(),
    }
}

/// Stereographic projection from `(0, −1)` onto the equatorial disc.
///
/// The line through `(0, −1)` and `(x, w)` meets height zero at `x / (1 + w)`.
pub fn stereographic(h: &HemispherePoint) -> PoincarePoint {
    PoincarePoint::clamped(h.x / (1.0 + h.w))
}

/// `Ω`: radial rescaling `p = ((1−γ²)/(1+γ²))σ ↦ ((1−γ)/(1+γ))σ`, where
/// `γ = √((1−|p|)/(1+|p|))` and `|σ| = 1`.
pub fn klein_to_poincare(p: KleinPoint) -> PoincarePoint {
    let r = p.value.norm();
    if r == 0.0 {
        return PoincarePoint::ORIGIN;
    }
    // (1 − r)/(1 + r) = (1 − r²)/(1 + r)²
    let gamma = p.defect.sqrt() / (1.0 + r);
    let sigma = p.value / r;
    PoincarePoint::clamped(sigma * ((1.0 - gamma) / (1.0 + gamma)))
}

/// `Ω⁻¹(μ) = 2μ / (1 + |μ|²)`.
pub fn poincare_to_klein(mu: PoincarePoint) -> KleinPoint {
    let m = mu.0.norm();
    let denom = 1.0 + m * m;
    // 1 − |Ω⁻¹(μ)|² = ((1 − |μ|²)/(1 + |μ|²))²
    let height = (1.0 - m) * (1.0 + m) / denom;
    KleinPoint::from_parts(mu.0 * (2.0 / denom), height * height)
}

/// Hyperbolic distance in the Poincaré disc (curvature −1).
pub fn poincare_distance(mu1: PoincarePoint, mu2: PoincarePoint) -> f64 {
    let (z, w) = (mu1.0, mu2.0);
    let num = (z - w).norm();
    if num == 0.0 {
        return 0.0;
    }
    let den = (Complex64::new(1.0, 0.0) - w.conj() * z).norm();
    let r = (num / den).min(ARTANH_CLAMP);
    ((1.0 + r) / (1.0 - r)).ln()
}

/// Which disc model a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Klein,
    Poincare,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Klein => "klein",
            Model::Poincare => "poincare",
        })
    }
}

impl std::str::FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "klein" => Ok(Model::Klein),
            "poincare" | "poincaré" => Ok(Model::Poincare),
            other => Err(format!("unknown disc model `{other}`")),
        }
    }
}

/// A disc point tagged with its model; the JSON form is
/// `{"model": "klein"|"poincare", "re": .., "im": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DiskPointJson", into = "DiskPointJson")]
pub enum DiskPoint {
    Klein(KleinPoint),
    Poincare(PoincarePoint),
}

#[derive(Serialize, Deserialize)]
struct DiskPointJson {
    model: Model,
    re: f64,
    im: f64,
}

impl TryFrom<DiskPointJson> for DiskPoint {
    type Error = Error;

    fn try_from(j: DiskPointJson) -> Result<Self> {
        DiskPoint::new(j.model, Complex64::new(j.re, j.im))
    }
}

impl From<DiskPoint> for DiskPointJson {
    fn from(p: DiskPoint) -> Self {
        let z = p.value();
        DiskPointJson {
            model: p.model(),
            re: z.re,
            im: z.im,
        }
    }
}

impl DiskPoint {
    pub fn new(model: Model, z: Complex64) -> Result<Self> {
        Ok(match model {
            Model::Klein => DiskPoint::Klein(KleinPoint::new(z)?),
            Model::Poincare => DiskPoint::Poincare(PoincarePoint::new(z)?),
        })
    }

    pub fn model(&self) -> Model {
        match self {
            DiskPoint::Klein(_) => Model::Klein,
            DiskPoint::Poincare(_) => Model::Poincare,
        }
    }

    pub fn value(&self) -> Complex64 {
        match self {
            DiskPoint::Klein(p) => p.value(),
            DiskPoint::Poincare(p) => p.value(),
        }
    }

    pub fn is_near_boundary(&self) -> bool {
        match self {
            DiskPoint::Klein(p) => p.is_near_boundary(),
            DiskPoint::Poincare(p) => p.is_near_boundary(),
        }
    }

    /// Re-expresses the point in `to`; the identity when the models match.
    pub fn convert(self, to: Model) -> DiskPoint {
        match (self, to) {
            (DiskPoint::Klein(p), Model::Poincare) => DiskPoint::Poincare(klein_to_poincare(p)),
            (DiskPoint::Poincare(mu), Model::Klein) => DiskPoint::Klein(poincare_to_klein(mu)),
            (p, _) => p,
        }
    }
}
