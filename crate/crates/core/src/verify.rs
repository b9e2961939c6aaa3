//! Seeded randomized verification of the toolkit's invariants.
//!
//! # Trial streams
//!
//! Every trial draws from its own SplitMix64 generator, so serial and
//! parallel runs produce identical reports. For master seed `s` and trial
//! index `i` (0-based):
//!
//! ```text
//! k       = s + i·0x9E3779B97F4A7C15            (wrapping)
//! seed_i  = first output of SplitMix64(state = k)
//! stream  = SplitMix64(state = seed_i)
//! ```
//!
//! A uniform draw in `[0, 1)` is `(next_u64 >> 11)·2⁻⁵³`. The samplers below
//! document how they consume the stream.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::{act_via_forms, induced_automorphism, DEFAULT_STEP};
use crate::dilatation::{classical_mu, poincare_dilatation, poincare_invariant};
use crate::forms::{diagonalize, QuadraticForm, RealLinearMap};
use crate::framed::{dilatation_tensor, dilatation_wrt_bases, FramedLine};
use crate::models::{
    hemisphere_lift, klein_to_poincare, poincare_distance, poincare_to_klein, stereographic,
    KleinPoint, PoincarePoint,
};
use crate::oracle::svd2;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Random matrices are resampled until `det` exceeds this.
pub const MIN_SAMPLE_DET: f64 = 1e-6;
/// Random disc points have modulus at most `1 − DISC_MARGIN`.
pub const DISC_MARGIN: f64 = 1e-6;
/// Radius of the disc used for finite-difference and distance checks.
pub const INTERIOR_RADIUS: f64 = 0.9;
/// Points probed per map by the analyticity check.
pub const ANALYTICITY_POINTS: usize = 100;
/// Minimum displacement of a non-zero dilatation under `m_{e^{iπ/4}}*`.
pub const MIN_DISPLACEMENT: f64 = 1e-6;
/// The argument part of `geom_interpretation` is allowed this multiple of
/// the modulus tolerance.
pub const ARG_TOL_FACTOR: f64 = 100.0;
/// `geom_interpretation` skips the argument check when `D − 1` is below this.
pub const ARG_CHECK_MIN_EXCESS: f64 = 1e-9;

/// Deterministic per-trial random source.
pub struct TrialRng(SplitMix64);

impl TrialRng {
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let mut mixer =
            SplitMix64::seed_from_u64(seed.wrapping_add(trial.wrapping_mul(GOLDEN_GAMMA)));
        Self(SplitMix64::seed_from_u64(mixer.next_u64()))
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Entries `m11, m12, m21, m22` i.i.d. uniform in `[−10, 10]`, redrawn
    /// until `det > 1e−6`.
    pub fn matrix(&mut self) -> RealLinearMap {
        loop {
            let m = [(); 4].map(|_| self.uniform_in(-10.0, 10.0));
            let l = RealLinearMap::from_row_major(m);
            if l.det() > MIN_SAMPLE_DET {
                return l;
            }
        }
    }

    /// Angle uniform in `[0, 2π)`, then radius `√u` capped at `1 − 1e−6`.
    pub fn disc_point(&mut self) -> Complex64 {
        let angle = TAU * self.uniform();
        let radius = self.uniform().sqrt().min(1.0 - DISC_MARGIN);
        Complex64::from_polar(radius, angle)
    }

    /// As [`disc_point`](Self::disc_point), scaled into the disc of radius
    /// [`INTERIOR_RADIUS`].
    pub fn interior_point(&mut self) -> Complex64 {
        self.disc_point() * INTERIOR_RADIUS
    }

    /// Real and imaginary parts uniform in `[−10, 10]`, redrawn while
    /// `|τ| < 1e−3`.
    pub fn nonzero_complex(&mut self) -> Complex64 {
        loop {
            let z = Complex64::new(self.uniform_in(-10.0, 10.0), self.uniform_in(-10.0, 10.0));
            if z.norm() >= 1e-3 {
                return z;
            }
        }
    }

    /// Modulus `10^u` with `u` uniform in `[−2, 2]`, then a uniform angle.
    pub fn basis(&mut self) -> Complex64 {
        let modulus = 10f64.powf(self.uniform_in(-2.0, 2.0));
        Complex64::from_polar(modulus, TAU * self.uniform())
    }

    /// Coefficients `a, b, c` i.i.d. uniform in `[−10, 10]`.
    pub fn form(&mut self) -> QuadraticForm {
        QuadraticForm::new(
            self.uniform_in(-10.0, 10.0),
            self.uniform_in(-10.0, 10.0),
            self.uniform_in(-10.0, 10.0),
        )
    }

    /// Klein point `p` from [`disc_point`](Self::disc_point), then
    /// `t = ±10^u` (`u` uniform in `[−1, 1]`, sign from a further draw) and
    /// `q = from_trs(t, t·Re p, t·Im p)`.
    pub fn definite_form(&mut self) -> QuadraticForm {
        let p = self.disc_point();
        let mut t = 10f64.powf(self.uniform_in(-1.0, 1.0));
        if self.uniform() < 0.5 {
            t = -t;
        }
        QuadraticForm::from_t_zeta(t, p * t)
    }

    /// Near-isotropic form: `a` uniform in `[−10, 10]`, `c = a + δ`,
    /// `b = δ'`, with `|δ|, |δ'| = 10^{−u}·1e−10` (`u` uniform in `[0, 6]`)
    /// and random signs.
    pub fn near_isotropic_form(&mut self) -> QuadraticForm {
        let a = self.uniform_in(-10.0, 10.0);
        let mut tiny = || {
            let m = 1e-10 * 10f64.powf(-self.uniform_in(0.0, 6.0));
            if self.uniform() < 0.5 {
                -m
            } else {
                m
            }
        };
        let (d1, d2) = (tiny(), tiny());
        QuadraticForm::new(a, d2, a + d1)
    }
}

fn disc(z: Complex64) -> PoincarePoint {
    PoincarePoint::new(z).expect("sampled inside the disc")
}

fn klein(z: Complex64) -> KleinPoint {
    KleinPoint::new(z).expect("sampled inside the disc")
}

/// Relative discrepancy between two forms in the coefficient ∞-norm.
pub fn form_distance(got: &QuadraticForm, want: &QuadraticForm) -> f64 {
    let diff = QuadraticForm::new(got.a - want.a, got.b - want.b, got.c - want.c);
    let scale = want.norm_inf();
    if scale == 0.0 {
        diff.norm_inf()
    } else {
        diff.norm_inf() / scale
    }
}

/// Distance between two angles modulo `2π`.
pub fn angle_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Registered invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    EqualityTheorem,
    ModelRoundtrip,
    MultLemma,
    Functoriality,
    Analyticity,
    GeomInterpretation,
    TensorInvariance,
    Isometry,
    FixedPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown property `{0}`")]
pub struct UnknownProperty(pub String);

impl Property {
    pub const ALL: [Property; 9] = [
        Property::EqualityTheorem,
        Property::ModelRoundtrip,
        Property::MultLemma,
        Property::Functoriality,
        Property::Analyticity,
        Property::GeomInterpretation,
        Property::TensorInvariance,
        Property::Isometry,
        Property::FixedPoint,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Property::EqualityTheorem => "equality_theorem",
            Property::ModelRoundtrip => "model_roundtrip",
            Property::MultLemma => "mult_lemma",
            Property::Functoriality => "functoriality",
            Property::Analyticity => "analyticity",
            Property::GeomInterpretation => "geom_interpretation",
            Property::TensorInvariance => "tensor_invariance",
            Property::Isometry => "isometry",
            Property::FixedPoint => "fixed_point",
        }
    }

    pub fn default_tolerance(&self) -> f64 {
        match self {
            Property::EqualityTheorem => 1e-10,
            Property::ModelRoundtrip => 1e-12,
            Property::MultLemma => 1e-10,
            Property::Functoriality => 1e-10,
            Property::Analyticity => 1e-6,
            Property::GeomInterpretation => 1e-10,
            Property::TensorInvariance => 1e-10,
            Property::Isometry => 1e-9,
            Property::FixedPoint => 1e-12,
        }
    }

    /// Error of one randomized trial; `NaN` counts as a failure.
    pub fn trial_error(&self, rng: &mut TrialRng) -> f64 {
        match self {
            Property::EqualityTheorem => equality_theorem(rng),
            Property::ModelRoundtrip => model_roundtrip(rng),
            Property::MultLemma => mult_lemma(rng),
            Property::Functoriality => functoriality(rng),
            Property::Analyticity => analyticity(rng),
            Property::GeomInterpretation => geom_interpretation(rng),
            Property::TensorInvariance => tensor_invariance(rng),
            Property::Isometry => isometry(rng),
            Property::FixedPoint => fixed_point(rng),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, UnknownProperty> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| UnknownProperty(s.to_owned()))
    }
}

/// `|π_T − μ_T|`.
fn equality_theorem(rng: &mut TrialRng) -> f64 {
    let t = rng.matrix();
    let geometric = poincare_dilatation(&t).expect("sampled det > 0").value();
    let classical = classical_mu(&t).expect("sampled det > 0").value();
    (geometric - classical).norm()
}

/// Both compositions of `Ω` and `Ω⁻¹` against the identity.
fn model_roundtrip(rng: &mut TrialRng) -> f64 {
    let p = klein(rng.disc_point());
    let mu = disc(rng.disc_point());
    let kk = (poincare_to_klein(klein_to_poincare(p)).value() - p.value()).norm();
    let pp = (klein_to_poincare(poincare_to_klein(mu)).value() - mu.value()).norm();
    kk.max(pp)
}

/// `m_τ* q` on `(t, ζ)` components against the generic pull-back.
fn mult_lemma(rng: &mut TrialRng) -> f64 {
    let tau = rng.nonzero_complex();
    let q = rng.form();
    let fast = q.mult_pullback(tau);
    let generic = q.pullback(&RealLinearMap::multiplication(tau));
    form_distance(&fast, &generic)
}

/// `μ_{T∘u} = u*(μ_T)`, the group law `(v∘u)* = u*∘v*`, and agreement of
/// `u*` with the pull-back route.
fn functoriality(rng: &mut TrialRng) -> f64 {
    let (t, u, v) = (rng.matrix(), rng.matrix(), rng.matrix());
    let mu = disc(rng.disc_point());
    let u_star = induced_automorphism(&u).expect("sampled det > 0");
    let v_star = induced_automorphism(&v).expect("sampled det > 0");
    let vu_star = induced_automorphism(&(v * u)).expect("product of det > 0");

    let lhs = classical_mu(&(t * u)).expect("product of det > 0").value();
    let rhs = u_star
        .apply(classical_mu(&t).expect("sampled det > 0"))
        .value();
    let composite = (vu_star.apply(mu).value() - u_star.apply(v_star.apply(mu)).value()).norm();
    let geometric = act_via_forms(&u, mu).expect("sampled det > 0").value();
    let via_forms = (geometric - u_star.apply(mu).value()).norm();
    (lhs - rhs).norm().max(composite).max(via_forms)
}

/// Largest Cauchy–Riemann residual of `u*` over interior points.
fn analyticity(rng: &mut TrialRng) -> f64 {
    let u_star = induced_automorphism(&rng.matrix()).expect("sampled det > 0");
    (0..ANALYTICITY_POINTS)
        .map(|_| {
            let mu = disc(rng.interior_point());
            u_star
                .cauchy_riemann_residual(mu, DEFAULT_STEP)
                .expect("stencil inside the disc")
        })
        .fold(0.0, f64::max)
}

/// `|π_T|` against `(D−1)/(D+1)` and `arg π_T` against `2α`, with `D` and
/// `α` from the SVD oracle. The argument error is divided by
/// [`ARG_TOL_FACTOR`].
fn geom_interpretation(rng: &mut TrialRng) -> f64 {
    let t = rng.matrix();
    let pi_t = poincare_dilatation(&t).expect("sampled det > 0").value();
    let svd = svd2(t.to_row_major());
    let d = svd.axis_ratio();
    let modulus = (pi_t.norm() - (d - 1.0) / (d + 1.0)).abs();
    if d - 1.0 < ARG_CHECK_MIN_EXCESS {
        return modulus;
    }
    let argument = angle_distance(pi_t.arg(), 2.0 * svd.max_stretch_angle());
    modulus.max(argument / ARG_TOL_FACTOR)
}

/// Target independence, source equivariance, the scaling of `q_v`, and
/// invariance of the tensor coefficient.
fn tensor_invariance(rng: &mut TrialRng) -> f64 {
    let t = rng.matrix();
    let u = FramedLine::new(rng.basis()).expect("non-zero basis");
    let a = rng.basis();
    let v = FramedLine::new(a * u.basis()).expect("non-zero basis");
    let target = FramedLine::new(rng.basis()).expect("non-zero basis");
    let w = rng.basis();

    let reference = FramedLine::REFERENCE;
    let pi_u = dilatation_wrt_bases(&t, &u, &reference)
        .expect("det > 0")
        .value();
    let pi_u_far = dilatation_wrt_bases(&t, &u, &target)
        .expect("det > 0")
        .value();
    let pi_v = dilatation_wrt_bases(&t, &v, &reference)
        .expect("det > 0")
        .value();
    let target_independence = (pi_u - pi_u_far).norm();
    let equivariance = (pi_v - a.conj() / a * pi_u).norm();

    let qv = v.form_qv(w);
    let scaling = (qv - u.form_qv(w) / a.norm_sqr()).abs() / qv;

    let tensor_u = dilatation_tensor(&t, &u).expect("det > 0").coeff;
    let tensor_v = dilatation_tensor(&t, &v).expect("det > 0").coeff;
    let tensor_e = dilatation_tensor(&t, &reference).expect("det > 0").coeff;
    let invariance = (tensor_u - tensor_e)
        .norm()
        .max((tensor_v - tensor_e).norm());

    target_independence
        .max(equivariance)
        .max(scaling)
        .max(invariance)
}

/// Distortion of the Poincaré distance by `u*`.
fn isometry(rng: &mut TrialRng) -> f64 {
    let u_star = induced_automorphism(&rng.matrix()).expect("sampled det > 0");
    let mu1 = disc(rng.interior_point());
    let mu2 = disc(rng.interior_point());
    let before = poincare_distance(mu1, mu2);
    let after = poincare_distance(u_star.apply(mu1), u_star.apply(mu2));
    (after - before).abs()
}

/// `0` is fixed by every `m_τ*`; a non-zero point must move under
/// `m_{e^{iπ/4}}*` (a violation scores `1`).
fn fixed_point(rng: &mut TrialRng) -> f64 {
    let tau = rng.nonzero_complex();
    let mu = disc(rng.disc_point());
    let rotation = induced_automorphism(&RealLinearMap::multiplication(tau)).expect("|τ| > 0");
    let drift = rotation.apply(PoincarePoint::ORIGIN).value().norm();
    let eighth = induced_automorphism(&RealLinearMap::rotation(FRAC_PI_4)).expect("rotation");
    let moved = (eighth.apply(mu).value() - mu.value()).norm();
    if mu.value().norm() > 0.0 && moved < MIN_DISPLACEMENT {
        return 1.0;
    }
    drift
}

/// Outcome of [`run`]; serialized as the CLI's `verify` document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub property: String,
    pub trials: u64,
    pub failures: u64,
    pub max_error: f64,
    pub tolerance: f64,
    pub seed: u64,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs `trials` independent trials of `property` in parallel.
pub fn run(property: Property, trials: u64, seed: u64, tol: f64) -> VerificationReport {
    let start = Instant::now();
    let (failures, max_error) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = TrialRng::for_trial(seed, i);
            let err = property.trial_error(&mut rng);
            let err = if err.is_nan() { f64::INFINITY } else { err };
            (u64::from(err > tol), err)
        })
        .reduce(|| (0, 0.0), |x, y| (x.0 + y.0, x.1.max(y.1)));
    VerificationReport {
        property: property.name().to_owned(),
        trials,
        failures,
        max_error,
        tolerance: tol,
        seed,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

/// Reference-route check used alongside `model_roundtrip`: the radial
/// closed form of `Ω` against lift-then-project.
pub fn omega_oracle_error(p: KleinPoint) -> f64 {
    (klein_to_poincare(p).value() - stereographic(&hemisphere_lift(p)).value()).norm()
}

/// Relative reconstruction error of [`diagonalize`].
pub fn diagonalize_roundtrip_error(q: &QuadraticForm) -> f64 {
    form_distance(&diagonalize(q).reconstruct(), q)
}

/// Klein- and Poincaré-level rotation laws for `m_τ*`.
pub fn rotation_law_error(q: &QuadraticForm, tau: Complex64) -> f64 {
    let sigma = tau.conj() / tau;
    let moved = q.mult_pullback(tau);
    let k0 = q.klein_point().expect("definite").value();
    let k1 = moved.klein_point().expect("definite").value();
    let p0 = poincare_invariant(q).expect("definite").value();
    let p1 = poincare_invariant(&moved).expect("definite").value();
    (k1 - sigma * k0).norm().max((p1 - sigma * p0).norm())
}
