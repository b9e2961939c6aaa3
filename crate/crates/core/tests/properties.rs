use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;
use proptest::prelude::*;

use dilatation_kit::action::induced_automorphism;
use dilatation_kit::dilatation::{classical_mu, wirtinger};
use dilatation_kit::forms::{Definiteness, QuadraticForm, RealLinearMap};
use dilatation_kit::framed::{dilatation_wrt_bases, FramedLine};
use dilatation_kit::models::{
    hemisphere_lift, klein_to_poincare, poincare_to_klein, KleinPoint, PoincarePoint,
};

fn entry() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn any_map() -> impl Strategy<Value = RealLinearMap> {
    (entry(), entry(), entry(), entry()).prop_map(|(a, b, c, d)| RealLinearMap::new(a, b, c, d))
}

fn positive_map() -> impl Strategy<Value = RealLinearMap> {
    any_map().prop_filter("det > 1e-3", |m| m.det() > 1e-3)
}

fn form() -> impl Strategy<Value = QuadraticForm> {
    (entry(), entry(), entry()).prop_map(|(a, b, c)| QuadraticForm::new(a, b, c))
}

fn disc() -> impl Strategy<Value = Complex64> {
    (0.0..1.0 - 1e-6, 0.0..std::f64::consts::TAU).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

fn definite_form() -> impl Strategy<Value = QuadraticForm> {
    (disc(), 0.1..10.0f64, any::<bool>()).prop_map(|(p, t, neg)| {
        let t = if neg { -t } else { t };
        QuadraticForm::from_t_zeta(t, p * t)
    })
}

fn nonzero_complex() -> impl Strategy<Value = Complex64> {
    (entry(), entry())
        .prop_map(|(x, y)| Complex64::new(x, y))
        .prop_filter("|z| >= 1e-3", |z| z.norm() >= 1e-3)
}

fn coeff_gap(x: &QuadraticForm, y: &QuadraticForm) -> f64 {
    (x.a - y.a)
        .abs()
        .max((x.b - y.b).abs())
        .max((x.c - y.c).abs())
}

proptest! {
    #[test]
    fn pullback_is_contravariant(l in any_map(), k in any_map(), q in form()) {
        let direct = q.pullback(&(l * k));
        let stepwise = q.pullback(&l).pullback(&k);
        let scale = q.norm_inf() * (l.norm_inf() * k.norm_inf()).powi(2);
        prop_assert!(coeff_gap(&direct, &stepwise) <= 1e-12 * scale);
    }

    #[test]
    fn determinant_scales_by_det_squared(l in any_map(), q in form()) {
        let got = q.pullback(&l).determinant();
        let want = l.det().powi(2) * q.determinant();
        let scale = (l.norm_inf().powi(2) * q.norm_inf()).powi(2);
        prop_assert!((got - want).abs() <= 1e-10 * scale);
    }

    #[test]
    fn klein_point_ignores_scale(q in definite_form(), lambda in 1e-3..1e3f64, neg in any::<bool>()) {
        let lambda = if neg { -lambda } else { lambda };
        let p = q.klein_point().unwrap().value();
        let scaled = q.scale(lambda).klein_point().unwrap().value();
        prop_assert!((p - scaled).norm() <= 1e-14);
    }

    #[test]
    fn definite_forms_land_inside_disc(q in form()) {
        match q.klein_point() {
            Ok(p) => {
                prop_assert_ne!(q.definiteness(), Definiteness::NotDefinite);
                prop_assert!(p.value().norm() < 1.0);
            }
            Err(_) => prop_assert_eq!(q.definiteness(), Definiteness::NotDefinite),
        }
    }

    #[test]
    fn definiteness_follows_sign_of_t(q in definite_form()) {
        let want = if q.trs().t > 0.0 { Definiteness::Positive } else { Definiteness::Negative };
        prop_assert_eq!(q.definiteness(), want);
    }

    #[test]
    fn diagonalize_is_canonical(q in form()) {
        let d = q.diagonalize();
        prop_assert!(d.a.abs() >= d.c.abs());
        prop_assert!(d.theta > -FRAC_PI_2 && d.theta <= FRAC_PI_2);
        let scale = q.norm_inf().max(f64::MIN_POSITIVE);
        prop_assert!(coeff_gap(&d.reconstruct(), &q) <= 1e-10 * scale);
    }

    #[test]
    fn origin_is_the_only_rotation_invariant_class(p in disc()) {
        let q = QuadraticForm::from_t_zeta(1.0, p);
        let moved = q.mult_pullback(Complex64::from_polar(1.0, FRAC_PI_4)).klein_point().unwrap();
        prop_assert!((moved.value() - Complex64::new(0.0, -1.0) * p).norm() <= 1e-15);
        prop_assert_eq!(QuadraticForm::N.mult_pullback(Complex64::new(3.0, -2.0)).klein_point().unwrap().value(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn hemisphere_lift_is_on_sphere(p in disc()) {
        let h = hemisphere_lift(KleinPoint::new(p).unwrap());
        prop_assert!(h.height() > 0.0);
        prop_assert!((h.horizontal().norm_sqr() + h.height().powi(2) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn omega_commutes_with_rotations(p in disc(), angle in 0.0..std::f64::consts::TAU) {
        let sigma = Complex64::from_polar(1.0, angle);
        let rotated = klein_to_poincare(KleinPoint::new(sigma * p).unwrap()).value();
        let want = sigma * klein_to_poincare(KleinPoint::new(p).unwrap()).value();
        prop_assert!((rotated - want).norm() <= 1e-13);
    }

    #[test]
    fn omega_contracts_radially(p in disc()) {
        prop_assume!(p.norm() > 0.0);
        let mu = klein_to_poincare(KleinPoint::new(p).unwrap()).value();
        prop_assert!(mu.norm() < p.norm());
        prop_assert!((mu / mu.norm() - p / p.norm()).norm() <= 1e-15);
    }

    #[test]
    fn omega_inverse_stays_in_disc(mu in disc()) {
        let p = poincare_to_klein(PoincarePoint::new(mu).unwrap());
        prop_assert!(p.value().norm() < 1.0);
        prop_assert!(p.defect() > 0.0);
    }

    #[test]
    fn wirtinger_pair_reconstructs_map(t in any_map(), z in disc()) {
        let w = wirtinger(&t);
        let scale = t.norm_inf() * z.norm().max(1e-300);
        prop_assert!((w.apply(z) - t.apply(z)).norm() <= 1e-12 * scale);
        prop_assert!((w.det() - t.det()).abs() <= 1e-12 * t.norm_inf().powi(2));
    }

    #[test]
    fn dilatation_moduli_round_trip(t in positive_map()) {
        let w = wirtinger(&t);
        prop_assert!(w.t_z.norm() > w.t_zbar.norm());
        let d = classical_mu(&t).unwrap().value().norm();
        prop_assert!(d < 1.0);
        let ratio = (1.0 + d) / (1.0 - d);
        let back = (ratio - 1.0) / (ratio + 1.0);
        prop_assert!((back - d).abs() <= 1e-12);
    }

    #[test]
    fn induced_maps_preserve_orientation(u in positive_map()) {
        let phi = induced_automorphism(&u).unwrap();
        let h = 1e-6;
        let at = |z: Complex64| phi.eval(z);
        let dx = (at(Complex64::new(h, 0.0)) - at(Complex64::new(-h, 0.0))) / (2.0 * h);
        let dy = (at(Complex64::new(0.0, h)) - at(Complex64::new(0.0, -h))) / (2.0 * h);
        prop_assert!(dx.re * dy.im - dx.im * dy.re > 0.0);
    }

    #[test]
    fn induced_map_inverse_cancels(u in positive_map(), mu in disc()) {
        let phi = induced_automorphism(&u).unwrap();
        let mu = PoincarePoint::new(mu * 0.9).unwrap();
        let back = phi.inverse().apply(phi.apply(mu)).value();
        prop_assert!((back - mu.value()).norm() <= 1e-9);
    }

    #[test]
    fn reference_change_rotates_dilatation(t in positive_map(), basis in nonzero_complex()) {
        let src = FramedLine::new(basis).unwrap();
        let reference = FramedLine::REFERENCE;
        let moved = dilatation_wrt_bases(&t, &src, &reference).unwrap().value();
        let base = dilatation_wrt_bases(&t, &reference, &reference).unwrap().value();
        prop_assert!((moved - basis.conj() / basis * base).norm() <= 1e-10);
    }

    #[test]
    fn form_qv_scales_inversely(basis in nonzero_complex(), a in nonzero_complex(), w in nonzero_complex()) {
        let u = FramedLine::new(basis).unwrap();
        let v = FramedLine::new(a * basis).unwrap();
        let want = u.form_qv(w) / a.norm_sqr();
        prop_assert!((v.form_qv(w) - want).abs() <= 1e-14 * want);
    }
}
