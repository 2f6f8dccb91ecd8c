use approx::assert_relative_eq;
use proptest::prelude::*;

use kerr_wigner::geometry::{horizons, inverse_metric, EQUATOR};
use kerr_wigner::published;
use kerr_wigner::qubit::QubitState;
use kerr_wigner::{
    apply_rotation, bell_chsh, circular_orbit_exists, circular_velocity, connection_forms, metric_tensor,
    orthogonal_error, radial_fall_velocity, rotation_operator, tetrad, GravitationalSource, Lowering, OrbitSense,
    Pipeline,
};
use num_complex::Complex64;

fn spin() -> impl Strategy<Value = f64> {
    -0.5..=0.5_f64
}

fn sense() -> impl Strategy<Value = OrbitSense> {
    prop_oneof![Just(OrbitSense::CoRotating), Just(OrbitSense::CounterRotating)]
}

fn state() -> impl Strategy<Value = QubitState> {
    (-1.0..1.0_f64, -1.0..1.0_f64, -1.0..1.0_f64, -1.0..1.0_f64)
        .prop_filter("nonzero", |(a, b, c, d)| a * a + b * b + c * c + d * d > 1e-6)
        .prop_map(|(a, b, c, d)| QubitState::normalized(Complex64::new(a, b), Complex64::new(c, d)).unwrap())
}

proptest! {
    #[test]
    fn metric_is_symmetric_and_inverts(chi in spin(), x in 0.01..0.99_f64) {
        let s = GravitationalSource::unit(chi).unwrap();
        let g = metric_tensor(&s, s.radius(x), EQUATOR).unwrap();
        prop_assert_eq!(g, g.transpose());
        let id = g * inverse_metric(&s, s.radius(x), EQUATOR).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { 1.0 } else { 0.0 };
                prop_assert!((id[(i, j)] - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn tetrad_is_orthonormal(chi in spin(), x in 0.001..0.999_f64) {
        let s = GravitationalSource::unit(chi).unwrap();
        let r = s.radius(x);
        let e = tetrad(&s, r, EQUATOR).unwrap();
        prop_assert!(e.orthonormality_residual(&metric_tensor(&s, r, EQUATOR).unwrap()) < 1e-12);
        prop_assert!(e.inverse_residual() < 1e-12);
    }

    #[test]
    fn connection_forms_are_antisymmetric(chi in spin(), x in 0.01..0.99_f64) {
        let s = GravitationalSource::unit(chi).unwrap();
        prop_assert!(connection_forms(&s, s.radius(x)).unwrap().antisymmetry_residual() < 1e-12);
    }

    #[test]
    fn mirrored_spin_flips_odd_components(chi in spin(), x in 0.01..0.99_f64) {
        let s = GravitationalSource::unit(chi).unwrap();
        let r = s.radius(x);
        let p = connection_forms(&s, r).unwrap();
        let m = connection_forms(&s.mirrored(), r).unwrap();
        // t01, θ12 even; φ01, r03, t13, φ13 odd
        prop_assert_eq!(p.t01(), m.t01());
        prop_assert_eq!(p.theta12(), m.theta12());
        prop_assert!((p.r03() + m.r03()).abs() <= 1e-15 * p.r03().abs().max(1.0));
        prop_assert!((p.t13() + m.t13()).abs() <= 1e-15 * p.t13().abs().max(1.0));
    }

    #[test]
    fn horizons_are_real_and_ordered(chi in spin(), theta in 0.0..std::f64::consts::PI) {
        let h = horizons(&GravitationalSource::unit(chi).unwrap(), theta);
        prop_assert!(h.r_minus <= h.r_plus);
        prop_assert!(h.s_minus <= h.r_minus + 1e-15);
        prop_assert!(h.r_plus <= h.s_plus + 1e-15);
    }

    #[test]
    fn radial_fall_is_normalized(chi in spin(), x in 0.001..0.999_f64) {
        let s = GravitationalSource::unit(chi).unwrap();
        let u = radial_fall_velocity(&s, s.radius(x)).unwrap();
        prop_assert!((u.normalization(&s).unwrap() + 1.0).abs() < 1e-12);
        prop_assert!(u.u_r() < 0.0);
    }

    #[test]
    fn circular_orbits_are_normalized(chi in spin(), x in 0.001..0.66_f64, sense in sense()) {
        let s = GravitationalSource::unit(chi).unwrap();
        let r = s.radius(x);
        prop_assume!(circular_orbit_exists(&s, r, sense));
        let u = circular_velocity(&s, r, sense).unwrap();
        // close to the light ring the charges diverge; compare relative to u^t²
        let scale = u.u_t() * u.u_t();
        prop_assert!((u.normalization(&s).unwrap() + 1.0).abs() < 1e-12 * scale.max(1.0));
        prop_assert_eq!(u.u_phi().signum(), sense.sign() * 1.0);
    }

    #[test]
    fn lorentz_generator_is_antisymmetric(chi in spin(), x in 0.01..0.99_f64) {
        let s = GravitationalSource::unit(chi).unwrap();
        let r = s.radius(x);
        let local = Pipeline::default().at(&s, &radial_fall_velocity(&s, r).unwrap()).unwrap();
        prop_assert!(local.lorentz.antisymmetry_residual() < 1e-12 * local.lorentz.lambda.amax().max(1.0));
    }

    #[test]
    fn metric_lowering_gives_spatial_rotation(chi in spin(), x in 0.01..0.6_f64, sense in sense()) {
        let s = GravitationalSource::unit(chi).unwrap();
        let r = s.radius(x);
        prop_assume!(circular_orbit_exists(&s, r, sense));
        let metric = Pipeline::new(Lowering::Metric);
        let u = circular_velocity(&s, r, sense).unwrap();
        let w = metric.at(&s, &u).unwrap().wigner;
        prop_assert!(w.spatial_antisymmetry_residual() < 1e-10 * w.theta.amax().max(1.0));
    }

    #[test]
    fn pipeline_matches_closed_forms(chi in spin(), x in 0.01..0.99_f64) {
        let s = GravitationalSource::unit(chi).unwrap();
        let r = s.radius(x);
        let computed = Pipeline::default().radial_theta13(&s, r).unwrap();
        let closed = published::radial_theta13(&s, r).unwrap();
        prop_assert!((computed - closed).abs() <= 1e-9 * closed.abs().max(1e-6));
    }

    #[test]
    fn circular_pipeline_matches_closed_forms(chi in spin(), x in 0.01..0.66_f64, sense in sense()) {
        let s = GravitationalSource::unit(chi).unwrap();
        let r = s.radius(x);
        prop_assume!(circular_orbit_exists(&s, r, sense));
        let computed = Pipeline::default().circular_theta13(&s, r, sense).unwrap();
        let closed = published::circular_theta13(&s, r, sense).unwrap();
        prop_assert!((computed - closed).abs() <= 1e-8 * closed.abs().max(1e-6));
    }

    #[test]
    fn rotations_are_unitary(omega in -50.0..50.0_f64) {
        let d = rotation_operator(omega);
        prop_assert!(d.unitarity_residual() < 1e-12);
        prop_assert!((d.determinant().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotations_compose(psi in state(), a in -10.0..10.0_f64, b in -10.0..10.0_f64) {
        let twice = apply_rotation(&apply_rotation(&psi, a).unwrap(), b).unwrap();
        let once = apply_rotation(&psi, a + b).unwrap();
        prop_assert!((twice.alpha() - once.alpha()).norm() < 1e-12);
        prop_assert!((twice.beta() - once.beta()).norm() < 1e-12);
        prop_assert!((twice.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn error_is_a_probability(psi in state(), omega in -20.0..20.0_f64) {
        let eps = orthogonal_error(&psi, omega);
        prop_assert!((0.0..=1.0).contains(&eps));
    }

    #[test]
    fn real_states_follow_half_angle(angle in 0.0..std::f64::consts::TAU, omega in -20.0..20.0_f64) {
        let psi = QubitState::real(angle.cos(), angle.sin()).unwrap();
        let eps = orthogonal_error(&psi, omega);
        prop_assert!((eps - (omega / 2.0).sin().powi(2)).abs() < 1e-12);
        prop_assert!((eps - orthogonal_error(&psi, -omega)).abs() < 1e-12);
    }

    #[test]
    fn chsh_is_bounded_and_periodic(omega in -20.0..20.0_f64) {
        let v = bell_chsh(omega);
        prop_assert!((0.0..=2.0 * std::f64::consts::SQRT_2 + 1e-15).contains(&v));
        assert_relative_eq!(v, bell_chsh(omega + std::f64::consts::PI), epsilon = 1e-12);
    }
}
