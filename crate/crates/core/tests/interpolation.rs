//! The derivative bound from envelopes, checked on generated functions.

mod common;

use zeta_toolkit::interp::{
    averaged_bound, derivative_bound, leading_bound, optimal_parameters, optimal_parameters_at,
    zeta_envelopes, EnvelopeSet,
};

#[test]
fn trig_polynomials_respect_their_envelopes() {
    let mut rng = common::rng(11);
    for _ in 0..50 {
        let phi = common::TrigPoly::random(&mut rng);
        let (a0, b0, a2, b2) = phi.bounds();
        for i in 0..500 {
            let t = 0.37 * i as f64;
            assert!(phi.eval(t) <= a0 + 1e-12 && -phi.eval(t) <= b0 + 1e-12);
            let d2 = phi.second_derivative(t);
            assert!(d2 <= a2 + 1e-12 && -d2 <= b2 + 1e-12);
        }
    }
}

#[test]
fn derivative_bound_holds_for_generated_functions() {
    let mut rng = common::rng(12);
    for _ in 0..50 {
        let phi = common::TrigPoly::random(&mut rng);
        let (a0, b0, a2, b2) = phi.bounds();
        let env = EnvelopeSet::constant(a0, b0, a2, b2).unwrap();
        let t0 = env.threshold();
        let bound = derivative_bound(&env, t0 + 1.0).unwrap();
        let worst = (1..4000)
            .map(|i| phi.derivative(t0 + 0.01 * i as f64).abs())
            .fold(0.0, f64::max);
        assert!(worst <= bound, "{worst} > {bound}");
    }
}

#[test]
fn analytic_optimum_matches_grid_search() {
    let mut rng = common::rng(13);
    for _ in 0..50 {
        let (a0, b0, a2, b2) = common::TrigPoly::random(&mut rng).bounds();
        let (nu, a) = optimal_parameters_at(a0, b0, a2, b2);
        let best = averaged_bound(a0, b0, a2, b2, nu, a);
        assert!((best - leading_bound(a0, b0, a2, b2)).abs() <= 1e-12 * best);
        let (brute, bnu, ba) = common::brute_force_minimum(a0, b0, a2, b2);
        assert!(brute >= best * (1.0 - 1e-12));
        assert!(brute - best <= 1e-6 * best);
        assert!(
            (bnu - nu).abs() <= 1e-3 * nu && (ba - a).abs() <= 1e-3,
            "{bnu} {ba}"
        );
    }
}

#[test]
fn bound_is_refused_before_the_threshold() {
    let env = EnvelopeSet::constant(1.0, 1.0, 2.0, 3.0).unwrap();
    assert!(derivative_bound(&env, 0.5 * env.threshold()).is_err());
    assert!(optimal_parameters(&env, 1.0).is_ok());
}

#[test]
fn zeta_envelopes_are_positive_and_slowly_varying() {
    let env = zeta_envelopes(0.75, 1e6, 2000).unwrap();
    let (a0, b0, a2, b2) = env.values(1e5);
    assert!(a0 > 0.0 && b0 > 0.0 && a2 > 0.0 && b2 > 0.0);
    assert!(env.m0 < 1.0 && env.m2 < 1.0);
    assert!(derivative_bound(&env, 1e5).unwrap() > leading_bound(a0, b0, a2, b2));
}
