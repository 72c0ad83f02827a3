//! Randomized properties of the extremal functions and the averaging
//! operator.

use proptest::prelude::*;
use zeta_toolkit::explicit_formula::{m_t_apply, m_t_hat};
use zeta_toolkit::extremal::{eval_f, ApproxParams, Approximant};

fn pair() -> impl Strategy<Value = (f64, f64)> {
    (0.05f64..0.5, 0.1f64..6.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn minorant_below_and_majorant_above((a, lambda) in pair(), x in -200.0f64..200.0) {
        let p = ApproxParams::with_lambda(a, lambda).unwrap();
        let f = eval_f(a, x);
        let tol = 1e-12 * (f.abs() + 1.0 / (x * x + a * a));
        prop_assert!(Approximant::minorant(p).unwrap().eval(x) <= f + tol);
        prop_assert!(Approximant::majorant(p).unwrap().eval(x) >= f - tol);
    }

    #[test]
    fn approximants_are_even((a, lambda) in pair(), x in 0.0f64..50.0) {
        let p = ApproxParams::with_lambda(a, lambda).unwrap();
        for h in [Approximant::minorant(p).unwrap(), Approximant::majorant(p).unwrap()] {
            let (u, v) = (h.eval(x), h.eval(-x));
            prop_assert!((u - v).abs() <= 1e-13 * (1.0 + u.abs()));
        }
    }

    #[test]
    fn transforms_vanish_outside_the_band((a, lambda) in pair(), s in 1.0f64..3.0) {
        let p = ApproxParams::with_lambda(a, lambda).unwrap();
        let h = Approximant::majorant(p).unwrap();
        prop_assert_eq!(h.hat(s * p.delta), 0.0);
        prop_assert_eq!(m_t_hat(&h, 7.0, s * p.delta), 0.0);
    }

    #[test]
    fn averaging_at_the_origin((a, lambda) in pair(), t in 0.0f64..100.0) {
        let p = ApproxParams::with_lambda(a, lambda).unwrap();
        let h = Approximant::minorant(p).unwrap();
        let m = m_t_apply(&h, t, 0.0);
        let direct = h.eval(0.0) + 0.5 * (h.eval(t) + h.eval(-t));
        prop_assert!((m - direct).abs() <= 1e-12 * (1.0 + direct.abs()));
    }
}
