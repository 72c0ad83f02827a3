//! Grid checks of the one-sided inequalities and quadrature of Fourier
//! transforms over the whole real line.

use std::f64::consts::PI;

use serde::Serialize;

use super::{eval_f, Approximant, TestFunction};
use crate::error::{Error, Result};
use crate::exec::{argmax_range, Execution};
use crate::quad::{integrate_panels, integrate_tail, uniform_edges, Estimate, Tolerance};

/// A uniform grid of `points` values on [−half_width, half_width]. A single
/// point means x = 0.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GridSpec {
    pub half_width: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn point(&self, i: usize) -> f64 {
        if self.points <= 1 {
            0.0
        } else {
            -self.half_width + 2.0 * self.half_width * i as f64 / (self.points - 1) as f64
        }
    }
}

/// Largest one-sided violation over a grid, in units of the local scale
/// |f_a(x)| + (Px² + Ra²)/(x²+a²)² (the magnitudes of the two terms being
/// compared). A positive value means the inequality failed.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ViolationReport {
    pub max_violation: f64,
    pub argmax: f64,
    /// Unnormalized L − f_a or f_a − U at `argmax`.
    pub raw_difference: f64,
    pub points: usize,
}

pub fn verify_extremal(exec: Execution, h: &Approximant, grid: GridSpec) -> ViolationReport {
    let p = h.params();
    let (pc, rc) = h.envelope_constants();
    let a2 = p.a * p.a;
    let sign = match h {
        Approximant::Minorant(..) => 1.0,
        Approximant::Majorant(..) => -1.0,
    };
    let diff = |x: f64| sign * (h.eval(x) - eval_f(p.a, x));
    let scale = |x: f64| {
        let d = x * x + a2;
        eval_f(p.a, x).abs() + (pc * x * x + rc * a2) / (d * d)
    };
    let n = grid.points.max(1);
    let (i, v) = argmax_range(exec, n, |i| {
        let x = grid.point(i);
        diff(x) / scale(x)
    })
    .expect("grid is nonempty");
    let x = grid.point(i);
    ViolationReport {
        max_violation: v,
        argmax: x,
        raw_difference: diff(x),
        points: n,
    }
}

/// Largest number of panels a whole-line quadrature may use.
const MAX_PANELS: f64 = 4e6;

/// ∫_ℝ h(x) cos(2πxy) dx for an even test function, i.e. ĥ(y).
///
/// The integral is split at W into panels of half the shortest period and a
/// tail. On [W, ∞) the integrand is written as a sum of harmonics; parts with
/// nonzero frequency ν are bounded by 2|coefficient(W)|/ν, resonant parts are
/// integrated numerically. W is enlarged until the oscillatory bound is below
/// a quarter of `tol`.
pub fn fourier_transform_quadrature<H: TestFunction + ?Sized>(
    exec: Execution,
    h: &H,
    y: f64,
    tol: f64,
) -> Result<Estimate> {
    let omega = 2.0 * PI * h.bandwidth();
    let nu = 2.0 * PI * y.abs();
    let knee = h.envelope_knee();
    let resonant = |f: f64| f <= 1e-9 * (omega + nu);

    // (frequency, cos coefficient, sin coefficient) of h(x)cos(νx) beyond W.
    let parts = |x: f64| {
        let c = h.harmonics(x);
        let d = omega - nu;
        [
            (nu, c.mean, 0.0),
            (d.abs(), 0.5 * c.cos, 0.5 * c.sin * d.signum()),
            (omega + nu, 0.5 * c.cos, 0.5 * c.sin),
        ]
    };
    let oscillation_bound = |w: f64| -> f64 {
        parts(w)
            .iter()
            .filter(|(f, _, _)| !resonant(*f))
            .map(|(f, cc, cs)| 2.0 * (cc.abs() + cs.abs()) / f)
            .sum()
    };

    let fastest = omega + nu;
    let panel = if fastest > 0.0 { PI / fastest } else { 1.0 };
    let mut w = (50.0 * knee).max(50.0 * panel).max(1.0);
    let target = 0.25 * tol;
    for _ in 0..8 {
        let b = oscillation_bound(w);
        if b <= target {
            break;
        }
        w *= (b / target).sqrt().max(1.5);
    }
    let bound = oscillation_bound(w);
    if bound > target || w / panel > MAX_PANELS {
        return Err(Error::Tail {
            bound,
            tolerance: target,
        });
    }

    let panel_tol = Tolerance::new(0.25 * tol, 1e-13);
    let edges = uniform_edges(0.0, w, panel);
    let body = integrate_panels(
        exec,
        &|x: f64| h.eval(x) * (nu * x).cos(),
        &edges,
        panel_tol,
    )?;

    let mut tail = Estimate {
        error: bound,
        ..Estimate::default()
    };
    for idx in 0..3 {
        let f = parts(w)[idx].0;
        if resonant(f) {
            let t = integrate_tail(
                &|x: f64| parts(x)[idx].1,
                w,
                Tolerance::new(0.125 * tol, 1e-13),
            )?;
            tail = tail + t;
        }
    }
    Ok((body + tail) * 2.0)
}

/// ∫_ℝ h by quadrature.
pub fn mass_quadrature<H: TestFunction + ?Sized>(
    exec: Execution,
    h: &H,
    tol: f64,
) -> Result<Estimate> {
    fourier_transform_quadrature(exec, h, 0.0, tol)
}

#[cfg(test)]
mod tests {
    use super::super::{
        f_hat, majorant_mass, minorant_mass, poisson_kernel_hats, ApproxParams, Harmonic,
    };
    use super::*;
    use num_complex::Complex64;

    /// A rational test function with a prescribed harmonic split, used to
    /// check the transform quadrature against closed forms.
    struct Rational {
        a: f64,
        kind: u8,
    }

    impl TestFunction for Rational {
        fn eval(&self, x: f64) -> f64 {
            let d = x * x + self.a * self.a;
            match self.kind {
                0 => eval_f(self.a, x),
                1 => 1.0 / d,
                _ => self.a * self.a / (d * d),
            }
        }
        fn eval_complex(&self, _: Complex64) -> Complex64 {
            unimplemented!()
        }
        fn hat(&self, _: f64) -> f64 {
            unimplemented!()
        }
        fn bandwidth(&self) -> f64 {
            0.0
        }
        fn envelope(&self, x: f64) -> f64 {
            self.eval(x).abs()
        }
        fn envelope_knee(&self) -> f64 {
            self.a
        }
        fn harmonics(&self, x: f64) -> Harmonic {
            Harmonic {
                mean: self.eval(x),
                ..Harmonic::default()
            }
        }
    }

    #[test]
    fn target_transform_by_quadrature() {
        let h = Rational { a: 0.5, kind: 0 };
        let e = fourier_transform_quadrature(Execution::Parallel, &h, 0.3, 1e-10).unwrap();
        assert!((e.value - f_hat(0.5, 0.3)).abs() < 1e-9, "{e:?}");
    }

    #[test]
    fn kernel_transforms_by_quadrature() {
        let (p, m) = poisson_kernel_hats(0.7, 0.4);
        let e1 = fourier_transform_quadrature(
            Execution::Parallel,
            &Rational { a: 0.7, kind: 1 },
            0.4,
            1e-10,
        )
        .unwrap();
        let e2 = fourier_transform_quadrature(
            Execution::Parallel,
            &Rational { a: 0.7, kind: 2 },
            0.4,
            1e-10,
        )
        .unwrap();
        assert!((e1.value - p).abs() < 1e-9);
        assert!((e2.value - m).abs() < 1e-9);
    }

    #[test]
    fn masses_by_quadrature() {
        for (a, l) in [(0.25, 0.5), (0.4, 1.0)] {
            let p = ApproxParams::with_lambda(a, l).unwrap();
            let lo = Approximant::minorant(p).unwrap();
            let hi = Approximant::majorant(p).unwrap();
            let ml = minorant_mass(&p);
            let mu = majorant_mass(&p);
            let el = mass_quadrature(Execution::Parallel, &lo, 1e-10 * ml.abs()).unwrap();
            let eu = mass_quadrature(Execution::Parallel, &hi, 1e-10 * mu).unwrap();
            assert!((el.value - ml).abs() < 1e-8 * ml.abs(), "{el:?} vs {ml}");
            assert!((eu.value - mu).abs() < 1e-8 * mu, "{eu:?} vs {mu}");
        }
    }

    #[test]
    fn majorant_transform_with_structure_zeros() {
        let p = ApproxParams::with_lambda(0.3, 0.5).unwrap();
        let hi = Approximant::majorant(p).unwrap();
        for y in [0.1, 0.3, 0.9 * p.delta, 1.2 * p.delta] {
            let e = fourier_transform_quadrature(Execution::Parallel, &hi, y, 1e-9).unwrap();
            assert!(
                (e.value - hi.hat(y)).abs() < 1e-8,
                "y = {y}: {e:?} vs {}",
                hi.hat(y)
            );
        }
    }

    #[test]
    fn grid_checks() {
        let p = ApproxParams::with_lambda(0.25, 1.0).unwrap();
        let lo = Approximant::minorant(p).unwrap();
        let r = verify_extremal(
            Execution::Parallel,
            &lo,
            GridSpec {
                half_width: 20.0 / p.a,
                points: 20_001,
            },
        );
        assert!(r.max_violation <= 1e-12, "{r:?}");
        let p = ApproxParams::with_lambda(0.25, 0.4).unwrap();
        let hi = Approximant::majorant(p).unwrap();
        let r = verify_extremal(
            Execution::Parallel,
            &hi,
            GridSpec {
                half_width: 20.0 / p.a,
                points: 20_001,
            },
        );
        assert!(r.max_violation <= 1e-12, "{r:?}");
        let one = verify_extremal(
            Execution::Sequential,
            &lo,
            GridSpec {
                half_width: 5.0,
                points: 1,
            },
        );
        assert_eq!(one.argmax, 0.0);
        assert!(one.raw_difference <= 0.0);
    }
}
