//! The target f_a(x) = (x²−a²)/(x²+a²)², its extremal bandlimited minorant
//! L and majorant U of exponential type 2πΔ, their coefficients, masses and
//! Fourier transforms.
//!
//! Fourier transforms use the convention ĥ(y) = ∫ h(x) e^{−2πixy} dx.

mod nodes;
mod verify;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::quad::Harmonic;
use crate::special::lambda0;

pub use nodes::{
    littmann_weight, nodes, nodes_for_tolerance, structure_function, weighted_node_sum, NodeKind,
    NodeSet, NodeTail,
};
pub use verify::{
    fourier_transform_quadrature, mass_quadrature, verify_extremal, GridSpec, ViolationReport,
};

/// The pair (a, Δ) and the derived λ = πaΔ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ApproxParams {
    pub a: f64,
    pub delta: f64,
    pub lambda: f64,
}

impl ApproxParams {
    pub fn new(a: f64, delta: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::domain(format!(
                "a must be finite and positive, got {a}"
            )));
        }
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::domain(format!(
                "delta must be finite and positive, got {delta}"
            )));
        }
        let lambda = PI * a * delta;
        if lambda <= 0.0 || !lambda.is_finite() {
            return Err(Error::domain(format!(
                "lambda = pi*a*delta = {lambda} is not positive"
            )));
        }
        Ok(Self { a, delta, lambda })
    }

    /// Parameters with a prescribed λ.
    pub fn with_lambda(a: f64, lambda: f64) -> Result<Self> {
        Self::new(a, lambda / (PI * a))
    }

    /// a = σ − ½ and πΔ = log log t.
    pub fn for_height(sigma: f64, log_t: f64) -> Result<Self> {
        if !(log_t > 1.0) {
            return Err(Error::range(format!("log t = {log_t} must exceed 1")));
        }
        Self::new(sigma - 0.5, log_t.ln() / PI)
    }
}

/// f_a(x).
pub fn eval_f(a: f64, x: f64) -> f64 {
    let x2 = x * x;
    let a2 = a * a;
    let d = x2 + a2;
    (x2 - a2) / (d * d)
}

/// f_a'(x) = 2x(3a² − x²)/(x²+a²)³.
pub fn eval_f_prime(a: f64, x: f64) -> f64 {
    let d = x * x + a * a;
    2.0 * x * (3.0 * a * a - x * x) / (d * d * d)
}

/// f̂_a(y) = −2π²|y|e^{−2πa|y|}.
pub fn f_hat(a: f64, y: f64) -> f64 {
    -2.0 * PI * PI * y.abs() * (-2.0 * PI * a * y.abs()).exp()
}

/// Transforms of 1/(x²+a²) and a²/(x²+a²)².
pub fn poisson_kernel_hats(a: f64, y: f64) -> (f64, f64) {
    let e = (-2.0 * PI * a * y.abs()).exp();
    (PI / a * e, PI * PI * (y.abs() + 1.0 / (2.0 * PI * a)) * e)
}

/// Terms built from e^{−2λ} so that no hyperbolic function overflows.
struct Hyperbolic {
    /// 1/sinh²λ
    inv_sinh2: f64,
    /// 1/cosh²λ
    inv_cosh2: f64,
    coth: f64,
    tanh: f64,
}

impl Hyperbolic {
    fn new(lambda: f64) -> Self {
        let u = (-2.0 * lambda).exp();
        let one_minus_u = -(-2.0 * lambda).exp_m1();
        Hyperbolic {
            inv_sinh2: 4.0 * u / (one_minus_u * one_minus_u),
            inv_cosh2: 4.0 * u / ((1.0 + u) * (1.0 + u)),
            coth: (1.0 + u) / one_minus_u,
            tanh: one_minus_u / (1.0 + u),
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "lambda must be positive and finite, got {lambda}"
        )))
    }
}

/// Coefficients (A, B) of the minorant.
#[allow(non_snake_case)]
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MinorantCoeffs {
    pub A: f64,
    pub B: f64,
}

impl MinorantCoeffs {
    pub fn new(lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        let h = Hyperbolic::new(lambda);
        let k = 2.0 * lambda * h.coth;
        Ok(Self {
            A: (k - 1.0) * h.inv_sinh2,
            B: (k + 1.0) * h.inv_sinh2,
        })
    }
}

pub fn minorant_coeffs(p: &ApproxParams) -> Result<MinorantCoeffs> {
    MinorantCoeffs::new(p.lambda)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MajorantBranch {
    AboveLambda0,
    BelowLambda0,
}

impl MajorantBranch {
    pub fn name(self) -> &'static str {
        match self {
            MajorantBranch::AboveLambda0 => "above_lambda0",
            MajorantBranch::BelowLambda0 => "below_lambda0",
        }
    }
}

/// Coefficients (C, D, E) of the majorant with the branch that produced them.
#[allow(non_snake_case)]
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MajorantCoeffs {
    pub C: f64,
    pub D: f64,
    pub E: f64,
    pub branch: MajorantBranch,
}

impl MajorantCoeffs {
    /// Branch selected by λ ≥ `lambda0`.
    pub fn new(lambda: f64, lambda0: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(if lambda >= lambda0 {
            Self::above(lambda)
        } else {
            Self::below(lambda)
        })
    }

    /// The formulas used for λ ≥ λ0, evaluated at any λ > 0.
    pub fn above(lambda: f64) -> Self {
        let h = Hyperbolic::new(lambda);
        let k = 2.0 * lambda * h.tanh;
        Self {
            C: (k - 1.0) * h.inv_cosh2,
            D: (k + 1.0) * h.inv_cosh2,
            E: 0.0,
            branch: MajorantBranch::AboveLambda0,
        }
    }

    /// The formulas used for λ < λ0, evaluated at any λ > 0.
    pub fn below(lambda: f64) -> Self {
        let th = lambda.tanh();
        let r = (2.0 * lambda + th) / (lambda.sinh() + lambda / lambda.cosh());
        Self {
            C: 0.0,
            D: 0.5 * r * r,
            E: (1.0 - 2.0 * lambda * th) / (2.0 * lambda * lambda + lambda * th),
            branch: MajorantBranch::BelowLambda0,
        }
    }
}

pub fn majorant_coeffs(p: &ApproxParams) -> Result<MajorantCoeffs> {
    MajorantCoeffs::new(p.lambda, lambda0())
}

/// ∫ L = −π²Δ/sinh²λ.
pub fn minorant_mass(p: &ApproxParams) -> f64 {
    -PI * PI * p.delta * Hyperbolic::new(p.lambda).inv_sinh2
}

/// ∫ U with the branch formula chosen by λ ≥ λ0.
pub fn majorant_mass(p: &ApproxParams) -> f64 {
    if p.lambda >= lambda0() {
        majorant_mass_above(p)
    } else {
        majorant_mass_below(p)
    }
}

/// π²Δ/cosh²λ.
pub fn majorant_mass_above(p: &ApproxParams) -> f64 {
    PI * PI * p.delta * Hyperbolic::new(p.lambda).inv_cosh2
}

/// (π²Δ/sinh²λ)·(D(2λ + sinh 2λ)/(4λ) − 1) with D from the λ < λ0 formulas.
pub fn majorant_mass_below(p: &ApproxParams) -> f64 {
    let l = p.lambda;
    let d = MajorantCoeffs::below(l).D;
    PI * PI
        * p.delta
        * Hyperbolic::new(l).inv_sinh2
        * (d * (2.0 * l + (2.0 * l).sinh()) / (4.0 * l) - 1.0)
}

/// Below this value of |z²+a²|/a² complex evaluation switches to Taylor jets
/// around ±ia.
const JET_ZONE: f64 = 1e-2;
const JET_ORDER: usize = 18;

/// Which one-sided approximation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Minorant,
    Majorant,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Minorant => "minorant",
            Side::Majorant => "majorant",
        }
    }
}

/// The minorant L_{a,Δ} or majorant U_{a,Δ} with its coefficients.
#[derive(Clone, Copy, Debug)]
pub enum Approximant {
    Minorant(ApproxParams, MinorantCoeffs),
    Majorant(ApproxParams, MajorantCoeffs),
}

impl Approximant {
    pub fn new(p: ApproxParams, side: Side) -> Result<Self> {
        Ok(match side {
            Side::Minorant => Approximant::Minorant(p, minorant_coeffs(&p)?),
            Side::Majorant => Approximant::Majorant(p, majorant_coeffs(&p)?),
        })
    }

    pub fn minorant(p: ApproxParams) -> Result<Self> {
        Self::new(p, Side::Minorant)
    }

    pub fn majorant(p: ApproxParams) -> Result<Self> {
        Self::new(p, Side::Majorant)
    }

    pub fn params(&self) -> ApproxParams {
        match self {
            Approximant::Minorant(p, _) | Approximant::Majorant(p, _) => *p,
        }
    }

    pub fn side(&self) -> Side {
        match self {
            Approximant::Minorant(..) => Side::Minorant,
            Approximant::Majorant(..) => Side::Majorant,
        }
    }

    /// Total mass from the closed forms.
    pub fn mass(&self) -> f64 {
        match self {
            Approximant::Minorant(p, _) => minorant_mass(p),
            Approximant::Majorant(p, _) => majorant_mass(p),
        }
    }

    /// The numerator z²−a² ± (...) as a jet in z.
    fn numerator_jet(&self, z: &Jet) -> Jet {
        let p = self.params();
        let a2 = Complex64::new(p.a * p.a, 0.0);
        let z2 = z.square();
        let theta = z.scale(Complex64::new(PI * p.delta, 0.0));
        let (s, c) = theta.sin_cos();
        match self {
            Approximant::Minorant(_, k) => {
                let poly = z2.scale(k.A.into()).add_const(a2 * k.B);
                z2.sub(&Jet::constant(a2, z.order()))
                    .sub(&poly.mul(&s.square()))
            }
            Approximant::Majorant(_, k) => {
                let poly = z2.scale(k.C.into()).add_const(a2 * k.D);
                let b = c.sub(&theta.mul(&s).scale(k.E.into()));
                z2.sub(&Jet::constant(a2, z.order()))
                    .add(&poly.mul(&b.square()))
            }
        }
    }

    fn denominator_jet(&self, z: &Jet) -> Jet {
        let a = self.params().a;
        z.square().add_const(Complex64::new(a * a, 0.0)).square()
    }

    /// Taylor jet of the approximant around `base` (not necessarily ±ia).
    pub fn jet(&self, base: Complex64, order: usize) -> Jet {
        let a = self.params().a;
        let z = Jet::variable(base, order + 2);
        let num = self.numerator_jet(&z);
        let den = self.denominator_jet(&z);
        let near = (base * base + a * a).norm() == 0.0;
        if near {
            num.shift_down(2).div(&den.shift_down(2))
        } else {
            let q = num.div(&den);
            Jet::from_coeffs(q.coeffs()[..=order].to_vec())
        }
    }

    /// Value at a real point.
    pub fn eval(&self, x: f64) -> f64 {
        let p = self.params();
        let x2 = x * x;
        let a2 = p.a * p.a;
        let d = x2 + a2;
        let theta = PI * p.delta * x;
        let (s, c) = theta.sin_cos();
        let num = match self {
            Approximant::Minorant(_, k) => x2 - a2 - (k.A * x2 + k.B * a2) * s * s,
            Approximant::Majorant(_, k) => {
                let b = c - k.E * theta * s;
                x2 - a2 + (k.C * x2 + k.D * a2) * b * b
            }
        };
        num / (d * d)
    }

    /// Value at a complex point, through the removable singularities at ±ia.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let p = self.params();
        let a2 = p.a * p.a;
        let z2 = z * z;
        let d = z2 + a2;
        if d.norm() < JET_ZONE * a2 {
            let base = Complex64::new(0.0, if z.im >= 0.0 { p.a } else { -p.a });
            let z0 = Jet::variable(base, JET_ORDER + 2);
            let q = self
                .numerator_jet(&z0)
                .shift_down(2)
                .div(&self.denominator_jet(&z0).shift_down(2));
            return q.eval(z - base);
        }
        let theta = z * (PI * p.delta);
        let (s, c) = (theta.sin(), theta.cos());
        let num = match self {
            Approximant::Minorant(_, k) => z2 - a2 - (z2 * k.A + k.B * a2) * s * s,
            Approximant::Majorant(_, k) => {
                let b = c - theta * s * k.E;
                z2 - a2 + (z2 * k.C + k.D * a2) * b * b
            }
        };
        num / (d * d)
    }

    /// First derivative at a real point.
    pub fn derivative(&self, x: f64) -> f64 {
        self.jet(Complex64::new(x, 0.0), 1).derivative(1).re
    }

    /// Fourier transform; zero outside [−Δ, Δ].
    pub fn hat(&self, y: f64) -> f64 {
        if y.abs() >= self.params().delta {
            return 0.0;
        }
        self.hat_formula(y)
    }

    /// The closed-form transform without the support cutoff. It vanishes
    /// identically for |y| ≥ Δ, which the tests confirm.
    pub fn hat_formula(&self, y: f64) -> f64 {
        let p = self.params();
        let a = p.a;
        let dl = p.delta;
        let decay = |v: f64| (-2.0 * PI * a * v.abs()).exp();
        match self {
            Approximant::Minorant(_, k) => {
                let g = |v: f64| {
                    PI * PI * ((k.A + k.B) / (2.0 * PI * a) + (k.B - k.A) * v.abs()) * decay(v)
                };
                f_hat(a, y) - 0.25 * (2.0 * g(y) - g(y - dl) - g(y + dl))
            }
            Approximant::Majorant(_, k) if k.E == 0.0 => {
                let g = |v: f64| {
                    PI * PI * ((k.C + k.D) / (2.0 * PI * a) + (k.D - k.C) * v.abs()) * decay(v)
                };
                f_hat(a, y) + 0.25 * (2.0 * g(y) + g(y - dl) + g(y + dl))
            }
            Approximant::Majorant(_, k) => {
                // C = 0 on this branch; expand (cos θ − Eθ sin θ)² into
                // cos² θ, −Eθ sin 2θ and E²θ² sin² θ and transform each.
                let m = |v: f64| poisson_kernel_hats(a, v).1;
                let q = |v: f64| decay(v) * (0.5 * PI * a - PI * PI * a * a * v.abs());
                let cos2 = 0.5 * m(y) + 0.25 * (m(y - dl) + m(y + dl));
                let cross = 0.5
                    * k.E
                    * PI.powi(3)
                    * dl
                    * a
                    * ((y - dl) * decay(y - dl) - (y + dl) * decay(y + dl));
                let sin2 = 0.5 * (k.E * PI * dl).powi(2) * (q(y) - 0.5 * (q(y - dl) + q(y + dl)));
                f_hat(a, y) + k.D * (cos2 + cross + sin2)
            }
        }
    }

    /// Constants (P, R) with |h(x)| ≤ (Px² + Ra²)/(x²+a²)² on ℝ.
    pub fn envelope_constants(&self) -> (f64, f64) {
        match self {
            Approximant::Minorant(_, k) => (1f64.max((1.0 - k.A).abs()), 1.0 + k.B),
            Approximant::Majorant(p, k) => (1.0 + k.C + k.D * (k.E * p.lambda).powi(2), 1.0 + k.D),
        }
    }

    /// The approximant split into a slowly varying mean and the coefficients
    /// of cos(2πΔx) and sin(2πΔx).
    pub fn harmonics(&self, x: f64) -> Harmonic {
        let p = self.params();
        let x2 = x * x;
        let a2 = p.a * p.a;
        let d = x2 + a2;
        let f = (x2 - a2) / (d * d);
        match self {
            Approximant::Minorant(_, k) => {
                let g = (k.A * x2 + k.B * a2) / (d * d);
                Harmonic {
                    mean: f - 0.5 * g,
                    cos: 0.5 * g,
                    sin: 0.0,
                }
            }
            Approximant::Majorant(_, k) => {
                let g = (k.C * x2 + k.D * a2) / (d * d);
                let et = k.E * PI * p.delta * x;
                Harmonic {
                    mean: f + 0.5 * g * (1.0 + et * et),
                    cos: 0.5 * g * (1.0 - et * et),
                    sin: -g * et,
                }
            }
        }
    }
}

/// An even test function for the explicit formula: real on ℝ, analytic in a
/// strip, with transform supported in [−Δ, Δ].
pub trait TestFunction: Sync {
    fn eval(&self, x: f64) -> f64;
    fn eval_complex(&self, z: Complex64) -> Complex64;
    fn hat(&self, y: f64) -> f64;
    /// Δ; the function has exponential type 2πΔ.
    fn bandwidth(&self) -> f64;
    /// An even bound |h(x)| ≤ envelope(x), decreasing for |x| ≥ `envelope_knee`.
    fn envelope(&self, x: f64) -> f64;
    fn envelope_knee(&self) -> f64;
    /// h(x) = mean + cos·cos(2πΔx) + sin·sin(2πΔx).
    fn harmonics(&self, x: f64) -> Harmonic;
    /// Σ_j r_j(x) for some splitting of the oscillating part into terms
    /// r_j(x)·cos(2πΔx − φ_j) whose amplitudes decrease for |x| past the knee.
    fn oscillation_amplitude(&self, x: f64) -> f64 {
        let c = self.harmonics(x);
        c.cos.hypot(c.sin)
    }
}

impl TestFunction for Approximant {
    fn eval(&self, x: f64) -> f64 {
        Approximant::eval(self, x)
    }

    fn eval_complex(&self, z: Complex64) -> Complex64 {
        Approximant::eval_complex(self, z)
    }

    fn hat(&self, y: f64) -> f64 {
        Approximant::hat(self, y)
    }

    fn bandwidth(&self) -> f64 {
        self.params().delta
    }

    fn envelope(&self, x: f64) -> f64 {
        let (pc, rc) = self.envelope_constants();
        let a2 = self.params().a.powi(2);
        let d = x * x + a2;
        (pc * x * x + rc * a2) / (d * d)
    }

    fn envelope_knee(&self) -> f64 {
        // (Px² + Ra²)/(x²+a²)² decreases once x² ≥ a²·max(0, (P − 2R)/P).
        self.params().a
    }

    fn harmonics(&self, x: f64) -> Harmonic {
        Approximant::harmonics(self, x)
    }
}

/// The function that vanishes identically.
#[derive(Clone, Copy, Debug)]
pub struct ZeroFunction {
    pub delta: f64,
}

impl TestFunction for ZeroFunction {
    fn eval(&self, _: f64) -> f64 {
        0.0
    }
    fn eval_complex(&self, _: Complex64) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn hat(&self, _: f64) -> f64 {
        0.0
    }
    fn bandwidth(&self) -> f64 {
        self.delta
    }
    fn envelope(&self, _: f64) -> f64 {
        0.0
    }
    fn envelope_knee(&self) -> f64 {
        0.0
    }
    fn harmonics(&self, _: f64) -> Harmonic {
        Harmonic::default()
    }
}
