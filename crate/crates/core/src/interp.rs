//! Bounding φ' from two-sided bounds on φ and φ'', the constants B_σ and
//! C_σ, and closed-form evaluators for the main terms of the bounds on
//! ζ'/ζ(σ + it) and Re(ζ'/ζ)'(σ + it).
//!
//! If −β0 ≤ φ ≤ α0 and −β2 ≤ φ'' ≤ α2 on (t0, ∞), averaging the mean value
//! theorem over h ∈ [−ν(1−A), νA] gives
//!
//!   φ'(t) ≤ (α0+β0)/ν + ν(A²α2 + (1−A)²β2)/2 + M0 + N0 + ν²(M2+N2)/3,
//!
//! and the optimal ν, A turn the first two terms into
//! √(2α2β2(α0+β0)/(α2+β2)).
//!
//! Large heights are handled in log space: ℓ_{n,σ}(t) = (log t)^{2−2σ}
//! (log log t)^{−n} is carried as its logarithm.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{lambda0, ZetaConfig};

/// Default c in the admissible ranges.
pub const DEFAULT_RANGE_C: f64 = 0.01;

/// −σ² + 5σ − 2.
pub fn q5(s: f64) -> f64 {
    -s * s + 5.0 * s - 2.0
}

/// −σ² + 3σ − 1.
pub fn q3(s: f64) -> f64 {
    -s * s + 3.0 * s - 1.0
}

/// −σ² + σ + 1.
pub fn q1(s: f64) -> f64 {
    -s * s + s + 1.0
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma > 0.5 && sigma < 1.0) {
        return Err(Error::domain(format!(
            "sigma = {sigma} must lie in (1/2, 1)"
        )));
    }
    debug_assert!(q5(sigma) > 0.0 && q3(sigma) > 0.0 && q1(sigma) > 0.0);
    Ok(())
}

/// C_σ = √(2(−σ²+5σ−2)(−σ²+3σ−1)(−σ²+σ+1)/(σ(2−σ))).
pub fn c_sigma(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok((2.0 * q5(sigma) * q3(sigma) * q1(sigma) / (sigma * (2.0 - sigma))).sqrt())
}

/// B_σ = √((3σ⁴−17σ³+19σ²+4σ−4)(−σ²+3σ−1)/(σ(2−σ))).
pub fn b_sigma(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    let s = sigma;
    let quartic = (((3.0 * s - 17.0) * s + 19.0) * s + 4.0) * s - 4.0;
    Ok((quartic * q3(s) / (s * (2.0 - s))).sqrt())
}

/// (−σ²+3σ−1)/(σ(1−σ)), the coefficient of (log t)^{2−2σ} in the bound on
/// |Re ζ'/ζ|.
pub fn realpart_coeff(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(q3(sigma) / (sigma * (1.0 - sigma)))
}

/// (−2σ²+2σ+2)/(σ(1−σ)), the coefficient of the upper bound on
/// Re(ζ'/ζ)'.
pub fn second_derivative_upper_coeff(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(2.0 * q1(sigma) / (sigma * (1.0 - sigma)))
}

/// (−2σ²+6σ−2)/(σ(1−σ)), the coefficient of the lower bound on
/// Re(ζ'/ζ)'.
pub fn second_derivative_lower_coeff(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(2.0 * q3(sigma) / (sigma * (1.0 - sigma)))
}

/// (−σ²+5σ−2)/(2σ(1−σ)), the coefficient of the bounds on ±log|ζ|.
pub fn log_modulus_coeff(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(q5(sigma) / (2.0 * sigma * (1.0 - sigma)))
}

/// log ℓ_{n,σ}(t) = (2−2σ) log log t − n log log log t. Needs log log t > 0.
pub fn log_ell(n: f64, sigma: f64, log_t: f64) -> Result<f64> {
    let ll = log_t.ln();
    if !(ll > 0.0) {
        return Err(Error::range(format!(
            "log log t = {ll} must be positive (t > e)"
        )));
    }
    Ok((2.0 - 2.0 * sigma) * ll - n * ll.ln())
}

/// ℓ_{n,σ}(t) = (log t)^{2−2σ}(log log t)^{−n}.
pub fn ell(n: f64, sigma: f64, log_t: f64) -> Result<f64> {
    Ok(log_ell(n, sigma, log_t)?.exp())
}

/// √(2α2β2(α0+β0)/(α2+β2)).
pub fn leading_bound(alpha0: f64, beta0: f64, alpha2: f64, beta2: f64) -> f64 {
    (2.0 * alpha2 * beta2 * (alpha0 + beta0) / (alpha2 + beta2)).sqrt()
}

/// (α0+β0)/ν + ν(A²α2 + (1−A)²β2)/2, the bound before optimizing ν and A.
pub fn averaged_bound(alpha0: f64, beta0: f64, alpha2: f64, beta2: f64, nu: f64, a: f64) -> f64 {
    (alpha0 + beta0) / nu + 0.5 * nu * (a * a * alpha2 + (1.0 - a) * (1.0 - a) * beta2)
}

/// ν = √(2(α2+β2)(α0+β0)/(α2β2)) and A = β2/(α2+β2).
pub fn optimal_parameters_at(alpha0: f64, beta0: f64, alpha2: f64, beta2: f64) -> (f64, f64) {
    let nu = (2.0 * (alpha2 + beta2) * (alpha0 + beta0) / (alpha2 * beta2)).sqrt();
    (nu, beta2 / (alpha2 + beta2))
}

/// 2(α2+β2)(α0+β0)/(3α2β2).
pub fn l_ratio(alpha0: f64, beta0: f64, alpha2: f64, beta2: f64) -> f64 {
    2.0 * (alpha2 + beta2) * (alpha0 + beta0) / (3.0 * alpha2 * beta2)
}

pub type Envelope = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// Bounds −β0 ≤ φ ≤ α0 and −β2 ≤ φ'' ≤ α2 on (t0, ∞), with the sup
/// constants M_i = sup|α_i'|, N_i = sup|β_i'| and
/// L = sup 2(α2+β2)(α0+β0)/(3α2β2).
pub struct EnvelopeSet {
    pub alpha0: Envelope,
    pub beta0: Envelope,
    pub alpha2: Envelope,
    pub beta2: Envelope,
    pub t0: f64,
    pub m0: f64,
    pub n0: f64,
    pub m2: f64,
    pub n2: f64,
    pub l: f64,
}

impl std::fmt::Debug for EnvelopeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EnvelopeSet")
            .field("t0", &self.t0)
            .field("m0", &self.m0)
            .field("n0", &self.n0)
            .field("m2", &self.m2)
            .field("n2", &self.n2)
            .field("l", &self.l)
            .finish_non_exhaustive()
    }
}

/// Margin applied to grid estimates of the sup constants.
pub const SUP_MARGIN: f64 = 1.1;

impl EnvelopeSet {
    /// Constant envelopes; all derivative constants vanish and L is exact.
    pub fn constant(alpha0: f64, beta0: f64, alpha2: f64, beta2: f64) -> Result<Self> {
        for v in [alpha0, beta0, alpha2, beta2] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!(
                    "envelope value {v} must be positive"
                )));
            }
        }
        Ok(EnvelopeSet {
            alpha0: Box::new(move |_| alpha0),
            beta0: Box::new(move |_| beta0),
            alpha2: Box::new(move |_| alpha2),
            beta2: Box::new(move |_| beta2),
            t0: 0.0,
            m0: 0.0,
            n0: 0.0,
            m2: 0.0,
            n2: 0.0,
            l: l_ratio(alpha0, beta0, alpha2, beta2),
        })
    }

    /// Sup constants estimated on `points` uniform points of (t0, t_max]
    /// (derivatives by central differences) and enlarged by [`SUP_MARGIN`].
    /// This is an estimate, not a proof: features between grid points or
    /// beyond t_max are missed.
    pub fn estimate(
        alpha0: Envelope,
        beta0: Envelope,
        alpha2: Envelope,
        beta2: Envelope,
        t0: f64,
        t_max: f64,
        points: usize,
    ) -> Result<Self> {
        if !(t_max > t0) || points < 2 {
            return Err(Error::domain("need t_max > t0 and at least two points"));
        }
        let step = (t_max - t0) / points as f64;
        let hd = 1e-4 * step;
        let deriv = |f: &Envelope, t: f64| ((f(t + hd) - f(t - hd)) / (2.0 * hd)).abs();
        let (mut m0, mut n0, mut m2, mut n2, mut l) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for i in 1..=points {
            let t = t0 + step * i as f64;
            let (a0, b0, a2, b2) = (alpha0(t), beta0(t), alpha2(t), beta2(t));
            if !(a0 > 0.0 && b0 > 0.0 && a2 > 0.0 && b2 > 0.0) {
                return Err(Error::domain(format!(
                    "envelopes must be positive; at t = {t} got ({a0}, {b0}, {a2}, {b2})"
                )));
            }
            l = l.max(l_ratio(a0, b0, a2, b2));
            m0 = m0.max(deriv(&alpha0, t));
            n0 = n0.max(deriv(&beta0, t));
            m2 = m2.max(deriv(&alpha2, t));
            n2 = n2.max(deriv(&beta2, t));
        }
        Ok(EnvelopeSet {
            alpha0,
            beta0,
            alpha2,
            beta2,
            t0,
            m0: m0 * SUP_MARGIN,
            n0: n0 * SUP_MARGIN,
            m2: m2 * SUP_MARGIN,
            n2: n2 * SUP_MARGIN,
            l: l * SUP_MARGIN,
        })
    }

    pub fn values(&self, t: f64) -> (f64, f64, f64, f64) {
        (
            (self.alpha0)(t),
            (self.beta0)(t),
            (self.alpha2)(t),
            (self.beta2)(t),
        )
    }

    /// t0 + √(3L); the bound holds beyond this point.
    pub fn threshold(&self) -> f64 {
        self.t0 + (3.0 * self.l).sqrt()
    }

    fn check(&self, t: f64) -> Result<()> {
        if !(t > self.threshold()) {
            return Err(Error::range(format!(
                "t = {t} must exceed t0 + sqrt(3L) = {}",
                self.threshold()
            )));
        }
        Ok(())
    }
}

/// √(2α2β2(α0+β0)/(α2+β2)) + M0 + N0 + (M2+N2)L, valid for
/// t > t0 + √(3L).
pub fn derivative_bound(env: &EnvelopeSet, t: f64) -> Result<f64> {
    env.check(t)?;
    let (a0, b0, a2, b2) = env.values(t);
    Ok(leading_bound(a0, b0, a2, b2) + env.m0 + env.n0 + (env.m2 + env.n2) * env.l)
}

/// The ν and A that minimize the averaged bound at t.
pub fn optimal_parameters(env: &EnvelopeSet, t: f64) -> Result<(f64, f64)> {
    if !(t > env.t0) {
        return Err(Error::range(format!("t = {t} must exceed t0 = {}", env.t0)));
    }
    let (a0, b0, a2, b2) = env.values(t);
    Ok(optimal_parameters_at(a0, b0, a2, b2))
}

/// Envelopes for φ(t) = −log|ζ(σ + it)| made of the main terms only:
/// α2 and β2 from the bounds on Re(ζ'/ζ)', α0 = β0 from the bounds on
/// log|ζ|. Defined for log log t > 1.
pub fn zeta_envelopes(sigma: f64, t_max: f64, points: usize) -> Result<EnvelopeSet> {
    let up = second_derivative_upper_coeff(sigma)?;
    let lo = second_derivative_lower_coeff(sigma)?;
    let m = log_modulus_coeff(sigma)?;
    let l = move |n: f64| move |t: f64| ell(n, sigma, t.ln()).unwrap_or(f64::NAN);
    let t0 = std::f64::consts::E.exp();
    EnvelopeSet::estimate(
        Box::new(move |t| m * l(1.0)(t)),
        Box::new(move |t| m * l(1.0)(t)),
        Box::new(move |t| up * l(-1.0)(t)),
        Box::new(move |t| lo * l(-1.0)(t)),
        t0,
        t_max,
        points,
    )
}

/// The coefficient of (log t)^{2−2σ} in the leading bound built from the
/// zeta envelopes, computed in log space at height log t. It equals
/// C_σ/(σ(1−σ)) for every t.
pub fn zeta_envelope_coefficient(sigma: f64, log_t: f64) -> Result<f64> {
    let up = second_derivative_upper_coeff(sigma)?;
    let lo = second_derivative_lower_coeff(sigma)?;
    let m = log_modulus_coeff(sigma)?;
    let l_m1 = log_ell(-1.0, sigma, log_t)?;
    let l_p1 = log_ell(1.0, sigma, log_t)?;
    let l_0 = log_ell(0.0, sigma, log_t)?;
    // log of √(2α2β2(α0+β0)/(α2+β2)) with α2 = up·ℓ_{−1}, β2 = lo·ℓ_{−1},
    // α0 = β0 = m·ℓ_1; the ℓ factors are kept as logarithms.
    let log_lead =
        0.5 * (2f64.ln() + up.ln() + lo.ln() + (2.0 * m).ln() - (up + lo).ln() + l_m1 + l_p1);
    Ok((log_lead - l_0).exp())
}

/// Which bound a [`BoundReport`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// |ζ'/ζ(σ+it)| ≤ B_σ/(σ(1−σ))·(log t)^{2−2σ}.
    Modulus,
    /// |Im ζ'/ζ(σ+it)| ≤ C_σ/(σ(1−σ))·(log t)^{2−2σ}.
    Imaginary,
    /// |Re ζ'/ζ(σ+it)| ≤ (−σ²+3σ−1)/(σ(1−σ))·(log t)^{2−2σ}.
    RealPart,
    /// Re(ζ'/ζ)' ≤ (−2σ²+2σ+2)/(σ(1−σ))·log log t·(log t)^{2−2σ}.
    SecondDerivativeUpper,
    /// Re(ζ'/ζ)' ≥ −(−2σ²+6σ−2)/(σ(1−σ))·log log t·(log t)^{2−2σ}.
    SecondDerivativeLower,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Modulus => "modulus",
            BoundKind::Imaginary => "imaginary",
            BoundKind::RealPart => "real_part",
            BoundKind::SecondDerivativeUpper => "second_derivative_upper",
            BoundKind::SecondDerivativeLower => "second_derivative_lower",
        }
    }

    pub const ALL: [BoundKind; 5] = [
        BoundKind::Modulus,
        BoundKind::Imaginary,
        BoundKind::RealPart,
        BoundKind::SecondDerivativeUpper,
        BoundKind::SecondDerivativeLower,
    ];
}

/// A main term and the unscaled shape of its error term. The error term's
/// constant is unknown and is never applied.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub sigma: f64,
    pub log_t: f64,
    /// Signed main term; negative for the lower bound on Re(ζ'/ζ)'.
    pub main_value: f64,
    /// log |main_value|.
    pub log_main_value: f64,
    /// main_value = ±main_coefficient·ℓ_{n,σ}(t), with n = 0 for the bounds
    /// on ζ'/ζ and n = −1 for those on Re(ζ'/ζ)'.
    pub main_coefficient: f64,
    /// ℓ_{n+1,σ}(t)/((σ−½)(1−σ)²).
    pub error_shape_value: f64,
    pub log_error_shape: f64,
    pub range_ok: bool,
    /// The first violated range inequality, if any.
    pub range_violation: Option<String>,
}

impl BoundReport {
    pub fn t(&self) -> f64 {
        self.log_t.exp()
    }
}

/// The range inequalities, checked in order; σ is compared against the
/// bounds exactly as written, so equality is accepted.
fn range_violation(kind: BoundKind, sigma: f64, log_t: f64, c: f64) -> Option<String> {
    if !(log_t >= 3f64.ln()) {
        return Some(format!("t >= 3 fails: log t = {log_t}"));
    }
    let ll = log_t.ln();
    if !(ll > 0.0) {
        return Some(format!("log log t = {ll} is not positive"));
    }
    let shift = match kind {
        BoundKind::Modulus | BoundKind::Imaginary => lambda0() + c,
        BoundKind::RealPart => c,
        BoundKind::SecondDerivativeUpper | BoundKind::SecondDerivativeLower => lambda0(),
    };
    let lower = 0.5 + shift / ll;
    if !(sigma >= lower) {
        return Some(format!(
            "sigma >= 1/2 + {shift}/log log t = {lower} fails for sigma = {sigma}"
        ));
    }
    let upper = 1.0 - c / ll.sqrt();
    if !(sigma <= upper) {
        return Some(format!(
            "sigma <= 1 - c/sqrt(log log t) = {upper} fails for sigma = {sigma}"
        ));
    }
    None
}

/// The main term of `kind` at (σ, log t), with the range checked against
/// c but not enforced.
pub fn evaluate_bound(kind: BoundKind, sigma: f64, log_t: f64, c: f64) -> Result<BoundReport> {
    check_sigma(sigma)?;
    if !(c > 0.0) {
        return Err(Error::domain(format!(
            "range constant c = {c} must be positive"
        )));
    }
    let ss = sigma * (1.0 - sigma);
    let (coefficient, n, sign) = match kind {
        BoundKind::Modulus => (b_sigma(sigma)? / ss, 0.0, 1.0),
        BoundKind::Imaginary => (c_sigma(sigma)? / ss, 0.0, 1.0),
        BoundKind::RealPart => (realpart_coeff(sigma)?, 0.0, 1.0),
        BoundKind::SecondDerivativeUpper => (second_derivative_upper_coeff(sigma)?, -1.0, 1.0),
        BoundKind::SecondDerivativeLower => (second_derivative_lower_coeff(sigma)?, -1.0, -1.0),
    };
    let violation = range_violation(kind, sigma, log_t, c);
    let log_l = log_ell(n, sigma, log_t)?;
    let log_main = coefficient.ln() + log_l;
    let log_err = log_ell(n + 1.0, sigma, log_t)? - (sigma - 0.5).ln() - 2.0 * (1.0 - sigma).ln();
    Ok(BoundReport {
        kind,
        sigma,
        log_t,
        main_value: sign * log_main.exp(),
        log_main_value: log_main,
        main_coefficient: coefficient,
        error_shape_value: log_err.exp(),
        log_error_shape: log_err,
        range_ok: violation.is_none(),
        range_violation: violation,
    })
}

fn enforced(kind: BoundKind, sigma: f64, log_t: f64, c: f64) -> Result<BoundReport> {
    let r = evaluate_bound(kind, sigma, log_t, c)?;
    match &r.range_violation {
        Some(v) => Err(Error::range(v.clone())),
        None => Ok(r),
    }
}

/// Bound on |ζ'/ζ(σ+it)|; errors outside its range.
pub fn modulus_bound(sigma: f64, t: f64, c: f64) -> Result<BoundReport> {
    enforced(BoundKind::Modulus, sigma, t.ln(), c)
}

/// Bound on |Im ζ'/ζ(σ+it)|; errors outside its range.
pub fn imaginary_part_bound(sigma: f64, t: f64, c: f64) -> Result<BoundReport> {
    enforced(BoundKind::Imaginary, sigma, t.ln(), c)
}

/// Upper bound on Re(ζ'/ζ)'(σ+it); errors outside its range.
pub fn second_derivative_upper_bound(sigma: f64, t: f64, c: f64) -> Result<BoundReport> {
    enforced(BoundKind::SecondDerivativeUpper, sigma, t.ln(), c)
}

/// Lower bound on Re(ζ'/ζ)'(σ+it); errors outside its range.
pub fn second_derivative_lower_bound(sigma: f64, t: f64, c: f64) -> Result<BoundReport> {
    enforced(BoundKind::SecondDerivativeLower, sigma, t.ln(), c)
}

/// |ζ'/ζ(σ+it)| against the main term of its bound.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EmpiricalRatio {
    pub sigma: f64,
    pub t: f64,
    pub log_deriv_abs: f64,
    pub imag_abs: f64,
    pub main_value: f64,
    /// log_deriv_abs / main_value.
    pub ratio: f64,
    pub range_ok: bool,
}

pub fn empirical_ratio(sigma: f64, t: f64, c: f64, cfg: &ZetaConfig) -> Result<EmpiricalRatio> {
    let r = evaluate_bound(BoundKind::Modulus, sigma, t.ln(), c)?;
    let ld = cfg.log_deriv(Complex64::new(sigma, t))?;
    Ok(EmpiricalRatio {
        sigma,
        t,
        log_deriv_abs: ld.norm(),
        imag_abs: ld.im.abs(),
        main_value: r.main_value,
        ratio: ld.norm() / r.main_value,
        range_ok: r.range_ok,
    })
}

/// σ at the lower end of the range of `kind` at height log t.
pub fn range_lower_sigma(kind: BoundKind, log_t: f64, c: f64) -> f64 {
    let shift = match kind {
        BoundKind::Modulus | BoundKind::Imaginary => lambda0() + c,
        BoundKind::RealPart => c,
        BoundKind::SecondDerivativeUpper | BoundKind::SecondDerivativeLower => lambda0(),
    };
    0.5 + shift / log_t.ln()
}

/// πΔ = log log t, the bandwidth used by the bound assembly.
pub fn bandwidth_for_height(log_t: f64) -> f64 {
    log_t.ln() / PI
}
