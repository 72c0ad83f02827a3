//! The Guinand–Weil explicit formula for even bandlimited test functions
//! and numeric bounds on Σ_γ (M_t h)(γ), where
//! M_t h(x) = ½h(x − t) + ½h(x + t) + h(x).
//!
//! For h even, real on ℝ, analytic in |Im z| ≤ ½ + ε with ĥ supported in
//! [−Δ, Δ], and assuming RH,
//!
//!   Σ_γ h(γ) = (1/2π)∫ h(u) Re ψ(¼ + iu/2) du + 2h(i/2)
//!              − (log π/2π) ĥ(0) − (1/π) Σ_n Λ(n)/√n · ĥ(log n/2π),
//!
//! the sum running over all ordinates ±γ. Applied to M_t h, whose transform
//! is 2cos²(πty)ĥ(y), this gives the four terms of [`GwBreakdown`].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{sum_range, Execution};
use crate::extremal::{
    majorant_coeffs, ApproxParams, Approximant, MajorantBranch, Side, TestFunction,
};
use crate::quad::{integrate_panels, integrate_tail, uniform_edges, Estimate, Harmonic, Tolerance};
use crate::special::{digamma, von_mangoldt_table};
use crate::zero_sums::{background_terms, sum_f_over_zeros, ZeroOrdinates};

pub use crate::interp::{second_derivative_lower_bound, second_derivative_upper_bound};

/// (M_t h)(x).
pub fn m_t_apply<H: TestFunction + ?Sized>(h: &H, t: f64, x: f64) -> f64 {
    0.5 * h.eval(x - t) + 0.5 * h.eval(x + t) + h.eval(x)
}

/// (M_t h)(z) for complex z.
pub fn m_t_apply_complex<H: TestFunction + ?Sized>(h: &H, t: f64, z: Complex64) -> Complex64 {
    (h.eval_complex(z - t) + h.eval_complex(z + t)) * 0.5 + h.eval_complex(z)
}

/// The transform of M_t h: 2cos²(πty)·ĥ(y).
pub fn m_t_hat<H: TestFunction + ?Sized>(h: &H, t: f64, y: f64) -> f64 {
    2.0 * (PI * t * y).cos().powi(2) * h.hat(y)
}

/// M_t h as a test function in its own right.
pub struct Averaged<'a, H: ?Sized> {
    pub h: &'a H,
    pub t: f64,
}

impl<H: TestFunction + ?Sized> TestFunction for Averaged<'_, H> {
    fn eval(&self, x: f64) -> f64 {
        m_t_apply(self.h, self.t, x)
    }

    fn eval_complex(&self, z: Complex64) -> Complex64 {
        m_t_apply_complex(self.h, self.t, z)
    }

    fn hat(&self, y: f64) -> f64 {
        m_t_hat(self.h, self.t, y)
    }

    fn bandwidth(&self) -> f64 {
        self.h.bandwidth()
    }

    fn envelope(&self, x: f64) -> f64 {
        self.h.envelope(x) + 0.5 * (self.h.envelope(x - self.t) + self.h.envelope(x + self.t))
    }

    fn envelope_knee(&self) -> f64 {
        self.t.abs() + self.h.envelope_knee()
    }

    fn harmonics(&self, x: f64) -> Harmonic {
        let shift = 2.0 * PI * self.h.bandwidth() * self.t;
        self.h.harmonics(x)
            + self.h.harmonics(x - self.t).translated(shift).scale(0.5)
            + self.h.harmonics(x + self.t).translated(-shift).scale(0.5)
    }

    fn oscillation_amplitude(&self, x: f64) -> f64 {
        self.h.oscillation_amplitude(x)
            + 0.5
                * (self.h.oscillation_amplitude(x - self.t)
                    + self.h.oscillation_amplitude(x + self.t))
    }
}

/// Re ψ(¼ + iu/2).
pub fn archimedean_weight(u: f64) -> f64 {
    digamma(Complex64::new(0.25, 0.5 * u))
        .expect("Re = 1/4 is never a pole")
        .re
}

/// Largest number of panels the archimedean quadrature may use.
const MAX_PANELS: f64 = 4e6;

/// (1/2π)∫_ℝ g(u) Re ψ(¼ + iu/2) du for an even test function g.
///
/// [0, W] is covered by panels one period of cos(2πΔu) wide. Beyond W the
/// mean part is integrated numerically and the oscillating part is bounded
/// by 2·amplitude(W)·ψ(W)/(2πΔ), the second mean value theorem applied to
/// each decreasing amplitude. W grows until that bound is below tol/4.
pub fn archimedean_integral<G: TestFunction + ?Sized>(
    exec: Execution,
    g: &G,
    tol: f64,
) -> Result<Estimate> {
    let omega = 2.0 * PI * g.bandwidth();
    let knee = g.envelope_knee();
    let period = if omega > 0.0 { 2.0 * PI / omega } else { 1.0 };
    let bound = |w: f64| {
        if omega > 0.0 {
            2.0 * g.oscillation_amplitude(w) * archimedean_weight(w).abs() / (omega * PI)
        } else {
            0.0
        }
    };
    let target = 0.25 * tol;
    let mut w = knee + (50.0 * period).max(50.0);
    for _ in 0..40 {
        let b = bound(w);
        if b <= target {
            break;
        }
        w *= (b / target).sqrt().clamp(1.2, 10.0);
    }
    let b = bound(w);
    if b > target || w / period > MAX_PANELS {
        return Err(Error::Tail {
            bound: b,
            tolerance: target,
        });
    }
    let edges = uniform_edges(0.0, w, period);
    let body = integrate_panels(
        exec,
        &|u: f64| g.eval(u) * archimedean_weight(u) / PI,
        &edges,
        Tolerance::new(0.5 * tol, 1e-13),
    )?;
    let tail = integrate_tail(
        &|u: f64| g.harmonics(u).mean * archimedean_weight(u) / PI,
        w,
        Tolerance::new(0.125 * tol, 1e-12),
    )?;
    Ok(Estimate {
        value: body.value + tail.value,
        error: body.error + tail.error + b,
        evaluations: body.evaluations + tail.evaluations,
    })
}

/// (1/2π)∫ (M_t h)(u) Re ψ(¼ + iu/2) du.
pub fn archimedean_term<H: TestFunction + ?Sized>(
    exec: Execution,
    h: &H,
    t: f64,
    tol: f64,
) -> Result<Estimate> {
    archimedean_integral(exec, &Averaged { h, t }, tol)
}

/// 2·(M_t h)(i/2).
pub fn pole_term<H: TestFunction + ?Sized>(h: &H, t: f64) -> f64 {
    let (center, translated) = pole_parts(h, t);
    center + translated
}

/// 2h(i/2) and the contribution h(i/2 − t) + h(i/2 + t) of the translates.
pub fn pole_parts<H: TestFunction + ?Sized>(h: &H, t: f64) -> (f64, f64) {
    let half_i = Complex64::new(0.0, 0.5);
    let center = 2.0 * h.eval_complex(half_i).re;
    let translated = (h.eval_complex(half_i - t) + h.eval_complex(half_i + t)).re;
    (center, translated)
}

/// −(log π/π)·ĥ(0), the log π term for M_t h.
pub fn log_pi_term<H: TestFunction + ?Sized>(h: &H) -> f64 {
    -PI.ln() / PI * h.hat(0.0)
}

/// Largest n in the prime sum, ⌊e^{2πΔ}⌋, or an error past `budget`.
fn prime_cutoff(delta: f64, budget: u64) -> Result<usize> {
    let x = 2.0 * PI * delta;
    let needed = x.exp();
    if !(needed <= budget as f64) {
        return Err(Error::PrimeBudget {
            needed,
            budget: budget as f64,
        });
    }
    Ok(needed.floor() as usize)
}

/// −(2/π)·Σ_{2 ≤ n ≤ e^{2πΔ}} Λ(n)/√n · ĥ(log n/2π) · cos²(½t log n),
/// together with the number of n summed.
pub fn prime_term<H: TestFunction + ?Sized>(
    exec: Execution,
    h: &H,
    t: f64,
    budget: u64,
) -> Result<(f64, usize)> {
    let n_max = prime_cutoff(h.bandwidth(), budget)?;
    if n_max < 2 {
        return Ok((0.0, 0));
    }
    let lambda = von_mangoldt_table(n_max);
    let s = sum_range(exec, n_max + 1, |n| {
        if lambda[n] == 0.0 {
            return 0.0;
        }
        let ln = (n as f64).ln();
        lambda[n] / (n as f64).sqrt() * h.hat(ln / (2.0 * PI)) * (0.5 * t * ln).cos().powi(2)
    });
    Ok((-2.0 / PI * s, n_max - 1))
}

/// Tolerances for [`gw_rhs`].
#[derive(Clone, Copy, Debug)]
pub struct GwConfig {
    /// Absolute tolerance of the archimedean quadrature.
    pub tol: f64,
    /// Largest n the prime sum may reach.
    pub prime_budget: u64,
}

impl Default for GwConfig {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            prime_budget: 10_000_000,
        }
    }
}

/// Right-hand side of the explicit formula applied to M_t h.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct GwBreakdown {
    pub archimedean: f64,
    pub pole: f64,
    pub log_pi: f64,
    pub prime_sum: f64,
    /// archimedean + pole + log_pi + prime_sum.
    pub total: f64,
    /// Error bound of the archimedean quadrature; the other terms are exact
    /// up to rounding.
    pub certificate: f64,
    pub prime_terms: usize,
}

pub fn gw_rhs<H: TestFunction + ?Sized>(
    exec: Execution,
    h: &H,
    t: f64,
    cfg: &GwConfig,
) -> Result<GwBreakdown> {
    let arch = archimedean_term(exec, h, t, cfg.tol)?;
    let pole = pole_term(h, t);
    let log_pi = log_pi_term(h);
    let (prime_sum, prime_terms) = prime_term(exec, h, t, cfg.prime_budget)?;
    Ok(GwBreakdown {
        archimedean: arch.value,
        pole,
        log_pi,
        prime_sum,
        total: arch.value + pole + log_pi + prime_sum,
        certificate: arch.error,
        prime_terms,
    })
}

/// [`gw_rhs`] for an extremal function, checking the sign facts the bound
/// assembly relies on: the minorant's prime sum is nonnegative, and for the
/// majorant with λ ≥ λ0 the prime sum is at most
/// 2Σ_{n ≤ e^{2πΔ}} Λ(n) log n / n^{a+½}.
pub fn gw_rhs_checked(
    exec: Execution,
    h: &Approximant,
    t: f64,
    cfg: &GwConfig,
) -> Result<GwBreakdown> {
    let gw = gw_rhs(exec, h, t, cfg)?;
    let slack = 1e-12 * (1.0 + gw.prime_sum.abs());
    match h {
        Approximant::Minorant(..) => {
            if gw.prime_sum < -slack {
                return Err(Error::domain(format!(
                    "minorant prime sum {} is negative",
                    gw.prime_sum
                )));
            }
        }
        Approximant::Majorant(p, k) => {
            if k.branch == MajorantBranch::AboveLambda0 {
                let cap = majorant_prime_bound(p, cfg.prime_budget)?;
                if gw.prime_sum > cap + slack {
                    return Err(Error::domain(format!(
                        "majorant prime sum {} exceeds {cap}",
                        gw.prime_sum
                    )));
                }
            }
        }
    }
    Ok(gw)
}

/// 2Σ_{2 ≤ n ≤ e^{2πΔ}} Λ(n) log n / n^{a+½}.
pub fn majorant_prime_bound(p: &ApproxParams, budget: u64) -> Result<f64> {
    let n_max = prime_cutoff(p.delta, budget)?;
    if n_max < 2 {
        return Ok(0.0);
    }
    let lambda = von_mangoldt_table(n_max);
    let s: f64 = (2..=n_max)
        .filter(|&n| lambda[n] != 0.0)
        .map(|n| {
            let x = n as f64;
            lambda[n] * x.ln() * x.powf(-p.a - 0.5)
        })
        .sum();
    Ok(2.0 * s)
}

/// 4πΔe^{(1−2a)πΔ}/(½ − a), the growth of [`majorant_prime_bound`].
pub fn majorant_prime_leading(p: &ApproxParams) -> f64 {
    4.0 * PI * p.delta * ((1.0 - 2.0 * p.a) * PI * p.delta).exp() / (0.5 - p.a)
}

/// (log t/2π)·ĥ(0): the archimedean term with Re ψ replaced by log t.
/// For the minorant this is −πΔ log t/(2sinh²λ), for the majorant with
/// λ ≥ λ0 it is πΔ log t/(2cosh²λ).
pub fn archimedean_leading(h: &Approximant, log_t: f64) -> f64 {
    log_t * h.mass() / (2.0 * PI)
}

/// (1/a)(1 + e^{−2λ} log t), the size of the archimedean remainder.
pub fn archimedean_remainder_shape(p: &ApproxParams, log_t: f64) -> f64 {
    (1.0 + (-2.0 * p.lambda).exp() * log_t) / p.a
}

/// 4πaΔe^{(1−2a)πΔ}/(a² − ¼), the growth of 2h(i/2) for both extremal
/// functions.
pub fn pole_leading(p: &ApproxParams) -> f64 {
    4.0 * PI * p.a * p.delta * ((1.0 - 2.0 * p.a) * PI * p.delta).exp() / (p.a * p.a - 0.25)
}

/// Where Σ_γ f_a(γ) came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionSource {
    /// A zero table supplied by the caller.
    Table,
    /// The embedded first 100 zeros with a density tail.
    FirstHundred,
}

/// A numeric bound on Σ_γ M_t h(γ) for h = L or U with a = σ − ½ and
/// πΔ = log log t, and the interval for the correction κ such that
///
///   Σ_γ M_t L(γ) ≤ Re(ζ'/ζ)'(σ + it) − κ ≤ Σ_γ M_t U(γ),
///
/// where κ = −¼Re ψ'(σ/2 + 1 + it/2) + Re 1/(s−1)² − Σ_γ f_a(γ).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AssembledBound {
    pub side: Side,
    pub sigma: f64,
    pub t: f64,
    pub params: ApproxParams,
    pub branch: Option<MajorantBranch>,
    pub gw: GwBreakdown,
    /// gw.total lowered (minorant) or raised (majorant) by the certificate.
    pub bound: f64,
    pub correction: f64,
    pub correction_radius: f64,
    pub correction_source: CorrectionSource,
    /// Whether (σ, t) lies in the range of the second-derivative bounds.
    pub range_ok: bool,
}

pub fn assemble_bound_numeric(
    exec: Execution,
    sigma: f64,
    t: f64,
    side: Side,
    cfg: &GwConfig,
    zeros: Option<&ZeroOrdinates>,
) -> Result<AssembledBound> {
    if !(t >= 3.0) {
        return Err(Error::range(format!("t = {t} must be at least 3")));
    }
    let log_t = t.ln();
    let p = ApproxParams::for_height(sigma, log_t)?;
    let h = Approximant::new(p, side)?;
    let gw = gw_rhs_checked(exec, &h, t, cfg)?;
    let bound = match side {
        Side::Minorant => gw.total - gw.certificate,
        Side::Majorant => gw.total + gw.certificate,
    };
    let (source, table) = match zeros {
        Some(z) => (CorrectionSource::Table, z.clone()),
        None => (
            CorrectionSource::FirstHundred,
            ZeroOrdinates::first_hundred(),
        ),
    };
    let (gamma, pole) = background_terms(sigma, t)?;
    let fsum = sum_f_over_zeros(sigma, 0.0, &table)?;
    let branch = match side {
        Side::Majorant => Some(majorant_coeffs(&p)?.branch),
        Side::Minorant => None,
    };
    let range_ok = second_derivative_upper_bound(sigma, t, crate::interp::DEFAULT_RANGE_C).is_ok();
    Ok(AssembledBound {
        side,
        sigma,
        t,
        params: p,
        branch,
        gw,
        bound,
        correction: gamma + pole - fsum.value,
        correction_radius: fsum.tail_bound,
        correction_source: source,
        range_ok,
    })
}
