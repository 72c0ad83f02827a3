//! Special functions: digamma, trigamma, the von Mangoldt function, an
//! Euler–Maclaurin evaluator for ζ together with its first two derivatives,
//! and the breakpoint λ0 of the majorant coefficients.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Points of the complex plane. Components must be finite.
pub type ComplexValue = Complex64;

fn ensure_finite(s: Complex64, what: &str) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{what}: non-finite argument {s}")))
    }
}

fn is_gamma_pole(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

/// B_2, B_4, ..., B_20.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Shift target for the recurrences; the asymptotic series below is
/// truncated after B_16, leaving a remainder under 1e-17 once Re z ≥ 10.
const ASYMPTOTIC_RE: f64 = 10.0;

/// cot(πz), stable for large |Im z|.
fn cot_pi(z: Complex64) -> Complex64 {
    let w = z * PI;
    if w.im > 20.0 {
        return Complex64::new(0.0, -1.0);
    }
    if w.im < -20.0 {
        return Complex64::new(0.0, 1.0);
    }
    w.cos() / w.sin()
}

/// The digamma function Γ'/Γ.
pub fn digamma(s: Complex64) -> Result<Complex64> {
    ensure_finite(s, "digamma")?;
    if is_gamma_pole(s) {
        return Err(Error::domain(format!("digamma has a pole at {}", s.re)));
    }
    if s.re < 0.0 {
        // ψ(s) = ψ(1 − s) − π cot(πs)
        return Ok(digamma(Complex64::new(1.0, 0.0) - s)? - cot_pi(s) * PI);
    }
    let mut z = s;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.re < ASYMPTOTIC_RE {
        acc -= z.inv();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2;
    for (k, b) in BERNOULLI.iter().take(8).enumerate() {
        series += pow * (b / (2.0 * (k + 1) as f64));
        pow *= inv2;
    }
    Ok(acc + z.ln() - inv * 0.5 - series)
}

/// The trigamma function (Γ'/Γ)'.
pub fn trigamma(s: Complex64) -> Result<Complex64> {
    ensure_finite(s, "trigamma")?;
    if is_gamma_pole(s) {
        return Err(Error::domain(format!("trigamma has a pole at {}", s.re)));
    }
    if s.re < 0.0 {
        // ψ'(s) = π² / sin²(πs) − ψ'(1 − s)
        let sin = (s * PI).sin();
        return Ok(
            Complex64::new(PI * PI, 0.0) / (sin * sin) - trigamma(Complex64::new(1.0, 0.0) - s)?
        );
    }
    let mut z = s;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.re < ASYMPTOTIC_RE {
        let inv = z.inv();
        acc += inv * inv;
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2 * inv;
    for b in BERNOULLI.iter().take(8) {
        series += pow * *b;
        pow *= inv2;
    }
    Ok(acc + inv + inv2 * 0.5 + series)
}

/// A logarithm of Γ(s) away from the poles 0, −1, −2, ... The imaginary
/// part is fixed only up to a multiple of 2π.
pub fn ln_gamma(s: Complex64) -> Result<Complex64> {
    ensure_finite(s, "ln_gamma")?;
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        return Err(Error::Pole(format!("Gamma has a pole at {s}")));
    }
    if s.re < -1e6 {
        return Err(Error::domain(format!(
            "ln_gamma needs Re s >= -1e6, got {s}"
        )));
    }
    let mut z = s;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.re < ASYMPTOTIC_RE {
        acc -= z.ln();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for (k, b) in BERNOULLI.iter().take(8).enumerate() {
        let m = 2.0 * (k + 1) as f64;
        series += pow * (b / (m * (m - 1.0)));
        pow *= inv2;
    }
    Ok(acc + (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series)
}

/// log sin(πs/2), computed without overflow for large |Im s|.
fn ln_sin_half_pi(s: Complex64) -> Complex64 {
    let w = s * (0.5 * PI);
    let i = Complex64::new(0.0, 1.0);
    if w.im >= 0.0 {
        // sin w = −e^{−iw}(1 − e^{2iw})/(2i)
        -i * w - (2.0 * i).ln() + (1.0 - (2.0 * i * w).exp()).ln() + i * PI
    } else {
        // sin w = e^{iw}(1 − e^{−2iw})/(2i)
        i * w - (2.0 * i).ln() + (1.0 - (-2.0 * i * w).exp()).ln()
    }
}

/// χ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s), so that ζ(s) = χ(s) ζ(1−s).
pub fn chi(s: Complex64) -> Result<Complex64> {
    let one_minus = Complex64::new(1.0, 0.0) - s;
    let l = s * 2f64.ln() + (s - 1.0) * PI.ln() + ln_sin_half_pi(s) + ln_gamma(one_minus)?;
    Ok(l.exp())
}

/// |ζ(s) − χ(s)ζ(1−s)| / |ζ(s)|, with both ζ values from `cfg`.
pub fn functional_equation_residual(cfg: &ZetaConfig, s: Complex64) -> Result<f64> {
    let z = cfg.evaluate(s)?.zeta;
    let zr = cfg.evaluate(Complex64::new(1.0, 0.0) - s)?.zeta;
    Ok((z - chi(s)? * zr).norm() / z.norm())
}

/// Λ(n): log p when n is a power of the prime p, zero otherwise.
pub fn von_mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            return if m == 1 { (p as f64).ln() } else { 0.0 };
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // m is prime and n = m^k only if no smaller factor was found.
    (m as f64).ln()
}

/// Λ(n) for 0 ≤ n ≤ `max`, from a smallest-prime-factor sieve.
pub fn von_mangoldt_table(max: usize) -> Vec<f64> {
    let mut spf = vec![0u32; max + 1];
    let mut table = vec![0.0; max + 1];
    for i in 2..=max {
        if spf[i] == 0 {
            let mut j = i;
            while j <= max {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        let p = spf[i] as usize;
        let mut m = i;
        while m % p == 0 {
            m /= p;
        }
        if m == 1 {
            table[i] = (p as f64).ln();
        }
    }
    table
}

/// B_{2k}/(2k)! for k = 1..=MAX_CORRECTIONS, via B_{2k}/(2k)! = (−1)^{k+1}·2ζ(2k)/(2π)^{2k}.
fn bernoulli_ratios() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (1..=MAX_CORRECTIONS)
            .map(|k| {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * 2.0 * zeta_even(k) / (2.0 * PI).powi(2 * k as i32)
            })
            .collect()
    })
}

/// ζ(2k) by direct summation with an Euler–Maclaurin tail.
fn zeta_even(k: usize) -> f64 {
    if k == 1 {
        return PI * PI / 6.0;
    }
    let p = 2.0 * k as f64;
    let m = 100.0f64;
    let head: f64 = (1..100).rev().map(|n| (n as f64).powf(-p)).sum();
    head + m.powf(1.0 - p) / (p - 1.0) + 0.5 * m.powf(-p) + p / 12.0 * m.powf(-p - 1.0)
        - p * (p + 1.0) * (p + 2.0) / 720.0 * m.powf(-p - 3.0)
}

const MAX_CORRECTIONS: usize = 40;

/// ζ, ζ', ζ'' at one point together with truncation diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct ZetaEval {
    pub zeta: Complex64,
    pub zeta1: Complex64,
    pub zeta2: Complex64,
    /// Number of terms in the main Dirichlet sum.
    pub terms_used: usize,
    /// Bound on the Euler–Maclaurin remainder.
    pub tail_estimate: f64,
    /// Σ |n^{-s}| over the main sum; the scale of the rounding error.
    pub abs_sum: f64,
}

/// Precision policy for the Euler–Maclaurin evaluator.
#[derive(Clone, Copy, Debug)]
pub struct ZetaConfig {
    /// Largest supported |Im s|.
    pub max_height: f64,
    /// The main sum uses max(`min_terms`, ⌈`terms_per_modulus`·|s|⌉) terms.
    pub min_terms: usize,
    pub terms_per_modulus: f64,
    /// Correction terms are added until they drop below `rel_tol`·abs_sum.
    pub rel_tol: f64,
    /// |ζ(s)| < `near_zero`·abs_sum is reported as proximity to a zero.
    pub near_zero: f64,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        Self {
            max_height: 1e6,
            min_terms: 16,
            terms_per_modulus: 0.5,
            rel_tol: 1e-16,
            near_zero: 1e-12,
        }
    }
}

impl ZetaConfig {
    pub fn evaluate(&self, s: Complex64) -> Result<ZetaEval> {
        ensure_finite(s, "zeta")?;
        if s == Complex64::new(1.0, 0.0) {
            return Err(Error::Pole("zeta has a pole at s = 1".into()));
        }
        if s.im.abs() > self.max_height {
            return Err(Error::range(format!(
                "|Im s| = {} exceeds the supported height {}",
                s.im.abs(),
                self.max_height
            )));
        }
        let n_terms = self
            .min_terms
            .max((self.terms_per_modulus * s.norm()).ceil() as usize);

        let mut z0 = Complex64::new(0.0, 0.0);
        let mut z1 = Complex64::new(0.0, 0.0);
        let mut z2 = Complex64::new(0.0, 0.0);
        let mut abs_sum = 0.0;
        for n in 1..n_terms {
            let ln = (n as f64).ln();
            let modulus = (-s.re * ln).exp();
            let (sin, cos) = (s.im * ln).sin_cos();
            let term = Complex64::new(modulus * cos, -modulus * sin);
            z0 += term;
            z1 -= term * ln;
            z2 += term * (ln * ln);
            abs_sum += modulus;
        }

        let big_n = n_terms as f64;
        let ln_n = big_n.ln();
        let base = (-s * ln_n).exp(); // N^{-s}
        let inv_sm1 = (s - 1.0).inv();

        // N^{1-s}/(s-1) and its derivatives in s.
        let pole = base * big_n;
        z0 += pole * inv_sm1;
        z1 += pole * (-ln_n * inv_sm1 - inv_sm1 * inv_sm1);
        z2 += pole
            * (inv_sm1 * (ln_n * ln_n) + inv_sm1 * inv_sm1 * (2.0 * ln_n) + inv_sm1.powi(3) * 2.0);

        // N^{-s}/2.
        z0 += base * 0.5;
        z1 -= base * (0.5 * ln_n);
        z2 += base * (0.5 * ln_n * ln_n);
        abs_sum += 0.5 * base.norm();

        // Bernoulli corrections c_k · s(s+1)···(s+2k−2) · N^{−s−2k+1}.
        let ratios = bernoulli_ratios();
        let (mut p, mut p1, mut p2) = (s, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        let mut scale = big_n.recip(); // N^{1−2k}
        let mut tail = f64::INFINITY;
        for (k, c) in (1..=MAX_CORRECTIONS).zip(ratios) {
            if k > 1 {
                for j in [2 * k - 3, 2 * k - 2] {
                    let q = s + j as f64;
                    p2 = p2 * q + p1 * 2.0;
                    p1 = p1 * q + p;
                    p *= q;
                }
                scale /= big_n * big_n;
            }
            let common = base * (c * scale);
            let t0 = common * p;
            z0 += t0;
            z1 += common * (p1 - p * ln_n);
            z2 += common * (p2 - p1 * (2.0 * ln_n) + p * (ln_n * ln_n));
            let shift = 2.0 * k as f64 + 1.0;
            let factor = (s + shift).norm() / (s.re + shift);
            tail = factor * t0.norm();
            if tail <= self.rel_tol * abs_sum {
                break;
            }
        }

        Ok(ZetaEval {
            zeta: z0,
            zeta1: z1,
            zeta2: z2,
            terms_used: n_terms,
            tail_estimate: tail,
            abs_sum,
        })
    }

    fn checked(&self, s: Complex64) -> Result<ZetaEval> {
        let ev = self.evaluate(s)?;
        let threshold = self.near_zero * ev.abs_sum.max(1.0);
        let modulus = ev.zeta.norm();
        if modulus < threshold {
            return Err(Error::NearZero { modulus, threshold });
        }
        Ok(ev)
    }

    /// ζ'/ζ(s).
    pub fn log_deriv(&self, s: Complex64) -> Result<Complex64> {
        let ev = self.checked(s)?;
        Ok(ev.zeta1 / ev.zeta)
    }

    /// (ζ'/ζ)'(s) = ζ''/ζ − (ζ'/ζ)².
    pub fn log_deriv_prime(&self, s: Complex64) -> Result<Complex64> {
        let ev = self.checked(s)?;
        let ld = ev.zeta1 / ev.zeta;
        Ok(ev.zeta2 / ev.zeta - ld * ld)
    }
}

/// ζ(s), ζ'(s), ζ''(s) with the default precision policy.
pub fn zeta_with_derivatives(s: Complex64) -> Result<ZetaEval> {
    ZetaConfig::default().evaluate(s)
}

/// ζ'/ζ(s) with the default precision policy.
pub fn log_deriv(s: Complex64) -> Result<Complex64> {
    ZetaConfig::default().log_deriv(s)
}

/// (ζ'/ζ)'(s) with the default precision policy.
pub fn log_deriv_prime(s: Complex64) -> Result<Complex64> {
    ZetaConfig::default().log_deriv_prime(s)
}

/// The unique positive root λ0 of 2λ·tanh λ = 1.
///
/// Bisection on [0.5, 1], where 2λ·tanh λ is strictly increasing, run until
/// the bracket can no longer shrink.
pub fn solve_lambda0() -> f64 {
    let g = |x: f64| 2.0 * x * x.tanh() - 1.0;
    let (mut lo, mut hi) = (0.5f64, 1.0f64);
    debug_assert!(g(lo) < 0.0 && g(hi) > 0.0);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if g(hi).abs() < g(lo).abs() {
        hi
    } else {
        lo
    }
}

/// Cached λ0.
pub fn lambda0() -> f64 {
    static L0: OnceLock<f64> = OnceLock::new();
    *L0.get_or_init(solve_lambda0)
}
