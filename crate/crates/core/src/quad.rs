//! Adaptive Gauss–Kronrod quadrature (21-point rule, QUADPACK constants),
//! panel integration, and tails over [w, ∞) with explicit error terms.
//!
//! Error estimates follow QUADPACK's QK21 heuristic on each subinterval.
//! Tails of oscillatory integrands are split into a smooth mean, integrated
//! numerically, and harmonics `c(x)cos(ωx) + s(x)sin(ωx)` whose integral over
//! [w, ∞) is bounded by `2(|c(w)| + |s(w)|)/ω` (second mean value theorem;
//! valid when |c| and |s| decrease monotonically beyond w).

use crate::error::{Error, Result};
use crate::exec::{map_range, Execution};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Requested accuracy: the run stops once error ≤ max(abs, rel·|value|).
#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    /// Subdivision budget per adaptive run.
    pub max_intervals: usize,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self {
            abs,
            rel,
            max_intervals: 400,
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(1e-12, 1e-12)
    }
}

/// An integral value with its error estimate.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
            evaluations: self.evaluations + rhs.evaluations,
        }
    }
}

impl std::ops::Mul<f64> for Estimate {
    type Output = Estimate;
    fn mul(self, k: f64) -> Estimate {
        Estimate {
            value: self.value * k,
            error: self.error * k.abs(),
            evaluations: self.evaluations,
        }
    }
}

/// One application of the 21-point Kronrod rule on [a, b].
pub fn kronrod21<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> Estimate {
    kronrod21_with_abs(f, a, b).0
}

/// The 21-point rule together with its estimate of ∫|f|.
fn kronrod21_with_abs<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> (Estimate, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resg = 0.0;
    let mut resk = WGK[10] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let result = resk * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (
        Estimate {
            value: result,
            error: err,
            evaluations: 21,
        },
        resabs,
    )
}

/// Adaptive bisection on [a, b], always splitting the worst subinterval.
/// The run also stops once the error estimate reaches the rounding floor
/// 100ε·∫|f|, below which further splitting cannot help.
pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Quadrature(format!("non-finite interval [{a}, {b}]")));
    }
    if a == b {
        return Ok(Estimate::default());
    }
    let (first, first_abs) = kronrod21_with_abs(f, a, b);
    let mut pieces = vec![(a, b, first, first_abs)];
    let mut total = first;
    let floor = |pieces: &[(f64, f64, Estimate, f64)]| {
        100.0 * f64::EPSILON * pieces.iter().map(|p| p.3).sum::<f64>()
    };
    while total.error > tol.target(total.value).max(floor(&pieces)) {
        if !total.value.is_finite() {
            return Err(Error::Quadrature(
                "integrand produced a non-finite value".into(),
            ));
        }
        if pieces.len() >= tol.max_intervals {
            return Err(Error::Quadrature(format!(
                "no convergence on [{a}, {b}] after {} subintervals (error {:.3e})",
                pieces.len(),
                total.error
            )));
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2.error.total_cmp(&y.1 .2.error))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, old, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::Quadrature(format!(
                "interval [{lo}, {hi}] cannot be split further"
            )));
        }
        let (left, left_abs) = kronrod21_with_abs(f, lo, mid);
        let (right, right_abs) = kronrod21_with_abs(f, mid, hi);
        total.value += left.value + right.value - old.value;
        total.evaluations += left.evaluations + right.evaluations;
        pieces.push((lo, mid, left, left_abs));
        pieces.push((mid, hi, right, right_abs));
        // Re-sum errors to avoid drift from repeated subtraction.
        total.error = pieces.iter().map(|p| p.2.error).sum();
    }
    total.value = pieces.iter().map(|p| p.2.value).sum();
    Ok(total)
}

/// Σ over consecutive panels `[edges[i], edges[i+1]]`, each integrated
/// adaptively with the absolute tolerance split evenly. Panel results are
/// summed in order, so the output does not depend on `exec`.
pub fn integrate_panels<F>(
    exec: Execution,
    f: &F,
    edges: &[f64],
    tol: Tolerance,
) -> Result<Estimate>
where
    F: Fn(f64) -> f64 + Sync + ?Sized,
{
    if edges.len() < 2 {
        return Ok(Estimate::default());
    }
    let n = edges.len() - 1;
    let per_panel = Tolerance {
        abs: tol.abs / n as f64,
        ..tol
    };
    let parts = map_range(exec, n, |i| integrate(f, edges[i], edges[i + 1], per_panel));
    let mut total = Estimate::default();
    for p in parts {
        total = total + p?;
    }
    Ok(total)
}

/// Evenly spaced edges from `a` to `b` with spacing at most `step`.
pub fn uniform_edges(a: f64, b: f64, step: f64) -> Vec<f64> {
    let n = (((b - a) / step).ceil() as usize).max(1);
    (0..=n)
        .map(|i| {
            if i == n {
                b
            } else {
                a + (b - a) * i as f64 / n as f64
            }
        })
        .collect()
}

/// ∫_w^∞ f for w > 0 and f = O(x^{-1-δ}), through the substitution x = w/u.
pub fn integrate_tail<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    w: f64,
    tol: Tolerance,
) -> Result<Estimate> {
    if w <= 0.0 {
        return Err(Error::Quadrature(format!(
            "tail start {w} must be positive"
        )));
    }
    let g = |u: f64| {
        if u <= 0.0 {
            0.0
        } else {
            let x = w / u;
            f(x) * w / (u * u)
        }
    };
    integrate(&g, 0.0, 1.0, tol)
}

/// Integrand decomposition m(x) + c(x)cos(ωx) + s(x)sin(ωx).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Harmonic {
    pub mean: f64,
    pub cos: f64,
    pub sin: f64,
}

impl Harmonic {
    pub fn value(&self, omega_x: f64) -> f64 {
        let (s, c) = omega_x.sin_cos();
        self.mean + self.cos * c + self.sin * s
    }

    pub fn scale(self, k: f64) -> Harmonic {
        Harmonic {
            mean: self.mean * k,
            cos: self.cos * k,
            sin: self.sin * k,
        }
    }

    /// Coefficients of x ↦ h(x − shift) at x, given `self` = h's coefficients
    /// at x − shift.
    pub fn translated(self, omega_shift: f64) -> Harmonic {
        let (s, c) = omega_shift.sin_cos();
        Harmonic {
            mean: self.mean,
            cos: self.cos * c - self.sin * s,
            sin: self.cos * s + self.sin * c,
        }
    }
}

impl std::ops::Add for Harmonic {
    type Output = Harmonic;
    fn add(self, o: Harmonic) -> Harmonic {
        Harmonic {
            mean: self.mean + o.mean,
            cos: self.cos + o.cos,
            sin: self.sin + o.sin,
        }
    }
}

/// ∫_w^∞ of an integrand given in harmonic form. The mean is integrated
/// numerically; the oscillating part contributes only to the error.
pub fn oscillatory_tail<F: Fn(f64) -> Harmonic + ?Sized>(
    f: &F,
    w: f64,
    omega: f64,
    tol: Tolerance,
) -> Result<Estimate> {
    let mean = integrate_tail(&|x| f(x).mean, w, tol)?;
    let h = f(w);
    let bound = if omega > 0.0 {
        2.0 * (h.cos.abs() + h.sin.abs()) / omega
    } else {
        0.0
    };
    Ok(Estimate {
        error: mean.error + bound,
        ..mean
    })
}
