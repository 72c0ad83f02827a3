//! Tables of zeta-zero ordinates, truncated sums over zeros with certified
//! tails, and empirical checks of the partial-fraction identity for
//! Re(ζ'/ζ)' and of the explicit formula.
//!
//! Tail bounds count zeros with the density (1/2π)log(u/2π) + 2 per unit
//! length. The constant 2 is a conservative stand-in for the O(log T) term in
//! the Riemann–von Mangoldt formula, not a proven bound.

use std::f64::consts::PI;
use std::io::{BufRead, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{sum_slice, Execution};
use crate::explicit_formula::m_t_apply;
use crate::extremal::{eval_f, TestFunction};
use crate::quad::{integrate_tail, Tolerance};
use crate::special::{trigamma, ZetaConfig};

/// Slack per unit length added to the mean zero density.
pub const DENSITY_SLACK: f64 = 2.0;

/// Sums around height t need zeros up to at least t + COVERAGE_WINDOW.
pub const COVERAGE_WINDOW: f64 = 100.0;

/// Largest allowed |count − N(height)| for a table claiming full coverage.
pub const COUNT_SLACK: f64 = 2.0;

/// Ordinates 0 < γ_1 < γ_2 < ... of the nontrivial zeros, containing every
/// zero up to `height`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroOrdinates {
    gammas: Vec<f64>,
    height: f64,
}

impl ZeroOrdinates {
    /// Validates strict monotonicity and the zero count against N(height).
    pub fn new(gammas: Vec<f64>) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "no zero ordinates".into(),
            });
        }
        for (i, w) in gammas.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::Parse {
                    line: i + 2,
                    message: order_message(w[0], w[1]),
                });
            }
        }
        if !(gammas[0] > 0.0) {
            return Err(Error::Parse {
                line: 1,
                message: format!("ordinate {} is not positive", gammas[0]),
            });
        }
        let z = ZeroOrdinates {
            height: *gammas.last().expect("nonempty"),
            gammas,
        };
        let gap = z.count_discrepancy();
        if gap.abs() > COUNT_SLACK {
            return Err(Error::Coverage(format!(
                "{} ordinates up to {} but N({}) ≈ {:.2}; the table is not complete from the first zero",
                z.count(),
                z.height,
                z.height,
                riemann_von_mangoldt(z.height)
            )));
        }
        Ok(z)
    }

    /// The first 100 ordinates, embedded.
    pub fn first_hundred() -> Self {
        ZeroOrdinates::new(FIRST_ZEROS.to_vec()).expect("embedded table is valid")
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn count(&self) -> usize {
        self.gammas.len()
    }

    /// The first `n` ordinates.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        ZeroOrdinates::new(self.gammas[..n.min(self.count())].to_vec())
    }

    /// count − N(height), with N from the smooth Riemann–von Mangoldt term
    /// and the zero at `height` counted with weight ½.
    pub fn count_discrepancy(&self) -> f64 {
        self.count() as f64 - 0.5 - riemann_von_mangoldt(self.height)
    }

    /// One ordinate per line in shortest round-trip form.
    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# {} zero ordinates up to {}", self.count(), self.height)?;
        for g in &self.gammas {
            writeln!(w, "{g}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}

fn order_message(prev: f64, next: f64) -> String {
    if next == prev {
        format!("duplicate ordinate {next}")
    } else {
        format!("ordinate {next} is not greater than the previous {prev}")
    }
}

/// Reads one ordinate per line. Blank lines and lines starting with '#' are
/// skipped; errors carry the 1-based line number.
pub fn parse_zeros<R: BufRead>(reader: R) -> Result<ZeroOrdinates> {
    let mut gammas: Vec<f64> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let s = line.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let g: f64 = s.parse().map_err(|_| Error::Parse {
            line: i + 1,
            message: format!("cannot parse {s:?} as a number"),
        })?;
        if !g.is_finite() || g <= 0.0 {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("ordinate {s} is not a positive finite number"),
            });
        }
        if let Some(&prev) = gammas.last() {
            if g <= prev {
                return Err(Error::Parse {
                    line: i + 1,
                    message: order_message(prev, g),
                });
            }
        }
        gammas.push(g);
    }
    ZeroOrdinates::new(gammas)
}

pub fn parse_zeros_str(text: &str) -> Result<ZeroOrdinates> {
    parse_zeros(text.as_bytes())
}

pub fn load_zeros<P: AsRef<Path>>(path: P) -> Result<ZeroOrdinates> {
    let f = std::fs::File::open(path)?;
    parse_zeros(std::io::BufReader::new(f))
}

/// (T/2π)log(T/2π) − T/2π + 7/8.
pub fn riemann_von_mangoldt(height: f64) -> f64 {
    let x = height / (2.0 * PI);
    x * x.ln() - x + 0.875
}

/// Bound on the number of zeros per unit length near height u.
pub fn zero_density_bound(u: f64) -> f64 {
    (u / (2.0 * PI)).ln().max(0.0) / (2.0 * PI) + DENSITY_SLACK
}

/// Bound on Σ_{γ > from} φ(γ) for φ ≥ 0 decreasing on [from, ∞).
///
/// Zeros in (from + k, from + k + 1] number at most ρ(from + k + 1), so the
/// sum is at most Σ_k g(from + k) with g(u) = ρ(u + 1)φ(u), and that is at
/// most g(from) + ∫_from^∞ g.
pub fn zero_tail_bound<F: Fn(f64) -> f64>(phi: F, from: f64) -> Result<f64> {
    let g = |u: f64| zero_density_bound(u + 1.0) * phi(u);
    let integral = integrate_tail(&g, from, Tolerance::new(0.0, 1e-6))?;
    Ok(g(from) + integral.value + integral.error)
}

/// A truncated sum over zeros with a bound on the omitted part.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct ZeroSum {
    pub value: f64,
    pub tail_bound: f64,
    /// Number of positive ordinates used.
    pub terms: usize,
}

fn check_coverage(zeros: &ZeroOrdinates, t: f64, window: f64) -> Result<()> {
    if t.abs() + window > zeros.height() {
        return Err(Error::Coverage(format!(
            "t = {t} needs zeros up to {} but the table stops at {}",
            t.abs() + window,
            zeros.height()
        )));
    }
    Ok(())
}

/// Σ_γ f_a(γ − t) over all zeros ±γ, with a = σ − ½.
pub fn sum_f_over_zeros(sigma: f64, t: f64, zeros: &ZeroOrdinates) -> Result<ZeroSum> {
    let a = sigma - 0.5;
    if !(a > 0.0) {
        return Err(Error::domain(format!("sigma = {sigma} must exceed 1/2")));
    }
    check_coverage(zeros, t, COVERAGE_WINDOW)?;
    let value = zeros
        .gammas()
        .iter()
        .rev()
        .map(|&g| eval_f(a, g - t) + eval_f(a, g + t))
        .sum();
    let height = zeros.height();
    let tail_bound = zero_tail_bound(|u| (u - t.abs()).powi(-2) + (u + t.abs()).powi(-2), height)?;
    Ok(ZeroSum {
        value,
        tail_bound,
        terms: zeros.count(),
    })
}

/// Σ_γ (M_t h)(γ) over all zeros ±γ; h is even, so each pair contributes
/// twice the value at the positive ordinate.
pub fn gw_lhs<H: TestFunction + ?Sized>(
    exec: Execution,
    h: &H,
    t: f64,
    zeros: &ZeroOrdinates,
) -> Result<ZeroSum> {
    let window = COVERAGE_WINDOW.max(2.0 * h.envelope_knee());
    check_coverage(zeros, t, window)?;
    let value = 2.0 * sum_slice(exec, zeros.gammas(), |&g| m_t_apply(h, t, g));
    let ta = t.abs();
    let tail_bound = zero_tail_bound(
        |u| 2.0 * h.envelope(u) + h.envelope(u - ta) + h.envelope(u + ta),
        zeros.height(),
    )?;
    Ok(ZeroSum {
        value,
        tail_bound,
        terms: zeros.count(),
    })
}

/// −¼·Re ψ'(σ/2 + 1 + it/2) + Re 1/(s − 1)²: the part of Re(ζ'/ζ)'(s) that
/// does not come from the zeros.
pub fn background_terms(sigma: f64, t: f64) -> Result<(f64, f64)> {
    let gamma = -0.25 * trigamma(Complex64::new(0.5 * sigma + 1.0, 0.5 * t))?.re;
    let sm1 = Complex64::new(sigma - 1.0, t);
    if sm1.norm() == 0.0 {
        return Err(Error::Pole("s = 1".into()));
    }
    let pole = (sm1 * sm1).inv().re;
    Ok((gamma, pole))
}

/// Both sides of
///   Re(ζ'/ζ)'(s) = Σ_γ f_a(γ − t) − ¼·Re ψ'(σ/2 + 1 + it/2) + Re 1/(s − 1)².
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RepresentationCheck {
    pub sigma: f64,
    pub t: f64,
    /// Re(ζ'/ζ)'(σ + it) from the Euler–Maclaurin evaluator.
    pub direct: f64,
    pub zero_sum: f64,
    pub gamma_term: f64,
    pub pole_term: f64,
    pub residual: f64,
    pub tail_bound: f64,
    /// Euler–Maclaurin remainder bound relative to |ζ(s)|.
    pub zeta_tail: f64,
}

pub fn representation_residual(
    sigma: f64,
    t: f64,
    zeros: &ZeroOrdinates,
    cfg: &ZetaConfig,
) -> Result<RepresentationCheck> {
    let sum = sum_f_over_zeros(sigma, t, zeros)?;
    let s = Complex64::new(sigma, t);
    let direct = cfg.log_deriv_prime(s)?.re;
    let ev = cfg.evaluate(s)?;
    let (gamma_term, pole_term) = background_terms(sigma, t)?;
    Ok(RepresentationCheck {
        sigma,
        t,
        direct,
        zero_sum: sum.value,
        gamma_term,
        pole_term,
        residual: direct - (sum.value + gamma_term + pole_term),
        tail_bound: sum.tail_bound,
        zeta_tail: ev.tail_estimate / ev.zeta.norm(),
    })
}

const FIRST_ZEROS: [f64; 100] = [
    14.134725141735,
    21.022039638772,
    25.010857580146,
    30.424876125860,
    32.935061587739,
    37.586178158826,
    40.918719012147,
    43.327073280915,
    48.005150881167,
    49.773832477672,
    52.970321477714,
    56.446247697063,
    59.347044002602,
    60.831778524610,
    65.112544048082,
    67.079810529494,
    69.546401711174,
    72.067157674482,
    75.704690699084,
    77.144840068875,
    79.337375020249,
    82.910380854086,
    84.735492980517,
    87.425274613125,
    88.809111207634,
    92.491899270558,
    94.651344040520,
    95.870634228245,
    98.831194218194,
    101.317851005731,
    103.725538040478,
    105.446623052326,
    107.168611184276,
    111.029535543170,
    111.874659176993,
    114.320220915453,
    116.226680320858,
    118.790782865976,
    121.370125002421,
    122.946829293553,
    124.256818554346,
    127.516683879596,
    129.578704199956,
    131.087688530933,
    133.497737202998,
    134.756509753374,
    138.116042054533,
    139.736208952121,
    141.123707404021,
    143.111845807621,
    146.000982486766,
    147.422765342560,
    150.053520420785,
    150.925257612241,
    153.024693811199,
    156.112909294238,
    157.597591817594,
    158.849988171420,
    161.188964137596,
    163.030709687182,
    165.537069187900,
    167.184439978175,
    169.094515415569,
    169.911976479412,
    173.411536519592,
    174.754191523366,
    176.441434297710,
    178.377407776100,
    179.916484020257,
    182.207078484366,
    184.874467848388,
    185.598783677707,
    187.228922583502,
    189.416158656017,
    192.026656360714,
    193.079726603846,
    195.265396679529,
    196.876481840958,
    198.015309676252,
    201.264751943704,
    202.493594514141,
    204.189671803105,
    205.394697202163,
    207.906258887806,
    209.576509716856,
    211.690862595365,
    213.347919359713,
    214.547044783491,
    216.169538508264,
    219.067596349021,
    220.714918839314,
    221.430705554693,
    224.007000254604,
    224.983324669582,
    227.421444279679,
    229.337413305525,
    231.250188700499,
    231.987235253180,
    233.693404178908,
    236.524229665816,
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_two_ordinates() {
        let z = parse_zeros_str("14.134725\n21.022040\n").unwrap();
        assert_eq!(z.count(), 2);
        assert_eq!(z.height(), 21.02204);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_zeros_str(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_zeros_str("# header only\n"),
            Err(Error::Parse { .. })
        ));
        match parse_zeros_str("# h\n14.134725\n25.01\n21.02\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        match parse_zeros_str("14.134725\n14.134725\n") {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("duplicate"));
            }
            other => panic!("{other:?}"),
        }
        match parse_zeros_str("14.134725\nabc\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn incomplete_tables_are_rejected() {
        let r = parse_zeros_str("14.134725\n21.022040\n236.524229665816\n");
        assert!(matches!(r, Err(Error::Coverage(_))));
    }

    #[test]
    fn embedded_table_round_trips() {
        let z = ZeroOrdinates::first_hundred();
        assert_eq!(z.count(), 100);
        assert!(z.count_discrepancy().abs() < 1.0);
        let back = parse_zeros_str(&z.to_text()).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn symmetric_sum_at_zero_height() {
        let z = ZeroOrdinates::first_hundred();
        let s = sum_f_over_zeros(0.75, 0.0, &z).unwrap();
        let direct: f64 = z.gammas().iter().map(|&g| 2.0 * eval_f(0.25, g)).sum();
        assert!((s.value - direct).abs() < 1e-15);
        assert!(s.tail_bound > 0.0);
    }

    #[test]
    fn coverage_is_enforced() {
        let z = ZeroOrdinates::first_hundred();
        assert!(matches!(
            sum_f_over_zeros(0.75, z.height() - 50.0, &z),
            Err(Error::Coverage(_))
        ));
        assert!(matches!(
            sum_f_over_zeros(0.5, 10.0, &z),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tail_bound_dominates_known_tail() {
        // Σ_{γ > γ_50} 2γ^{-2} over the embedded zeros is below the bound.
        let z = ZeroOrdinates::first_hundred();
        let g = z.gammas();
        let actual: f64 = g[50..].iter().map(|x| 2.0 * x.powi(-2)).sum();
        let bound = zero_tail_bound(|u| 2.0 * u.powi(-2), g[49]).unwrap();
        assert!(actual < bound, "{actual} vs {bound}");
    }

    #[test]
    fn background_terms_at_large_height() {
        // −¼Re ψ' ~ −½ Re 1/(σ/2+1+it/2) is O(1/t²); the pole term is too.
        let (g, p) = background_terms(0.75, 500.0).unwrap();
        assert!(g.abs() < 1e-4 && p.abs() < 1e-5);
        assert!(g < 0.0 && p < 0.0);
    }
}
