//! Shared fixtures and oracles for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zeta_toolkit::interp::averaged_bound;
use zeta_toolkit::zero_sums::{load_zeros, ZeroOrdinates};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
        .join(name)
}

/// The shipped table of the first 10^5 positive ordinates.
pub fn fixture() -> &'static ZeroOrdinates {
    static ZEROS: OnceLock<ZeroOrdinates> = OnceLock::new();
    ZEROS.get_or_init(|| {
        let path = data_path("zeros_100k.txt");
        load_zeros(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
    })
}

/// φ(t) = b + Σ c_k cos(ω_k t + θ_k) with the bounds it satisfies:
/// −β0 ≤ φ ≤ α0 and |φ''| ≤ α2 = β2.
#[derive(Clone, Debug)]
pub struct TrigPoly {
    pub offset: f64,
    pub terms: Vec<(f64, f64, f64)>,
}

impl TrigPoly {
    pub fn random(rng: &mut ChaCha8Rng) -> TrigPoly {
        let n = rng.gen_range(1..=6);
        let terms: Vec<_> = (0..n)
            .map(|_| {
                (
                    rng.gen_range(0.05..2.0),
                    rng.gen_range(0.1..3.0),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        let s0: f64 = terms.iter().map(|t| t.0).sum();
        TrigPoly {
            offset: rng.gen_range(-0.9..0.9) * s0,
            terms,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.offset
            + self
                .terms
                .iter()
                .map(|&(c, w, th)| c * (w * t + th).cos())
                .sum::<f64>()
    }

    pub fn derivative(&self, t: f64) -> f64 {
        -self
            .terms
            .iter()
            .map(|&(c, w, th)| c * w * (w * t + th).sin())
            .sum::<f64>()
    }

    pub fn second_derivative(&self, t: f64) -> f64 {
        -self
            .terms
            .iter()
            .map(|&(c, w, th)| c * w * w * (w * t + th).cos())
            .sum::<f64>()
    }

    /// (α0, β0, α2, β2) as constants.
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        let s0: f64 = self.terms.iter().map(|t| t.0).sum();
        let s2: f64 = self.terms.iter().map(|t| t.0 * t.1 * t.1).sum();
        (self.offset + s0, s0 - self.offset, s2, s2)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Minimum of the averaged bound over ν > 0, A ∈ [0, 1] by grid search
/// with repeated zooming around the best point. Returns (value, ν, A).
pub fn brute_force_minimum(a0: f64, b0: f64, a2: f64, b2: f64) -> (f64, f64, f64) {
    let f = |nu: f64, a: f64| averaged_bound(a0, b0, a2, b2, nu, a);
    let scale = ((a0 + b0) / a2.max(b2)).sqrt();
    let (mut lo_n, mut hi_n) = (1e-3 * scale, 1e3 * scale);
    let (mut lo_a, mut hi_a) = (0.0, 1.0);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    let n = 60;
    for _ in 0..40 {
        for i in 0..=n {
            let nu = lo_n + (hi_n - lo_n) * i as f64 / n as f64;
            for j in 0..=n {
                let a = lo_a + (hi_a - lo_a) * j as f64 / n as f64;
                let v = f(nu, a);
                if v < best.0 {
                    best = (v, nu, a);
                }
            }
        }
        let (wn, wa) = (
            4.0 * (hi_n - lo_n) / n as f64,
            4.0 * (hi_a - lo_a) / n as f64,
        );
        lo_n = (best.1 - wn).max(1e-12);
        hi_n = best.1 + wn;
        lo_a = (best.2 - wa).max(0.0);
        hi_a = (best.2 + wa).min(1.0);
    }
    best
}
