//! Interpolation nodes of the extremal functions and weighted node sums.
//!
//! The minorant interpolates f_a on (1/Δ)ℤ and the majorant with E = 0 on
//! (1/Δ)(ℤ + ½). For E > 0 the majorant nodes are t/Δ where t runs over the
//! real zeros of B(z) = cos(πz) − Eπz·sin(πz), and the weighted sum
//! (1/Δ)Σ w(t)F(t/Δ) with w(t) = 1 − E/(π²E²t² + 1 + E) recovers F̂(0) for
//! every integrable F of exponential type 2πΔ.

use serde::Serialize;

use super::{eval_f, Approximant};
use crate::error::{Error, Result};
use crate::exec::{sum_range, Execution};
use crate::quad::Estimate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    Lattice,
    HalfLattice,
    BFunctionZeros,
}

/// Nodes symmetric about 0 in ascending order, with their weights. Positive
/// nodes are indexed by k = 0, 1, ...; node k lies in [k, k + ½]·(1/Δ), and
/// exactly the indices k < `count` are present.
#[derive(Clone, Debug, Serialize)]
pub struct NodeSet {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: NodeKind,
    /// The structure-function parameter E (0 for the lattices).
    pub e: f64,
    pub delta: f64,
    /// Number of nonnegative indices kept.
    pub count: usize,
}

/// B(z) = cos(πz) − Eπz·sin(πz), with the argument reduced mod 2 exactly.
pub fn structure_function(e: f64, z: f64) -> f64 {
    let z = z.abs();
    let n = z.floor();
    let u = z - n;
    let (s, c) = (std::f64::consts::PI * u).sin_cos();
    let sign = if (n as u64).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    sign * (c - e * std::f64::consts::PI * z * s)
}

/// Littmann weight at a zero t of B.
pub fn littmann_weight(e: f64, t: f64) -> f64 {
    let pe = std::f64::consts::PI * e;
    1.0 - e / (pe * pe * t * t + 1.0 + e)
}

/// The zero of B in (k, k + ½). On that interval B(k + u)·(−1)^k =
/// cos πu − Eπ(k+u) sin πu falls strictly from 1 to −Eπ(k+½); on
/// [k + ½, k + 1) both terms are negative, so this is the only zero in
/// (k, k + 1). The bracket is checked rather than assumed.
fn b_zero(e: f64, k: usize) -> Result<f64> {
    use std::f64::consts::PI;
    let kf = k as f64;
    let g = |u: f64| {
        let (s, c) = (PI * u).sin_cos();
        c - e * PI * (kf + u) * s
    };
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    if !(g(lo) > 0.0 && g(hi) <= 0.0) {
        return Err(Error::RootFinding(format!(
            "B has no sign change on ({k}, {k}.5) for E = {e}"
        )));
    }
    if g(hi) == 0.0 {
        return Ok(kf + hi);
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u = if g(lo).abs() < g(hi).abs() { lo } else { hi };
    Ok(kf + u)
}

impl NodeSet {
    /// The nodes of `h` with nonnegative index below `count`.
    pub fn with_count(h: &Approximant, count: usize) -> Result<NodeSet> {
        let p = h.params();
        let (kind, e) = match h {
            Approximant::Minorant(..) => (NodeKind::Lattice, 0.0),
            Approximant::Majorant(_, k) if k.E == 0.0 => (NodeKind::HalfLattice, 0.0),
            Approximant::Majorant(_, k) => (NodeKind::BFunctionZeros, k.E),
        };
        let positive: Vec<f64> = match kind {
            NodeKind::Lattice => (0..count).map(|k| k as f64).collect(),
            NodeKind::HalfLattice => (0..count).map(|k| k as f64 + 0.5).collect(),
            NodeKind::BFunctionZeros => (0..count).map(|k| b_zero(e, k)).collect::<Result<_>>()?,
        };
        let mut zs: Vec<f64> = positive
            .iter()
            .rev()
            .filter(|&&z| z > 0.0)
            .map(|z| -z)
            .collect();
        zs.extend(&positive);
        let weights = zs.iter().map(|&z| littmann_weight(e, z)).collect();
        Ok(NodeSet {
            nodes: zs.iter().map(|z| z / p.delta).collect(),
            weights,
            kind,
            e,
            delta: p.delta,
            count,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Bracket [lo, hi] for (1/Δ)Σ_{excluded nodes} w·F.
    pub fn tail_bracket(&self, tail: NodeTail) -> (f64, f64) {
        let k = self.count as f64;
        let dl = self.delta;
        match tail {
            NodeTail::Zero => (0.0, 0.0),
            NodeTail::InverseSquare { c } => {
                // |F(z/Δ)| ≤ cΔ²/z² and z_k ≥ k.
                let kk = k.max(1.0);
                let b = 2.0 / dl * c * dl * dl * (1.0 / (kk * kk) + 1.0 / kk);
                (-b, b)
            }
            NodeTail::Interpolates { a } => {
                // F = f_a at every node, f_a ≥ 0 and decreasing beyond √3·a,
                // z_k ∈ [k, k + ½], and the weights lie in [w(k), 1].
                let x0 = k / dl;
                let x1 = (k + 0.5) / dl;
                let phi = |x: f64| x / (x * x + a * a);
                let upper = eval_f(a, x0) + dl * phi(x0);
                let lower = littmann_weight(self.e, k) * dl * phi(x1);
                (2.0 / dl * lower, 2.0 / dl * upper)
            }
        }
    }
}

/// How the discarded part of a weighted node sum is controlled.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NodeTail {
    /// F vanishes at every discarded node.
    Zero,
    /// |F(x)| ≤ c/x².
    InverseSquare { c: f64 },
    /// F agrees with f_a at every node (the extremal functions themselves);
    /// requires the first discarded index k to satisfy k/Δ ≥ √3·a.
    Interpolates { a: f64 },
}

/// Nodes of `h` in [−window, window].
pub fn nodes(h: &Approximant, window: f64) -> Result<NodeSet> {
    if !(window > 0.0 && window.is_finite()) {
        return Err(Error::domain(format!(
            "window must be positive, got {window}"
        )));
    }
    let p = h.params();
    let zmax = window * p.delta;
    let count = match h {
        Approximant::Minorant(..) => zmax.floor() as usize + 1,
        Approximant::Majorant(_, k) if k.E == 0.0 => {
            if zmax < 0.5 {
                0
            } else {
                (zmax - 0.5).floor() as usize + 1
            }
        }
        Approximant::Majorant(_, k) => {
            // z_k > k, so only indices below zmax can qualify.
            let mut n = 0;
            while (n as f64) < zmax && b_zero(k.E, n)? <= zmax {
                n += 1;
            }
            n
        }
    };
    NodeSet::with_count(h, count)
}

/// Nodes of `h` with enough indices that the `Interpolates` tail bracket is
/// narrower than `2·tol`.
pub fn nodes_for_tolerance(h: &Approximant, tol: f64) -> Result<NodeSet> {
    let p = h.params();
    let min_count = ((3f64.sqrt() * p.a * p.delta).ceil() as usize + 1).max(32);
    let mut count = min_count;
    loop {
        let probe = NodeSet {
            nodes: vec![],
            weights: vec![],
            kind: NodeKind::Lattice,
            e: match h {
                Approximant::Majorant(_, k) => k.E,
                _ => 0.0,
            },
            delta: p.delta,
            count,
        };
        let (lo, hi) = probe.tail_bracket(NodeTail::Interpolates { a: p.a });
        if 0.5 * (hi - lo) <= tol {
            break;
        }
        if count > 1 << 26 {
            return Err(Error::Tail {
                bound: 0.5 * (hi - lo),
                tolerance: tol,
            });
        }
        count *= 2;
    }
    NodeSet::with_count(h, count)
}

/// (1/Δ)Σ w·F over the node set plus the midpoint of the tail bracket; the
/// error is the bracket half-width plus a rounding allowance.
pub fn weighted_node_sum<F>(
    exec: Execution,
    f: &F,
    ns: &NodeSet,
    tail: NodeTail,
) -> Result<Estimate>
where
    F: Fn(f64) -> f64 + Sync + ?Sized,
{
    if let NodeTail::Interpolates { a } = tail {
        let first = ns.count as f64 / ns.delta;
        if first < 3f64.sqrt() * a {
            return Err(Error::domain(format!(
                "node window ends at {first}, before f_a starts decreasing at {}",
                3f64.sqrt() * a
            )));
        }
    }
    let terms = |i: usize| ns.weights[i] * f(ns.nodes[i]);
    let body = sum_range(exec, ns.len(), terms) / ns.delta;
    let abs = sum_range(exec, ns.len(), |i| terms(i).abs()) / ns.delta;
    let (lo, hi) = ns.tail_bracket(tail);
    let value = body + 0.5 * (lo + hi);
    if !value.is_finite() {
        return Err(Error::domain("node sum is not finite"));
    }
    Ok(Estimate {
        value,
        error: 0.5 * (hi - lo) + 4.0 * f64::EPSILON * (ns.len() as f64).sqrt() * abs,
        evaluations: ns.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{majorant_mass, minorant_mass, ApproxParams, Approximant};
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn lattices() {
        let p = ApproxParams::new(0.3, 2.0).unwrap();
        let lo = nodes(&Approximant::minorant(p).unwrap(), 3.0).unwrap();
        assert_eq!(lo.kind, NodeKind::Lattice);
        assert_eq!(lo.len(), 13);
        assert_eq!(lo.nodes[6], 0.0);
        assert!(lo.nodes.windows(2).all(|w| w[0] < w[1]));
        let p = ApproxParams::with_lambda(0.3, 2.0).unwrap();
        let hi = nodes(&Approximant::majorant(p).unwrap(), 10.0).unwrap();
        assert_eq!(hi.kind, NodeKind::HalfLattice);
        for (x, w) in hi.nodes.iter().zip(&hi.weights) {
            let z = x * p.delta;
            assert!((z.abs() - 0.5 - (z.abs() - 0.5).round()).abs() < 1e-12);
            assert_eq!(*w, 1.0);
        }
    }

    #[test]
    fn structure_zeros() {
        let p = ApproxParams::with_lambda(0.25, 0.4).unwrap();
        let h = Approximant::majorant(p).unwrap();
        let ns = nodes(&h, 100.0 / p.delta).unwrap();
        assert_eq!(ns.kind, NodeKind::BFunctionZeros);
        for (x, w) in ns.nodes.iter().zip(&ns.weights) {
            let z = x * p.delta;
            if z.abs() <= 10.0 {
                assert!(structure_function(ns.e, z).abs() < 1e-12, "z = {z}");
            }
            assert!(*w > 0.0 && *w <= 1.0);
        }
        // One zero per unit interval on each side.
        let positive: Vec<f64> = ns
            .nodes
            .iter()
            .filter(|&&x| x > 0.0)
            .map(|x| x * p.delta)
            .collect();
        for (k, z) in positive.iter().enumerate() {
            assert!(*z > k as f64 && *z < k as f64 + 0.5);
        }
    }

    #[test]
    fn zeros_approach_half_lattice_as_e_vanishes() {
        let z = b_zero(1e-6, 0).unwrap();
        assert!((z - 0.5).abs() < 1e-5);
        let z = b_zero(1e-12, 3).unwrap();
        assert!((z - 3.5).abs() < 1e-10);
    }

    #[test]
    fn zero_function_sums_to_zero() {
        let p = ApproxParams::with_lambda(0.3, 0.5).unwrap();
        let ns = nodes(&Approximant::majorant(p).unwrap(), 10.0).unwrap();
        let e = weighted_node_sum(Execution::Sequential, &|_| 0.0, &ns, NodeTail::Zero).unwrap();
        assert_eq!((e.value, e.error), (0.0, 0.0));
    }

    #[test]
    fn lattice_sum_recovers_minorant_mass() {
        let p = ApproxParams::new(1.0, 1.0 / PI).unwrap();
        let h = Approximant::minorant(p).unwrap();
        let ns = nodes_for_tolerance(&h, 1e-10).unwrap();
        let e = weighted_node_sum(
            Execution::Parallel,
            &|x| h.eval(x),
            &ns,
            NodeTail::Interpolates { a: p.a },
        )
        .unwrap();
        assert!(
            (e.value - minorant_mass(&p)).abs() <= e.error + 1e-12,
            "{e:?}"
        );
        assert!(e.error < 1e-9);
    }

    #[test]
    fn weighted_sum_recovers_majorant_mass() {
        for l in [0.3, 0.5, 1.5] {
            let p = ApproxParams::with_lambda(0.25, l).unwrap();
            let h = Approximant::majorant(p).unwrap();
            let mass = majorant_mass(&p);
            let ns = nodes_for_tolerance(&h, 1e-10 * mass).unwrap();
            let e = weighted_node_sum(
                Execution::Parallel,
                &|x| h.eval(x),
                &ns,
                NodeTail::Interpolates { a: p.a },
            )
            .unwrap();
            assert!(
                (e.value - mass).abs() <= e.error + 1e-12 * mass,
                "λ = {l}: {e:?} vs {mass}"
            );
            assert!((e.value - mass).abs() < 1e-8 * mass);
        }
    }

    #[test]
    fn fejer_kernel_on_half_lattice() {
        let p = ApproxParams::with_lambda(0.3, 2.0).unwrap();
        let ns = NodeSet::with_count(&Approximant::majorant(p).unwrap(), 200_000).unwrap();
        let d = p.delta;
        let fejer = |x: f64| {
            let u = PI * d * x;
            (u.sin() / u).powi(2)
        };
        let c = 1.0 / (PI * d).powi(2);
        let e = weighted_node_sum(
            Execution::Parallel,
            &fejer,
            &ns,
            NodeTail::InverseSquare { c },
        )
        .unwrap();
        assert!((e.value - 1.0 / d).abs() <= e.error);
        assert!(e.error < 1e-5 / d);
    }
}
