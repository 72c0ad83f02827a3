//! Truncated Taylor series in one complex variable.
//!
//! A `Jet` of order n holds the coefficients c_0..c_n of a function around
//! some base point. Arithmetic is exact up to truncation, which makes jets a
//! convenient way to evaluate removable singularities and derivatives of
//! the closed-form extremal functions.

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    c: Vec<Complex64>,
}

impl Jet {
    pub fn constant(value: Complex64, order: usize) -> Jet {
        let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
        c[0] = value;
        Jet { c }
    }

    pub fn from_coeffs(c: Vec<Complex64>) -> Jet {
        assert!(!c.is_empty(), "a jet needs at least one coefficient");
        Jet { c }
    }

    /// The identity function z around `base`.
    pub fn variable(base: Complex64, order: usize) -> Jet {
        let mut j = Jet::constant(base, order);
        if order >= 1 {
            j.c[1] = Complex64::new(1.0, 0.0);
        }
        j
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c
    }

    /// k-th derivative at the base point.
    pub fn derivative(&self, k: usize) -> Complex64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.c.get(k).copied().unwrap_or_default() * fact
    }

    /// Value at base + h.
    pub fn eval(&self, h: Complex64) -> Complex64 {
        self.c
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &x| acc * h + x)
    }

    pub fn scale(&self, k: Complex64) -> Jet {
        Jet {
            c: self.c.iter().map(|&x| x * k).collect(),
        }
    }

    pub fn add_const(&self, k: Complex64) -> Jet {
        let mut j = self.clone();
        j.c[0] += k;
        j
    }

    pub fn add(&self, o: &Jet) -> Jet {
        Jet {
            c: self.c.iter().zip(&o.c).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        Jet {
            c: self.c.iter().zip(&o.c).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        let c = (0..n)
            .map(|k| (0..=k).map(|j| self.c[j] * o.c[k - j]).sum())
            .collect();
        Jet { c }
    }

    pub fn square(&self) -> Jet {
        self.mul(self)
    }

    /// Quotient; the divisor's constant term must be nonzero.
    pub fn div(&self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        let mut q: Vec<Complex64> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= o.c[j] * q[k - j];
            }
            q.push(acc / o.c[0]);
        }
        Jet { c: q }
    }

    /// (sin g, cos g).
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let n = self.c.len();
        let mut s = vec![Complex64::new(0.0, 0.0); n];
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        s[0] = self.c[0].sin();
        c[0] = self.c[0].cos();
        for k in 1..n {
            let mut ds = Complex64::new(0.0, 0.0);
            let mut dc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                let w = self.c[j] * j as f64;
                ds += w * c[k - j];
                dc -= w * s[k - j];
            }
            s[k] = ds / k as f64;
            c[k] = dc / k as f64;
        }
        (Jet { c: s }, Jet { c })
    }

    /// Divide by (z − base)^k, dropping the first k coefficients, which the
    /// caller asserts vanish. The order drops by k.
    pub fn shift_down(&self, k: usize) -> Jet {
        Jet {
            c: self.c[k.min(self.c.len() - 1)..].to_vec(),
        }
    }
}
