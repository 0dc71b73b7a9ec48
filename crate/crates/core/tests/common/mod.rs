//! Test-only oracles that share no code with the library.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// Truncated Taylor series `Σ c_k t^k` about a fixed point.
#[derive(Clone, Debug)]
pub struct Jet(pub Vec<f64>);

impl Jet {
    pub fn constant(v: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = v;
        Jet(c)
    }

    /// `sin(freq·(x0 + t))` or, with `phase = π/2`, `cos(freq·(x0 + t))`.
    fn harmonic(freq: f64, x0: f64, phase: f64, order: usize) -> Self {
        let mut c = Vec::with_capacity(order + 1);
        let mut scale = 1.0;
        for k in 0..=order {
            if k > 0 {
                scale *= freq / k as f64;
            }
            c.push(scale * (freq * x0 + phase + k as f64 * FRAC_PI_2).sin());
        }
        Jet(c)
    }

    pub fn sin(freq: f64, x0: f64, order: usize) -> Self {
        Self::harmonic(freq, x0, 0.0, order)
    }

    pub fn cos(freq: f64, x0: f64, order: usize) -> Self {
        Self::harmonic(freq, x0, FRAC_PI_2, order)
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let n = self.0.len();
        let mut out = vec![0.0; n];
        for i in 0..n {
            for j in 0..n - i {
                out[i + j] += self.0[i] * other.0[j];
            }
        }
        Jet(out)
    }

    pub fn powi(&self, e: u32) -> Jet {
        (0..e).fold(Jet::constant(1.0, self.0.len() - 1), |acc, _| acc.mul(self))
    }

    /// `f^{(k)}(x0)`.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.0[k] * fact
    }
}

/// `d^h/dx^h [sin^a(px) cos^c(qx)]` at `x` by Taylor-mode differentiation.
pub fn derivative_by_jets(a: u32, c: u32, p: u64, q: u64, h: u32, x: f64) -> f64 {
    let order = h as usize;
    let s = Jet::sin(p as f64, x, order).powi(a);
    let k = Jet::cos(q as f64, x, order).powi(c);
    s.mul(&k).derivative(order)
}
