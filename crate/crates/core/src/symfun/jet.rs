//! Truncated Taylor jets: `c[k] = f^(k)(x) / k!` for `k <= order`.
//!
//! Every expression node evaluates to a jet, so derivative nodes of any order are
//! exact up to floating-point rounding and no symbolic expression swell occurs.

use std::ops::{Add, Mul, Neg, Sub};

/// Highest derivative order a jet can carry.
pub const MAX_ORDER: usize = 23;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    c: [f64; MAX_ORDER + 1],
    order: usize,
}

impl Jet {
    pub fn zero(order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        Jet { c: [0.0; MAX_ORDER + 1], order }
    }

    pub fn constant(v: f64, order: usize) -> Self {
        let mut j = Jet::zero(order);
        j.c[0] = v;
        j
    }

    /// The jet of the identity function `t ↦ t` at `t = x`.
    pub fn variable(x: f64, order: usize) -> Self {
        let mut j = Jet::constant(x, order);
        if order >= 1 {
            j.c[1] = 1.0;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn coeff(&self, k: usize) -> f64 {
        if k <= self.order {
            self.c[k]
        } else {
            0.0
        }
    }

    pub fn set_coeff(&mut self, k: usize, v: f64) {
        self.c[k] = v;
    }

    /// `f^(k)(x)`.
    pub fn derivative(&self, k: usize) -> f64 {
        self.coeff(k) * factorial(k)
    }

    pub fn is_zero(&self) -> bool {
        self.c[..=self.order].iter().all(|&v| v == 0.0)
    }

    pub fn scale(mut self, s: f64) -> Self {
        for v in &mut self.c[..=self.order] {
            *v *= s;
        }
        self
    }

    /// Jet of `f^(k)` from the jet of `f` (order drops by `k`).
    pub fn shift(&self, k: usize) -> Self {
        assert!(k <= self.order);
        let n = self.order - k;
        let mut out = Jet::zero(n);
        for i in 0..=n {
            out.c[i] = self.c[i + k] * falling(i + k, k);
        }
        out
    }

    /// Jet of the antiderivative whose value is `value`.
    pub fn integrate(&self, value: f64) -> Self {
        let n = (self.order + 1).min(MAX_ORDER);
        let mut out = Jet::zero(n);
        out.c[0] = value;
        for i in 1..=n {
            out.c[i] = self.c[i - 1] / i as f64;
        }
        out
    }

    pub fn truncate(mut self, order: usize) -> Self {
        if order < self.order {
            for v in &mut self.c[order + 1..=self.order] {
                *v = 0.0;
            }
            self.order = order;
        }
        self
    }

    pub fn recip(&self) -> Self {
        let q0 = self.c[0];
        let mut out = Jet::zero(self.order);
        out.c[0] = 1.0 / q0;
        for k in 1..=self.order {
            let s: f64 = (1..=k).map(|j| self.c[j] * out.c[k - j]).sum();
            out.c[k] = -s / q0;
        }
        out
    }

    pub fn exp(&self) -> Self {
        let mut out = Jet::zero(self.order);
        out.c[0] = self.c[0].exp();
        for k in 1..=self.order {
            let s: f64 = (1..=k).map(|j| j as f64 * self.c[j] * out.c[k - j]).sum();
            out.c[k] = s / k as f64;
        }
        out
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Jet::constant(1.0, self.order);
        let mut base = *self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let n = self.order.min(rhs.order);
        let mut out = self.truncate(n);
        for i in 0..=n {
            out.c[i] += rhs.c[i];
        }
        out
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let n = self.order.min(rhs.order);
        let mut out = Jet::zero(n);
        for k in 0..=n {
            let mut s = 0.0;
            for i in 0..=k {
                s += self.c[i] * rhs.c[k - i];
            }
            out.c[k] = s;
        }
        out
    }
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// `n (n-1) ... (n-k+1)`.
fn falling(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_variable_matches_series() {
        let j = Jet::variable(0.5, 6).exp();
        for k in 0..=6 {
            assert!((j.derivative(k) - 0.5f64.exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn recip_and_shift() {
        // 1/(1-x) at 0 has derivatives k!
        let q = Jet::constant(1.0, 5) - Jet::variable(0.0, 5);
        let r = q.recip();
        for k in 0..=5 {
            assert!((r.derivative(k) - factorial(k)).abs() < 1e-12);
        }
        let d = r.shift(2);
        assert_eq!(d.order(), 3);
        assert!((d.derivative(1) - factorial(3)).abs() < 1e-12);
    }

    #[test]
    fn powi_matches_repeated_product() {
        let x = Jet::variable(1.5, 4);
        let p = x.powi(3);
        assert!((p.derivative(0) - 3.375).abs() < 1e-14);
        assert!((p.derivative(1) - 3.0 * 2.25).abs() < 1e-14);
        assert!((p.derivative(3) - 6.0).abs() < 1e-14);
        assert_eq!(p.derivative(4), 0.0);
    }
}
