//! Smooth real functions of one variable as immutable expression trees.
//!
//! Nodes evaluate to Taylor jets, so `diff` of any order is exact. Each node
//! carries conservative support metadata; evaluation outside the support returns
//! exactly zero. Integrals over compact supports use adaptive Gauss–Kronrod
//! quadrature split at the breakpoints reported by the tree.

pub mod jet;
pub mod json;
pub mod quad;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
pub use jet::Jet;
use quad::DEFAULT_ABS_TOL;

/// Closed interval `[lo, hi]`; empty when `lo > hi`. Bounds may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Support {
    pub lo: f64,
    pub hi: f64,
}

impl Support {
    pub const EMPTY: Support = Support { lo: f64::INFINITY, hi: f64::NEG_INFINITY };
    pub const REAL: Support = Support { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    pub fn new(lo: f64, hi: f64) -> Self {
        Support { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.is_empty() || (self.lo.is_finite() && self.hi.is_finite())
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn intersect(&self, o: &Support) -> Support {
        let s = Support { lo: self.lo.max(o.lo), hi: self.hi.min(o.hi) };
        if s.is_empty() {
            Support::EMPTY
        } else {
            s
        }
    }

    pub fn hull(&self, o: &Support) -> Support {
        if self.is_empty() {
            return *o;
        }
        if o.is_empty() {
            return *self;
        }
        Support { lo: self.lo.min(o.lo), hi: self.hi.max(o.hi) }
    }
}

#[derive(Debug)]
pub(crate) enum Node {
    Const(f64),
    /// `Σ c_k x^k`
    Poly(Vec<f64>),
    /// `exp(rate · x)`
    Exp(f64),
    /// `exp(-r² / (r² - (x-a)²))` on `(a-r, a+r)`
    Bump { center: f64, radius: f64 },
    /// `θ(x - at)` when rising, `θ(at - x)` otherwise. Not smooth; only used in
    /// distribution kernels, which are integrated but never differentiated.
    Step { at: f64, rising: bool },
    Sum(Vec<SymExpr>),
    Product(Vec<SymExpr>),
    Pow(SymExpr, u32),
    Deriv(SymExpr, u32),
    Cumulative(Cumulative),
}

/// `x ↦ ∫_{-∞}^x integrand(y) dy` with the panel prefix sums precomputed.
#[derive(Debug)]
pub(crate) struct Cumulative {
    pub(crate) integrand: SymExpr,
    knots: Vec<f64>,
    prefix: Vec<f64>,
    total: f64,
    /// The integrand has zero total integral, so the value vanishes past `hi`.
    pub(crate) compact: bool,
}

impl Cumulative {
    fn build(integrand: SymExpr, compact: bool) -> Result<Self> {
        let s = integrand.support();
        if !s.is_bounded() {
            return Err(Error::NonIntegrable(
                "heaviside convolution of a function without compact support".into(),
            ));
        }
        if s.is_empty() {
            return Ok(Cumulative { integrand, knots: vec![], prefix: vec![], total: 0.0, compact });
        }
        const PANELS: usize = 24;
        let mut knots: Vec<f64> =
            (0..=PANELS).map(|i| s.lo + (s.hi - s.lo) * i as f64 / PANELS as f64).collect();
        let mut br = Vec::new();
        integrand.collect_breakpoints(&mut br);
        knots.extend(br.into_iter().filter(|&t| t > s.lo && t < s.hi));
        knots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        knots.dedup();
        let f = |x: f64| integrand.eval(x);
        let tol = DEFAULT_ABS_TOL / knots.len() as f64;
        let mut prefix = Vec::with_capacity(knots.len());
        let mut acc = 0.0;
        prefix.push(0.0);
        for w in knots.windows(2) {
            acc += quad::adaptive(&f, w[0], w[1], tol);
            prefix.push(acc);
        }
        Ok(Cumulative { integrand, knots, prefix, total: acc, compact })
    }

    fn value(&self, x: f64) -> f64 {
        if self.knots.is_empty() || x <= self.knots[0] {
            return 0.0;
        }
        let last = *self.knots.last().unwrap();
        if x >= last {
            return if self.compact { 0.0 } else { self.total };
        }
        let k = self.knots.partition_point(|&t| t <= x) - 1;
        let f = |y: f64| self.integrand.eval(y);
        self.prefix[k] + quad::adaptive(&f, self.knots[k], x, 1e-14)
    }
}

#[derive(Debug)]
struct Inner {
    node: Node,
    support: Support,
    smooth: bool,
}

/// Immutable, cheaply clonable expression in the single variable `x`.
#[derive(Clone)]
pub struct SymExpr(Arc<Inner>);

impl fmt::Debug for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", json::to_json_string(self))
    }
}

impl SymExpr {
    fn from_node(node: Node, support: Support, smooth: bool) -> Self {
        SymExpr(Arc::new(Inner { node, support, smooth }))
    }

    pub(crate) fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn zero() -> Self {
        SymExpr::from_node(Node::Const(0.0), Support::EMPTY, true)
    }

    pub fn constant(c: f64) -> Self {
        if c == 0.0 {
            SymExpr::zero()
        } else {
            SymExpr::from_node(Node::Const(c), Support::REAL, true)
        }
    }

    pub fn x() -> Self {
        SymExpr::poly(vec![0.0, 1.0])
    }

    pub fn poly(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => SymExpr::zero(),
            1 => SymExpr::constant(coeffs[0]),
            _ => SymExpr::from_node(Node::Poly(coeffs), Support::REAL, true),
        }
    }

    pub fn exp(rate: f64) -> Self {
        if rate == 0.0 {
            SymExpr::constant(1.0)
        } else {
            SymExpr::from_node(Node::Exp(rate), Support::REAL, true)
        }
    }

    /// Standard bump `b_{a,r}(x) = exp(-r²/(r²-(x-a)²))`, supported on `[a-r, a+r]`.
    pub fn bump(center: f64, radius: f64) -> Self {
        assert!(radius > 0.0, "bump radius must be positive");
        SymExpr::from_node(
            Node::Bump { center, radius },
            Support::new(center - radius, center + radius),
            true,
        )
    }

    /// Heaviside step `θ(x-at)` (rising) or `θ(at-x)` (falling).
    pub fn step(at: f64, rising: bool) -> Self {
        let s = if rising {
            Support::new(at, f64::INFINITY)
        } else {
            Support::new(f64::NEG_INFINITY, at)
        };
        SymExpr::from_node(Node::Step { at, rising }, s, false)
    }

    /// `x ↦ ∫ θ(x-y) f(y) dy`.
    pub fn heaviside_convolve(f: &SymExpr) -> Result<SymExpr> {
        if f.is_zero() {
            return Ok(SymExpr::zero());
        }
        let lo = f.support().lo;
        let smooth = f.is_smooth();
        let c = Cumulative::build(f.clone(), false)?;
        Ok(SymExpr::from_node(Node::Cumulative(c), Support::new(lo, f64::INFINITY), smooth))
    }

    /// Like [`heaviside_convolve`](Self::heaviside_convolve) for an integrand whose
    /// total integral vanishes identically; the result keeps the integrand's support.
    pub fn heaviside_convolve_compact(f: &SymExpr) -> Result<SymExpr> {
        if f.is_zero() {
            return Ok(SymExpr::zero());
        }
        let s = f.support();
        let smooth = f.is_smooth();
        let c = Cumulative::build(f.clone(), true)?;
        Ok(SymExpr::from_node(Node::Cumulative(c), s, smooth))
    }

    pub fn support(&self) -> Support {
        self.0.support
    }

    pub fn is_smooth(&self) -> bool {
        self.0.smooth
    }

    pub fn is_zero(&self) -> bool {
        self.0.support.is_empty()
    }

    pub fn as_const(&self) -> Option<f64> {
        match self.node() {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn scale(&self, c: f64) -> SymExpr {
        SymExpr::product(vec![SymExpr::constant(c), self.clone()])
    }

    pub fn sum(terms: Vec<SymExpr>) -> SymExpr {
        let mut flat = Vec::with_capacity(terms.len());
        let mut c = 0.0;
        for t in terms {
            if t.is_zero() {
                continue;
            }
            match t.node() {
                Node::Const(v) => c += v,
                Node::Sum(inner) => {
                    for s in inner {
                        match s.node() {
                            Node::Const(v) => c += v,
                            _ => flat.push(s.clone()),
                        }
                    }
                }
                _ => flat.push(t),
            }
        }
        if c != 0.0 {
            flat.push(SymExpr::constant(c));
        }
        match flat.len() {
            0 => SymExpr::zero(),
            1 => flat.pop().unwrap(),
            _ => {
                let support = flat.iter().fold(Support::EMPTY, |s, t| s.hull(&t.support()));
                let smooth = flat.iter().all(|t| t.is_smooth());
                SymExpr::from_node(Node::Sum(flat), support, smooth)
            }
        }
    }

    pub fn product(factors: Vec<SymExpr>) -> SymExpr {
        let mut flat: Vec<SymExpr> = Vec::with_capacity(factors.len());
        let mut c = 1.0;
        let mut poly: Option<Vec<f64>> = None;
        let mut push = |f: &SymExpr, flat: &mut Vec<SymExpr>, c: &mut f64| match f.node() {
            Node::Const(v) => *c *= v,
            Node::Poly(p) => {
                poly = Some(match poly.take() {
                    None => p.clone(),
                    Some(q) => poly_mul(&q, p),
                })
            }
            _ => flat.push(f.clone()),
        };
        for f in &factors {
            if f.is_zero() {
                return SymExpr::zero();
            }
            match f.node() {
                Node::Product(inner) => {
                    for g in inner {
                        push(g, &mut flat, &mut c);
                    }
                }
                _ => push(f, &mut flat, &mut c),
            }
        }
        if c == 0.0 {
            return SymExpr::zero();
        }
        if let Some(p) = poly {
            let scaled: Vec<f64> = p.iter().map(|v| v * c).collect();
            c = 1.0;
            let pe = SymExpr::poly(scaled);
            if pe.is_zero() {
                return SymExpr::zero();
            }
            flat.insert(0, pe);
        }
        if c != 1.0 {
            flat.insert(0, SymExpr::constant(c));
        }
        match flat.len() {
            0 => SymExpr::constant(c),
            1 => flat.pop().unwrap(),
            _ => {
                let support = flat.iter().fold(Support::REAL, |s, t| s.intersect(&t.support()));
                if support.is_empty() {
                    return SymExpr::zero();
                }
                let smooth = flat.iter().all(|t| t.is_smooth());
                SymExpr::from_node(Node::Product(flat), support, smooth)
            }
        }
    }

    pub fn powi(&self, n: u32) -> SymExpr {
        match n {
            0 => SymExpr::constant(1.0),
            1 => self.clone(),
            _ if self.is_zero() => SymExpr::zero(),
            _ => match self.node() {
                Node::Const(c) => SymExpr::constant(c.powi(n as i32)),
                _ => SymExpr::from_node(Node::Pow(self.clone(), n), self.support(), self.is_smooth()),
            },
        }
    }

    /// Exact `k`-th derivative.
    pub fn diff(&self, k: u32) -> SymExpr {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        match self.node() {
            Node::Const(_) | Node::Step { .. } => SymExpr::zero(),
            Node::Poly(p) => {
                let mut q = p.clone();
                for _ in 0..k {
                    q = q.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect();
                }
                SymExpr::poly(q)
            }
            Node::Exp(rate) => self.scale(rate.powi(k as i32)),
            Node::Sum(terms) => SymExpr::sum(terms.iter().map(|t| t.diff(k)).collect()),
            Node::Deriv(inner, m) => inner.diff(k + m),
            Node::Cumulative(c) => {
                if c.integrand.is_zero() {
                    SymExpr::zero()
                } else {
                    c.integrand.diff(k - 1)
                }
            }
            _ => SymExpr::from_node(Node::Deriv(self.clone(), k), self.support(), self.is_smooth()),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.jet(x, 0).value()
    }

    /// Taylor jet of order `order` at `x`.
    pub fn jet(&self, x: f64, order: usize) -> Jet {
        if !self.0.support.contains(x) {
            return Jet::zero(order);
        }
        match self.node() {
            Node::Const(c) => Jet::constant(*c, order),
            Node::Poly(p) => poly_jet(p, x, order),
            Node::Exp(rate) => {
                let mut j = Jet::zero(order);
                let e = (rate * x).exp();
                let mut r = 1.0;
                for k in 0..=order {
                    j.set_coeff(k, e * r);
                    r *= rate / (k + 1) as f64;
                }
                j
            }
            Node::Bump { center, radius } => bump_jet(*center, *radius, x, order),
            Node::Step { at, rising } => {
                let on = if *rising { x >= *at } else { x <= *at };
                // The jump value sits at the midpoint.
                let v = if x == *at { 0.5 } else if on { 1.0 } else { 0.0 };
                Jet::constant(v, order)
            }
            Node::Sum(terms) => {
                let mut acc = Jet::zero(order);
                for t in terms {
                    acc = acc + t.jet(x, order);
                }
                acc
            }
            Node::Product(factors) => {
                let mut acc = Jet::constant(1.0, order);
                for f in factors {
                    let j = f.jet(x, order);
                    if j.is_zero() {
                        return Jet::zero(order);
                    }
                    acc = acc * j;
                }
                acc
            }
            Node::Pow(base, n) => base.jet(x, order).powi(*n),
            Node::Deriv(inner, k) => inner.jet(x, order + *k as usize).shift(*k as usize),
            Node::Cumulative(c) => {
                let v = c.value(x);
                if order == 0 {
                    Jet::constant(v, 0)
                } else {
                    c.integrand.jet(x, order - 1).integrate(v)
                }
            }
        }
    }

    pub(crate) fn collect_breakpoints(&self, out: &mut Vec<f64>) {
        match self.node() {
            Node::Bump { center, radius } => {
                out.push(center - radius);
                out.push(*center);
                out.push(center + radius);
            }
            Node::Step { at, .. } => out.push(*at),
            Node::Sum(v) | Node::Product(v) => v.iter().for_each(|t| t.collect_breakpoints(out)),
            Node::Pow(b, _) | Node::Deriv(b, _) => b.collect_breakpoints(out),
            Node::Cumulative(c) => {
                let s = c.integrand.support();
                if !s.is_empty() {
                    out.push(s.lo);
                    out.push(s.hi);
                }
                c.integrand.collect_breakpoints(out);
            }
            Node::Const(_) | Node::Poly(_) | Node::Exp(_) => {}
        }
    }

    /// Breakpoints of the tree (bump edges, steps, convolution edges), sorted.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut v = Vec::new();
        self.collect_breakpoints(&mut v);
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v.dedup();
        v
    }

    /// `∫ f dx` over the declared support.
    pub fn integrate(&self) -> Result<f64> {
        self.integrate_tol(DEFAULT_ABS_TOL)
    }

    pub fn integrate_tol(&self, tol: f64) -> Result<f64> {
        let s = self.support();
        if s.is_empty() {
            return Ok(0.0);
        }
        if !s.is_bounded() {
            return Err(Error::NonIntegrable(format!(
                "support [{}, {}] is unbounded",
                s.lo, s.hi
            )));
        }
        Ok(self.integrate_over_tol(s.lo, s.hi, tol))
    }

    /// `∫_a^b f dx` (restricted to the declared support).
    pub fn integrate_over(&self, a: f64, b: f64) -> f64 {
        self.integrate_over_tol(a, b, DEFAULT_ABS_TOL)
    }

    fn integrate_over_tol(&self, a: f64, b: f64, tol: f64) -> f64 {
        let s = self.support().intersect(&Support::new(a, b));
        if s.is_empty() || s.lo == s.hi {
            return 0.0;
        }
        let f = |x: f64| self.eval(x);
        quad::adaptive_with_breaks(&f, s.lo, s.hi, &self.breakpoints(), tol)
    }
}

/// `∫ f dx` (free-function form).
pub fn integrate(f: &SymExpr) -> Result<f64> {
    f.integrate()
}

/// Exact `k`-th derivative (free-function form).
pub fn diff(f: &SymExpr, k: u32) -> SymExpr {
    f.diff(k)
}

pub fn heaviside_convolve(f: &SymExpr) -> Result<SymExpr> {
    SymExpr::heaviside_convolve(f)
}

/// `∫ b_{0,1}`, the normalization of the smooth step.
pub fn standard_bump_integral() -> f64 {
    static V0: OnceLock<f64> = OnceLock::new();
    *V0.get_or_init(|| SymExpr::bump(0.0, 1.0).integrate_tol(1e-15).unwrap())
}

/// `θ̃'`: the standard bump normalized to unit mass.
pub fn smooth_step_density() -> SymExpr {
    SymExpr::bump(0.0, 1.0).scale(1.0 / standard_bump_integral())
}

/// Smoothed Heaviside `θ̃`: 0 for `x ≤ -1`, 1 for `x ≥ 1`, `θ̃ - θ` supported in `[-1, 1]`.
pub fn smooth_step() -> SymExpr {
    static STEP: OnceLock<SymExpr> = OnceLock::new();
    STEP.get_or_init(|| SymExpr::heaviside_convolve(&smooth_step_density()).unwrap()).clone()
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_jet(p: &[f64], x: f64, order: usize) -> Jet {
    let mut j = Jet::zero(order);
    let mut q = p.to_vec();
    for k in 0..=order {
        if q.is_empty() {
            break;
        }
        let v = q.iter().rev().fold(0.0, |acc, c| acc * x + c);
        j.set_coeff(k, v);
        // q <- q' / (k+1)
        q = q.iter().enumerate().skip(1).map(|(i, c)| c * i as f64 / (k + 1) as f64).collect();
    }
    j
}

fn bump_jet(center: f64, radius: f64, x: f64, order: usize) -> Jet {
    let t = x - center;
    let r2 = radius * radius;
    let q0 = r2 - t * t;
    if q0 <= 0.0 {
        return Jet::zero(order);
    }
    let g0 = -r2 / q0;
    if g0 < -740.0 {
        return Jet::zero(order);
    }
    let mut q = Jet::constant(q0, order);
    if order >= 1 {
        q.set_coeff(1, -2.0 * t);
    }
    if order >= 2 {
        q.set_coeff(2, -1.0);
    }
    q.recip().scale(-r2).exp()
}

impl Add for &SymExpr {
    type Output = SymExpr;
    fn add(self, rhs: &SymExpr) -> SymExpr {
        SymExpr::sum(vec![self.clone(), rhs.clone()])
    }
}

impl Sub for &SymExpr {
    type Output = SymExpr;
    fn sub(self, rhs: &SymExpr) -> SymExpr {
        SymExpr::sum(vec![self.clone(), rhs.scale(-1.0)])
    }
}

impl Mul for &SymExpr {
    type Output = SymExpr;
    fn mul(self, rhs: &SymExpr) -> SymExpr {
        SymExpr::product(vec![self.clone(), rhs.clone()])
    }
}

impl Neg for &SymExpr {
    type Output = SymExpr;
    fn neg(self) -> SymExpr {
        self.scale(-1.0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for SymExpr {
            type Output = SymExpr;
            fn $m(self, rhs: SymExpr) -> SymExpr {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for SymExpr {
    type Output = SymExpr;
    fn neg(self) -> SymExpr {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b01() -> SymExpr {
        SymExpr::bump(0.0, 1.0)
    }

    #[test]
    fn polynomial_derivatives() {
        let x2 = SymExpr::poly(vec![0.0, 0.0, 1.0]);
        assert!(x2.diff(3).is_zero());
        assert_eq!(x2.diff(1).eval(2.5), 5.0);
        assert_eq!(diff(&x2, 0).eval(3.0), 9.0);
    }

    #[test]
    fn bump_is_even_and_compact() {
        let b = b01();
        assert_eq!(b.diff(1).eval(0.0), 0.0);
        assert_eq!(b.eval(1.0), 0.0);
        assert_eq!(b.eval(-3.0), 0.0);
        assert!((b.eval(0.0) - (-1f64).exp()).abs() < 1e-16);
        assert!((b.eval(0.3) - b.eval(-0.3)).abs() < 1e-16);
    }

    #[test]
    fn product_support_is_intersection() {
        let p = &SymExpr::bump(0.0, 1.0) * &SymExpr::bump(1.5, 1.0);
        assert_eq!(p.support(), Support::new(0.5, 1.0));
        let z = &SymExpr::bump(0.0, 1.0) * &SymExpr::bump(5.0, 1.0);
        assert!(z.is_zero());
        let s = &SymExpr::bump(0.0, 1.0) + &SymExpr::bump(5.0, 1.0);
        assert_eq!(s.support(), Support::new(-1.0, 6.0));
    }

    #[test]
    fn restricted_integral_of_square() {
        let x2 = SymExpr::poly(vec![0.0, 0.0, 1.0]);
        assert!((x2.integrate_over(0.0, 1.0) - 1.0 / 3.0).abs() < 1e-12);
        assert!(matches!(x2.integrate(), Err(Error::NonIntegrable(_))));
    }

    #[test]
    fn derivative_of_compact_integrates_to_zero() {
        let f = &SymExpr::poly(vec![1.0, 2.0, -0.5]) * &SymExpr::bump(0.3, 1.2);
        assert!(f.diff(1).integrate().unwrap().abs() < 1e-10);
        assert!(f.diff(3).integrate().unwrap().abs() < 1e-10);
    }

    #[test]
    fn heaviside_convolution_limits() {
        let b = b01();
        let h = heaviside_convolve(&b).unwrap();
        let v0 = b.integrate().unwrap();
        assert_eq!(h.eval(2.0), h.eval(10.0));
        assert!((h.eval(2.0) - v0).abs() < 1e-15);
        assert_eq!(h.eval(-2.0), 0.0);
        assert!((h.eval(0.0) - 0.5 * v0).abs() < 1e-13);
        // derivative of the convolution is the integrand
        assert!((h.diff(1).eval(0.4) - b.eval(0.4)).abs() < 1e-16);
        assert!(heaviside_convolve(&SymExpr::x()).is_err());
    }

    #[test]
    fn smooth_step_values() {
        let t = smooth_step();
        assert_eq!(t.eval(-2.0), 0.0);
        assert!((t.eval(2.0) - 1.0).abs() < 1e-14);
        assert!((t.eval(0.0) - 0.5).abs() < 1e-13);
        let mut prev = 0.0;
        for i in 0..=40 {
            let v = t.eval(-1.0 + i as f64 * 0.05);
            assert!(v >= prev - 1e-15);
            prev = v;
        }
    }

    #[test]
    fn integration_by_parts() {
        let f = &SymExpr::poly(vec![0.5, -1.0, 0.25]) * &SymExpr::bump(-0.2, 1.1);
        let g = &SymExpr::exp(0.7) * &SymExpr::bump(0.4, 1.0);
        let lhs = (&f.diff(1) * &g).integrate().unwrap() + (&f * &g.diff(1)).integrate().unwrap();
        assert!(lhs.abs() < 1e-11);
    }

    #[test]
    fn step_only_in_kernels() {
        let s = SymExpr::step(0.5, false);
        assert!(!s.is_smooth());
        assert_eq!(s.eval(0.0), 1.0);
        assert_eq!(s.eval(1.0), 0.0);
        let v = (&s * &SymExpr::bump(0.0, 1.0)).integrate().unwrap();
        let w = SymExpr::bump(0.0, 1.0).integrate_over(-1.0, 0.5);
        assert!((v - w).abs() < 1e-12);
    }

    #[test]
    fn pow_and_exp() {
        let e = SymExpr::exp(2.0);
        assert!((e.diff(2).eval(0.3) - 4.0 * (0.6f64).exp()).abs() < 1e-13);
        let p = (&SymExpr::x() + &SymExpr::constant(1.0)).powi(3);
        assert!((p.diff(1).eval(1.0) - 12.0).abs() < 1e-13);
    }
}
