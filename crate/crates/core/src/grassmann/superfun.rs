//! Elements of `DE ⊗ A`: finite sums `Σ α_I (ξ f₀ + f₁)` over ring monomials.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::ring::{DeformRing, Monomial, Truncation};
use crate::symfun::SymExpr;

/// `ξ·xi + body` with real coefficient functions.
#[derive(Clone, Debug)]
pub struct PureFun {
    pub xi: SymExpr,
    pub body: SymExpr,
}

impl PureFun {
    pub fn zero() -> Self {
        PureFun { xi: SymExpr::zero(), body: SymExpr::zero() }
    }

    pub fn new(xi: SymExpr, body: SymExpr) -> Self {
        PureFun { xi, body }
    }

    pub fn xi(f0: SymExpr) -> Self {
        PureFun { xi: f0, body: SymExpr::zero() }
    }

    pub fn body(f1: SymExpr) -> Self {
        PureFun { xi: SymExpr::zero(), body: f1 }
    }

    pub fn is_zero(&self) -> bool {
        self.xi.is_zero() && self.body.is_zero()
    }

    pub fn scale(&self, c: f64) -> Self {
        PureFun { xi: self.xi.scale(c), body: self.body.scale(c) }
    }

    pub fn add(&self, o: &PureFun) -> Self {
        PureFun { xi: &self.xi + &o.xi, body: &self.body + &o.body }
    }

    /// Split into `ϵ`-homogeneous components.
    pub fn components(&self) -> Vec<Homog> {
        let mut v = Vec::with_capacity(2);
        if !self.xi.is_zero() {
            v.push(Homog::Xi(self.xi.clone()));
        }
        if !self.body.is_zero() {
            v.push(Homog::Body(self.body.clone()));
        }
        v
    }

    /// `(ξ-coefficient, body)` at `x`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        (self.xi.eval(x), self.body.eval(x))
    }

    /// Either component in `D` (both bounded supports).
    pub fn is_compact(&self) -> bool {
        self.xi.support().is_bounded() && self.body.support().is_bounded()
    }
}

/// A homogeneous pure element: `ξa` (ε = 1, ϵ = 0) or `a` (ε = 0, ϵ = 1).
#[derive(Clone, Debug)]
pub enum Homog {
    Xi(SymExpr),
    Body(SymExpr),
}

impl Homog {
    pub fn func(&self) -> &SymExpr {
        match self {
            Homog::Xi(a) | Homog::Body(a) => a,
        }
    }

    /// Grassmann parity `ε`.
    pub fn eps(&self) -> u8 {
        match self {
            Homog::Xi(_) => 1,
            Homog::Body(_) => 0,
        }
    }

    /// Shifted parity `ϵ = ε + 1`.
    pub fn shifted(&self) -> u8 {
        1 - self.eps()
    }

    pub fn to_pure(&self) -> PureFun {
        match self {
            Homog::Xi(a) => PureFun::xi(a.clone()),
            Homog::Body(a) => PureFun::body(a.clone()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parity {
    pub eps: u8,
    pub epsilon: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParityOf {
    Homogeneous(Parity),
    Mixed,
    Zero,
}

/// `∫dξ` against weight `1` or `ξ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiWeight {
    One,
    Xi,
}

#[derive(Clone, Debug)]
pub struct SuperFun {
    trunc: Truncation,
    terms: BTreeMap<Monomial, PureFun>,
}

impl SuperFun {
    pub fn zero(trunc: Truncation) -> Self {
        SuperFun { trunc, terms: BTreeMap::new() }
    }

    /// An uncolored element (coefficient `1`).
    pub fn pure(trunc: Truncation, f: PureFun) -> Self {
        let mut s = Self::zero(trunc);
        s.add_term(Monomial::ONE, 1.0, &f);
        s
    }

    pub fn from_homog(trunc: Truncation, h: &Homog) -> Self {
        Self::pure(trunc, h.to_pure())
    }

    /// `α · f`.
    pub fn colored(alpha: &DeformRing, f: &PureFun) -> Self {
        let mut s = Self::zero(alpha.truncation());
        for (m, c) in alpha.terms() {
            s.add_term(*m, *c, f);
        }
        s
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn add_term(&mut self, m: Monomial, c: f64, f: &PureFun) {
        if c == 0.0 || f.is_zero() || m.hbar > self.trunc.order || (m.thetas >> self.trunc.thetas) != 0 {
            return;
        }
        let scaled = if c == 1.0 { f.clone() } else { f.scale(c) };
        let entry = self.terms.entry(m).or_insert_with(PureFun::zero);
        *entry = entry.add(&scaled);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_homog(&mut self, m: Monomial, c: f64, h: &Homog) {
        self.add_term(m, c, &h.to_pure());
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &PureFun)> {
        self.terms.iter()
    }

    pub fn term(&self, m: &Monomial) -> Option<&PureFun> {
        self.terms.get(m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Flattened `ϵ`-homogeneous components `(monomial, component)`.
    pub fn components(&self) -> Vec<(Monomial, Homog)> {
        self.terms
            .iter()
            .flat_map(|(m, f)| f.components().into_iter().map(move |h| (*m, h)))
            .collect()
    }

    pub fn add(&self, o: &SuperFun) -> Self {
        let mut s = self.clone();
        for (m, f) in &o.terms {
            s.add_term(*m, 1.0, f);
        }
        s
    }

    pub fn sub(&self, o: &SuperFun) -> Self {
        self.add(&o.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut s = Self::zero(self.trunc);
        for (m, f) in &self.terms {
            s.add_term(*m, c, f);
        }
        s
    }

    /// Left multiplication `α · F`.
    pub fn ring_mul_left(&self, alpha: &DeformRing) -> Self {
        let mut s = Self::zero(self.trunc);
        for (ma, ca) in alpha.terms() {
            for (mf, f) in &self.terms {
                if let Some((m, sign)) = ma.mul(mf) {
                    s.add_term(m, sign * ca, f);
                }
            }
        }
        s
    }

    /// Keep only the `ħ^p` coefficients.
    pub fn hbar_order(&self, p: u32) -> Self {
        let mut s = Self::zero(self.trunc);
        for (m, f) in &self.terms {
            if m.hbar == p {
                s.add_term(*m, 1.0, f);
            }
        }
        s
    }

    /// Per monomial, the max of `|ξ-part|` and `|body|` over `grid`.
    pub fn max_abs_by_monomial(&self, grid: &[f64]) -> BTreeMap<Monomial, f64> {
        self.terms
            .iter()
            .map(|(m, f)| {
                let v = grid.iter().fold(0.0f64, |acc, &x| {
                    let (a, b) = f.eval(x);
                    acc.max(a.abs()).max(b.abs())
                });
                (*m, v)
            })
            .collect()
    }

    pub fn max_abs(&self, grid: &[f64]) -> f64 {
        self.max_abs_by_monomial(grid).values().fold(0.0, |a, &b| a.max(b))
    }

    /// Split by `ϵ`-parity; returns `(even part, odd part)`. Their sum is `self`.
    pub fn split_homogeneous(&self) -> (SuperFun, SuperFun) {
        let mut even = Self::zero(self.trunc);
        let mut odd = Self::zero(self.trunc);
        for (m, h) in self.components() {
            let target = if (m.parity() + h.shifted()) % 2 == 0 { &mut even } else { &mut odd };
            target.add_homog(m, 1.0, &h);
        }
        (even, odd)
    }
}

/// Graded pointwise product, `(αf)(βg) = (-1)^{ε(f)|β|} αβ fg`.
pub fn superfun_product(f: &SuperFun, g: &SuperFun) -> SuperFun {
    let mut out = SuperFun::zero(f.trunc);
    for (ma, hf) in f.components() {
        for (mb, hg) in g.components() {
            let Some((m, s)) = ma.mul(&mb) else { continue };
            let koszul = if hf.eps() * mb.parity() == 1 { -1.0 } else { 1.0 };
            let prod = match (&hf, &hg) {
                (Homog::Xi(_), Homog::Xi(_)) => continue,
                (Homog::Xi(a), Homog::Body(b)) | (Homog::Body(a), Homog::Xi(b)) => {
                    PureFun::xi(a * b)
                }
                (Homog::Body(a), Homog::Body(b)) => PureFun::body(a * b),
            };
            out.add_term(m, s * koszul, &prod);
        }
    }
    out
}

/// Berezin integral `∫dξ w·F`, acting from the left as an odd operator:
/// weight `1` picks the `ξ`-coefficient (sign `(-1)^{|α|}` past a coefficient),
/// weight `ξ` picks the body.
pub fn xi_integral(f: &SuperFun, weight: XiWeight) -> SuperFun {
    let mut out = SuperFun::zero(f.trunc);
    for (m, p) in f.terms() {
        match weight {
            XiWeight::One => {
                let s = if m.parity() == 1 { -1.0 } else { 1.0 };
                out.add_term(*m, s, &PureFun::body(p.xi.clone()));
            }
            XiWeight::Xi => out.add_term(*m, 1.0, &PureFun::body(p.body.clone())),
        }
    }
    out
}

pub fn parity_of(f: &SuperFun) -> ParityOf {
    let mut found: Option<Parity> = None;
    for (m, h) in f.components() {
        let p = Parity { eps: (m.parity() + h.eps()) % 2, epsilon: (m.parity() + h.shifted()) % 2 };
        match found {
            None => found = Some(p),
            Some(q) if q != p => return ParityOf::Mixed,
            _ => {}
        }
    }
    found.map_or(ParityOf::Zero, ParityOf::Homogeneous)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Truncation {
        Truncation::default()
    }

    fn close(a: &SuperFun, b: &SuperFun, grid: &[f64]) -> bool {
        a.sub(b).max_abs(grid) < 1e-12
    }

    fn grid() -> Vec<f64> {
        (0..=30).map(|i| -3.0 + 0.2 * i as f64).collect()
    }

    #[test]
    fn xi_squared_vanishes() {
        let b = SymExpr::bump(0.0, 1.0);
        let f = SuperFun::pure(t(), PureFun::xi(b));
        assert!(superfun_product(&f, &f).is_zero());
    }

    #[test]
    fn even_function_commutes_with_xi() {
        let b = SymExpr::bump(0.0, 1.0);
        let x = SuperFun::pure(t(), PureFun::body(SymExpr::x()));
        let xb = SuperFun::pure(t(), PureFun::xi(b.clone()));
        let p = superfun_product(&x, &xb);
        let expect = SuperFun::pure(t(), PureFun::xi(&SymExpr::x() * &b));
        assert!(close(&p, &expect, &grid()));
    }

    #[test]
    fn colored_supercommutativity_and_associativity() {
        let tr = t();
        let b = SymExpr::bump(0.2, 1.1);
        let th1 = DeformRing::theta(tr, 1);
        let th2 = DeformRing::theta(tr, 2);
        let elems = [
            SuperFun::colored(&th1, &PureFun::xi(b.clone())),
            SuperFun::colored(&th2, &PureFun::body(SymExpr::poly(vec![1.0, 2.0]))),
            SuperFun::pure(tr, PureFun::xi(&b * &SymExpr::x())),
            SuperFun::colored(&th1, &PureFun::body(SymExpr::exp(0.3))),
        ];
        for f in &elems {
            for g in &elems {
                let ParityOf::Homogeneous(pf) = parity_of(f) else { panic!() };
                let ParityOf::Homogeneous(pg) = parity_of(g) else { panic!() };
                let s = if pf.eps * pg.eps == 1 { -1.0 } else { 1.0 };
                let lhs = superfun_product(f, g);
                let rhs = superfun_product(g, f).scale(s);
                assert!(close(&lhs, &rhs, &grid()));
                for h in &elems {
                    let a = superfun_product(&superfun_product(f, g), h);
                    let c = superfun_product(f, &superfun_product(g, h));
                    assert!(close(&a, &c, &grid()));
                }
            }
        }
    }

    #[test]
    fn berezin_integrals() {
        let b = SymExpr::bump(0.0, 1.0);
        let x2 = SymExpr::poly(vec![0.0, 0.0, 1.0]);
        let f = SuperFun::pure(t(), PureFun::new(b.clone(), x2.clone()));
        let one = xi_integral(&f, XiWeight::One);
        assert!(close(&one, &SuperFun::pure(t(), PureFun::body(b)), &grid()));
        let xi = xi_integral(&f, XiWeight::Xi);
        assert!(close(&xi, &SuperFun::pure(t(), PureFun::body(x2)), &grid()));
        assert!(xi_integral(&SuperFun::zero(t()), XiWeight::One).is_zero());
    }

    #[test]
    fn parities() {
        let b = SymExpr::bump(0.0, 1.0);
        let x2 = SymExpr::poly(vec![0.0, 0.0, 1.0]);
        assert_eq!(
            parity_of(&SuperFun::pure(t(), PureFun::xi(b.clone()))),
            ParityOf::Homogeneous(Parity { eps: 1, epsilon: 0 })
        );
        assert_eq!(
            parity_of(&SuperFun::pure(t(), PureFun::body(x2.clone()))),
            ParityOf::Homogeneous(Parity { eps: 0, epsilon: 1 })
        );
        let colored = SuperFun::colored(&DeformRing::theta(t(), 1), &PureFun::body(x2.clone()));
        assert_eq!(parity_of(&colored), ParityOf::Homogeneous(Parity { eps: 1, epsilon: 0 }));
        assert_eq!(parity_of(&SuperFun::pure(t(), PureFun::new(b, x2))), ParityOf::Mixed);
    }

    #[test]
    fn homogeneous_split_sums_back() {
        let tr = t();
        let b = SymExpr::bump(0.0, 1.5);
        let f = SuperFun::colored(
            &(&DeformRing::one(tr) + &DeformRing::theta(tr, 2)),
            &PureFun::new(b.clone(), SymExpr::poly(vec![0.5, 1.0])),
        );
        let (e, o) = f.split_homogeneous();
        assert!(close(&e.add(&o), &f, &grid()));
        let (e2, o2) = e.split_homogeneous();
        assert!(o2.is_zero());
        assert!(close(&e2, &e, &grid()));
        assert!(matches!(parity_of(&e), ParityOf::Homogeneous(Parity { epsilon: 0, .. })));
        assert!(matches!(parity_of(&o), ParityOf::Homogeneous(Parity { epsilon: 1, .. })));
    }
}
