//! Truncated series in `ħ` with coefficients in the Grassmann algebra on `θ_1..θ_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of odd generators.
pub const MAX_THETAS: u32 = 16;

/// `ħ^hbar θ_I` with `I` stored as a bitmask (bit `k-1` for `θ_k`), canonically ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub hbar: u32,
    pub thetas: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { hbar: 0, thetas: 0 };

    pub fn new(hbar: u32, indices: &[usize]) -> Option<(Monomial, f64)> {
        let mut m = Monomial { hbar, thetas: 0 };
        let mut sign = 1.0;
        for &i in indices {
            assert!(i >= 1 && i as u32 <= MAX_THETAS, "theta index {i} out of range");
            let (next, s) = m.mul(&Monomial { hbar: 0, thetas: 1 << (i - 1) })?;
            m = next;
            sign *= s;
        }
        Some((m, sign))
    }

    pub fn theta_degree(&self) -> u32 {
        self.thetas.count_ones()
    }

    /// Grassmann parity `ε₁`.
    pub fn parity(&self) -> u8 {
        (self.thetas.count_ones() % 2) as u8
    }

    /// 1-based theta indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (0..MAX_THETAS).filter(|b| self.thetas >> b & 1 == 1).map(|b| b as usize + 1).collect()
    }

    /// Product with the reordering sign, or `None` when a generator repeats.
    pub fn mul(&self, o: &Monomial) -> Option<(Monomial, f64)> {
        if self.thetas & o.thetas != 0 {
            return None;
        }
        // inversions: pairs (i in self, j in o) with i > j
        let mut inv = 0;
        let mut rest = o.thetas;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            let above = if j + 1 >= 32 { 0 } else { self.thetas >> (j + 1) };
            inv += above.count_ones();
        }
        let sign = if inv % 2 == 0 { 1.0 } else { -1.0 };
        Some((Monomial { hbar: self.hbar + o.hbar, thetas: self.thetas | o.thetas }, sign))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.hbar {
            0 => {}
            1 => parts.push("h".to_string()),
            p => parts.push(format!("h^{p}")),
        }
        for i in self.indices() {
            parts.push(format!("t{i}"));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Truncation data: `ħ`-order `K` and number of generators `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub order: u32,
    pub thetas: u32,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { order: 4, thetas: 3 }
    }
}

impl Truncation {
    pub fn new(order: u32, thetas: u32) -> Self {
        assert!(thetas <= MAX_THETAS);
        Truncation { order, thetas }
    }

    fn admits(&self, m: &Monomial) -> bool {
        m.hbar <= self.order && (m.thetas >> self.thetas) == 0
    }
}

/// Element of the truncated coefficient ring.
#[derive(Clone, PartialEq)]
pub struct DeformRing {
    trunc: Truncation,
    terms: BTreeMap<Monomial, f64>,
}

impl fmt::Debug for DeformRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DeformRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m}")).collect();
        write!(f, "{}", s.join(" + "))
    }
}

impl DeformRing {
    pub fn zero(trunc: Truncation) -> Self {
        DeformRing { trunc, terms: BTreeMap::new() }
    }

    pub fn one(trunc: Truncation) -> Self {
        Self::scalar(trunc, 1.0)
    }

    pub fn scalar(trunc: Truncation, c: f64) -> Self {
        let mut r = Self::zero(trunc);
        r.add_term(Monomial::ONE, c);
        r
    }

    /// `c · ħ^hbar θ_{i1} θ_{i2} ...` (indices in any order; sign from reordering).
    pub fn term(trunc: Truncation, hbar: u32, indices: &[usize], c: f64) -> Self {
        let mut r = Self::zero(trunc);
        if let Some((m, s)) = Monomial::new(hbar, indices) {
            r.add_term(m, s * c);
        }
        r
    }

    pub fn hbar(trunc: Truncation) -> Self {
        Self::term(trunc, 1, &[], 1.0)
    }

    pub fn theta(trunc: Truncation, k: usize) -> Self {
        Self::term(trunc, 0, &[k], 1.0)
    }

    pub fn from_monomial(trunc: Truncation, m: Monomial, c: f64) -> Self {
        let mut r = Self::zero(trunc);
        r.add_term(m, c);
        r
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn add_term(&mut self, m: Monomial, c: f64) {
        if c == 0.0 || !self.trunc.admits(&m) {
            return;
        }
        let e = self.terms.entry(m).or_insert(0.0);
        *e += c;
        if *e == 0.0 {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &f64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero up to `tol` in every coefficient.
    pub fn is_negligible(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.abs() <= tol)
    }

    pub fn coeff(&self, m: &Monomial) -> f64 {
        self.terms.get(m).copied().unwrap_or(0.0)
    }

    pub fn constant_term(&self) -> f64 {
        self.coeff(&Monomial::ONE)
    }

    /// Definite `ε₁`-parity, if every monomial agrees.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| m.parity());
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Lies in the augmentation ideal: every monomial carries at least one `ħ`.
    pub fn vanishes_at_hbar0(&self) -> bool {
        self.terms.keys().all(|m| m.hbar >= 1)
    }

    pub fn lowest_hbar(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.hbar).min()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut r = Self::zero(self.trunc);
        for (m, c) in &self.terms {
            r.add_term(*m, c * s);
        }
        r
    }

    pub fn checked_add(&self, o: &DeformRing) -> Result<Self> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, *c);
        }
        Ok(r)
    }

    /// Graded product, truncated at `ħ^K`.
    pub fn ring_mul(&self, o: &DeformRing) -> Result<Self> {
        self.check(o)?;
        let mut r = Self::zero(self.trunc);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if m1.hbar + m2.hbar > self.trunc.order {
                    continue;
                }
                if let Some((m, s)) = m1.mul(m2) {
                    r.add_term(m, s * c1 * c2);
                }
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.trunc), |acc, _| &acc * self)
    }

    /// `(1 + e)^{-1} = Σ_j (-e)^j` for `self = 1 + e`.
    pub fn inverse_unit(&self) -> Result<Self> {
        if self.constant_term() != 1.0 {
            return Err(Error::NotUnitForm);
        }
        let e = self - &Self::one(self.trunc);
        let neg = -&e;
        let mut acc = Self::one(self.trunc);
        let mut power = Self::one(self.trunc);
        // e is nilpotent modulo ħ^{K+1}: at most K + n factors survive
        for _ in 0..(self.trunc.order + self.trunc.thetas + 1) {
            power = &power * &neg;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc)
    }

    /// Substitute `θ_l ↦ images[l-1]` (an algebra homomorphism on the θ-part).
    pub fn substitute(&self, images: &[DeformRing]) -> Self {
        let mut out = Self::zero(self.trunc);
        for (m, c) in &self.terms {
            let mut t = Self::term(self.trunc, m.hbar, &[], *c);
            for i in m.indices() {
                t = &t * &images[i - 1];
            }
            out = &out + &t;
        }
        out
    }

    /// Sorted `(ħ-power, θ-indices, coefficient)` triples.
    pub fn to_triples(&self) -> Vec<(u32, Vec<usize>, f64)> {
        self.terms.iter().map(|(m, c)| (m.hbar, m.indices(), *c)).collect()
    }

    pub fn from_triples(trunc: Truncation, triples: &[(u32, Vec<usize>, f64)]) -> Self {
        let mut r = Self::zero(trunc);
        for (p, idx, c) in triples {
            if let Some((m, s)) = Monomial::new(*p, idx) {
                r.add_term(m, s * c);
            }
        }
        r
    }

    fn check(&self, o: &DeformRing) -> Result<()> {
        if self.trunc != o.trunc {
            return Err(Error::TruncationMismatch(
                self.trunc.order,
                self.trunc.thetas,
                o.trunc.order,
                o.trunc.thetas,
            ));
        }
        Ok(())
    }
}

impl Serialize for DeformRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_triples().serialize(s)
    }
}

impl Add for &DeformRing {
    type Output = DeformRing;
    fn add(self, o: &DeformRing) -> DeformRing {
        self.checked_add(o).expect("ring truncation mismatch")
    }
}

impl Sub for &DeformRing {
    type Output = DeformRing;
    fn sub(self, o: &DeformRing) -> DeformRing {
        self + &(-o)
    }
}

impl Neg for &DeformRing {
    type Output = DeformRing;
    fn neg(self) -> DeformRing {
        self.scale(-1.0)
    }
}

impl Mul for &DeformRing {
    type Output = DeformRing;
    fn mul(self, o: &DeformRing) -> DeformRing {
        self.ring_mul(o).expect("ring truncation mismatch")
    }
}

/// `ring_mul` as a free function.
pub fn ring_mul(a: &DeformRing, b: &DeformRing) -> Result<DeformRing> {
    a.ring_mul(b)
}

pub fn ring_inverse_unit(a: &DeformRing) -> Result<DeformRing> {
    a.inverse_unit()
}
