//! The adjoint differential `d_p`, Jacobiators, and the verification routines built on them.

pub mod closed_forms;
pub mod lemma;
pub mod table;
pub mod verify;

use std::fmt;
use std::sync::Arc;

use crate::antibracket::{antibracket_pure, eval_colored_scaled, eval_multilinear, Cochain, FormId};
use crate::error::Result;
use crate::grassmann::{DeformRing, Homog, PureFun, SuperFun, Truncation};

pub use verify::{
    residual_grid, verify_bridge, verify_cocycle, verify_exactness_m7, verify_jacobi_m0, verify_negative_control,
    verify_nilpotency, ResidualOptions,
};

fn sign(e: u32) -> f64 {
    if e % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `d_p M` on homogeneous arguments, with the adjoint action `f·v = [f, v]`.
pub fn differential(m: &dyn Cochain, args: &[Homog]) -> Result<PureFun> {
    let p = m.arity();
    assert_eq!(args.len(), p + 1);
    let eps: Vec<u32> = args.iter().map(|h| h.shifted() as u32).collect();
    let em = m.parity() as u32;
    let mut acc = PureFun::zero();
    for j in 0..=p {
        let before: u32 = eps[..j].iter().sum();
        let e = (j as u32 + 1) + eps[j] * before + eps[j] * em;
        let rest: Vec<PureFun> =
            args.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, h)| h.to_pure()).collect();
        let inner = eval_multilinear(m, &rest)?;
        let term = antibracket_pure(&args[j].to_pure(), &inner);
        acc = acc.add(&term.scale(-sign(e)));
    }
    for j in 0..=p {
        for i in 0..j {
            let between: u32 = eps[i + 1..j].iter().sum();
            let e = (j as u32 + 1) + eps[j] * between;
            let br = antibracket_pure(&args[i].to_pure(), &args[j].to_pure());
            let mut rest = Vec::with_capacity(p);
            for (k, h) in args.iter().enumerate() {
                if k == i {
                    rest.push(br.clone());
                } else if k != j {
                    rest.push(h.to_pure());
                }
            }
            acc = acc.add(&eval_multilinear(m, &rest)?.scale(-sign(e)));
        }
    }
    Ok(acc)
}

/// `d_p M` packaged as a `(p+1)`-cochain.
#[derive(Clone, Debug)]
pub struct Differential(pub Arc<dyn Cochain>);

impl Cochain for Differential {
    fn arity(&self) -> usize {
        self.0.arity() + 1
    }
    fn parity(&self) -> u8 {
        self.0.parity()
    }
    fn eval_homog(&self, args: &[Homog]) -> Result<PureFun> {
        differential(self.0.as_ref(), args)
    }
    fn label(&self) -> String {
        format!("d({})", self.0.label())
    }
}

/// A real linear combination of pure cochains of equal arity and parity.
#[derive(Clone, Debug)]
pub struct Combination {
    pub terms: Vec<(f64, Arc<dyn Cochain>)>,
}

impl Cochain for Combination {
    fn arity(&self) -> usize {
        self.terms[0].1.arity()
    }
    fn parity(&self) -> u8 {
        self.terms[0].1.parity()
    }
    fn eval_homog(&self, args: &[Homog]) -> Result<PureFun> {
        let mut acc = PureFun::zero();
        for (c, t) in &self.terms {
            acc = acc.add(&t.eval_homog(args)?.scale(*c));
        }
        Ok(acc)
    }
    fn label(&self) -> String {
        let parts: Vec<String> = self.terms.iter().map(|(c, t)| format!("{c}*{}", t.label())).collect();
        parts.join(" + ")
    }
}

fn cyclic(f: &Homog, g: &Homog, h: &Homog) -> [(Homog, Homog, Homog); 3] {
    [
        (f.clone(), g.clone(), h.clone()),
        (g.clone(), h.clone(), f.clone()),
        (h.clone(), f.clone(), g.clone()),
    ]
}

/// `J(m, n)(f, g, h) = Σ_cyc (-1)^{ϵ(f)ϵ(h)} (m(n(f,g),h) + (-1)^{ϵ(m)ϵ(n)} n(m(f,g),h))`.
pub fn jacobiator(m: &dyn Cochain, n: &dyn Cochain, f: &Homog, g: &Homog, h: &Homog) -> Result<PureFun> {
    let cross = sign(m.parity() as u32 * n.parity() as u32);
    let mut acc = PureFun::zero();
    for (a, b, c) in cyclic(f, g, h) {
        let s = sign(a.shifted() as u32 * c.shifted() as u32);
        let nab = eval_multilinear(n, &[a.to_pure(), b.to_pure()])?;
        let mab = eval_multilinear(m, &[a.to_pure(), b.to_pure()])?;
        let t1 = eval_multilinear(m, &[nab, c.to_pure()])?;
        let t2 = eval_multilinear(n, &[mab, c.to_pure()])?;
        acc = acc.add(&t1.add(&t2.scale(cross)).scale(s));
    }
    Ok(acc)
}

/// `J(m) = ½ J(m, m)` for even `m`, `0` for odd `m`.
pub fn jacobiator_single(m: &dyn Cochain, f: &Homog, g: &Homog, h: &Homog) -> Result<PureFun> {
    if m.parity() == 1 {
        return Ok(PureFun::zero());
    }
    Ok(jacobiator(m, m, f, g, h)?.scale(0.5))
}

/// `Σ_k r_k B_k` with ring coefficients; used for the deformation `C`.
#[derive(Clone)]
pub struct ColoredCochain {
    pub trunc: Truncation,
    pub terms: Vec<(DeformRing, Arc<dyn Cochain>)>,
}

impl fmt::Debug for ColoredCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(r, t)| format!("({r})*{}", t.label())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub type Cochain1 = ColoredCochain;
pub type Cochain2 = ColoredCochain;

impl ColoredCochain {
    pub fn new(trunc: Truncation) -> Self {
        ColoredCochain { trunc, terms: Vec::new() }
    }

    pub fn pure(trunc: Truncation, c: Arc<dyn Cochain>) -> Self {
        ColoredCochain { trunc, terms: vec![(DeformRing::one(trunc), c)] }
    }

    pub fn push(&mut self, r: DeformRing, c: Arc<dyn Cochain>) {
        if !r.is_zero() {
            self.terms.push((r, c));
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.terms.iter().map(|(_, c)| c.label()).collect()
    }

    pub fn eval(&self, args: &[&SuperFun]) -> Result<SuperFun> {
        let mut out = SuperFun::zero(self.trunc);
        for (r, c) in &self.terms {
            out = out.add(&eval_colored_scaled(c.as_ref(), r, args)?);
        }
        Ok(out)
    }

    /// Total `ϵ`-parity if every term agrees.
    pub fn total_parity(&self) -> Option<u8> {
        let mut it = self.terms.iter().map(|(r, c)| r.parity().map(|p| (p + c.parity()) % 2));
        let first = it.next()??;
        it.all(|p| p == Some(first)).then_some(first)
    }
}

/// `J(C)(f,g,h) = Σ_cyc (-1)^{ϵ(f)ϵ(h)} C(C(f,g),h)` for a total-even colored `C`.
pub fn colored_jacobiator(c: &ColoredCochain, f: &Homog, g: &Homog, h: &Homog) -> Result<SuperFun> {
    let mut acc = SuperFun::zero(c.trunc);
    for (a, b, z) in cyclic(f, g, h) {
        let s = sign(a.shifted() as u32 * z.shifted() as u32);
        let fa = SuperFun::from_homog(c.trunc, &a);
        let fb = SuperFun::from_homog(c.trunc, &b);
        let fz = SuperFun::from_homog(c.trunc, &z);
        let inner = c.eval(&[&fa, &fb])?;
        acc = acc.add(&c.eval(&[&inner, &fz])?.scale(s));
    }
    Ok(acc)
}

pub fn form(id: FormId) -> Arc<dyn Cochain> {
    Arc::new(id)
}
