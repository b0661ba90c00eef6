//! First-order operators on `DE` as 1-cochains: `Δ = ∂_x∂_ξ`, `E_z`, `N_ξ`, `N_z`, and friends.

use super::colored::eval_colored;
use super::distribution::Distribution;
use super::forms::{eval_multilinear, Cochain};
use crate::error::{Error, Result};
use crate::grassmann::{DeformRing, Homog, PureFun, SuperFun};
use crate::symfun::SymExpr;

#[derive(Clone, Debug)]
pub enum Operator {
    /// `∂_x ∂_ξ`
    Delta,
    /// `1 - ½(x∂_x + ξ∂_ξ)`
    Euler,
    /// `ξ∂_ξ`
    Nxi,
    /// `x∂_x + ξ∂_ξ`
    Nz,
    /// `∂_x`
    Dx,
    /// Multiplication by an even function.
    Mul(SymExpr),
    /// `f ↦ M(∫dξ ξ f)`, a constant body.
    XiPairing(Distribution),
}

impl Operator {
    pub fn name(&self) -> String {
        match self {
            Operator::Delta => "Delta".into(),
            Operator::Euler => "Euler".into(),
            Operator::Nxi => "Nxi".into(),
            Operator::Nz => "Nz".into(),
            Operator::Dx => "Dx".into(),
            Operator::Mul(_) => "Mul".into(),
            Operator::XiPairing(_) => "XiPairing".into(),
        }
    }
}

fn x_dx(a: &SymExpr) -> SymExpr {
    &SymExpr::x() * &a.diff(1)
}

fn apply_homog(op: &Operator, h: &Homog) -> Result<PureFun> {
    use Homog::{Body as B, Xi as X};
    Ok(match (op, h) {
        (Operator::Delta, X(a)) => PureFun::body(a.diff(1)),
        (Operator::Delta, B(_)) => PureFun::zero(),
        (Operator::Euler, X(a)) => PureFun::xi(&a.scale(0.5) - &x_dx(a).scale(0.5)),
        (Operator::Euler, B(a)) => PureFun::body(a - &x_dx(a).scale(0.5)),
        (Operator::Nxi, X(a)) => PureFun::xi(a.clone()),
        (Operator::Nxi, B(_)) => PureFun::zero(),
        (Operator::Nz, X(a)) => PureFun::xi(&x_dx(a) + a),
        (Operator::Nz, B(a)) => PureFun::body(x_dx(a)),
        (Operator::Dx, X(a)) => PureFun::xi(a.diff(1)),
        (Operator::Dx, B(a)) => PureFun::body(a.diff(1)),
        (Operator::Mul(phi), X(a)) => PureFun::xi(phi * a),
        (Operator::Mul(phi), B(a)) => PureFun::body(phi * a),
        (Operator::XiPairing(_), X(_)) => PureFun::zero(),
        (Operator::XiPairing(m), B(a)) => PureFun::body(SymExpr::constant(m.apply(a)?)),
    })
}

impl Cochain for Operator {
    fn arity(&self) -> usize {
        1
    }

    fn parity(&self) -> u8 {
        match self {
            Operator::Delta => 1,
            _ => 0,
        }
    }

    fn eval_homog(&self, args: &[Homog]) -> Result<PureFun> {
        apply_homog(self, &args[0])
    }

    fn label(&self) -> String {
        self.name()
    }
}

pub fn apply_pure(op: &Operator, f: &PureFun) -> PureFun {
    eval_multilinear(op, &[f.clone()]).expect("local operator")
}

/// An operator from the fixed list or the resolvent `c/(1 + c N_z/2) = Σ_j c (-c/2)^j N_z^j`
/// (here without the leading `c`: `Σ_j (-c/2)^j N_z^j`).
#[derive(Clone, Debug)]
pub enum OperatorSpec {
    Op(Operator),
    Resolvent(DeformRing),
}

pub fn apply_operator(op: &OperatorSpec, f: &SuperFun) -> Result<SuperFun> {
    match op {
        OperatorSpec::Op(o) => eval_colored(o, &[f]),
        OperatorSpec::Resolvent(c) => {
            if !c.vanishes_at_hbar0() {
                return Err(Error::ResolventPrecondition);
            }
            let step = c.scale(-0.5);
            let mut coeff = DeformRing::one(c.truncation());
            let mut power = f.clone();
            let mut acc = SuperFun::zero(f.truncation());
            for _ in 0..=c.truncation().order {
                if coeff.is_zero() {
                    break;
                }
                acc = acc.add(&power.ring_mul_left(&coeff));
                coeff = &coeff * &step;
                power = eval_colored(&Operator::Nz, &[&power])?;
            }
            Ok(acc)
        }
    }
}
