//! The antibracket `[f, g] = (∂_x f)(∂_ξ g) - (f ∂⃖_ξ)(∂_x g)` on `DE`.

use super::colored::eval_colored;
use super::forms::{eval_multilinear, FormId};
use crate::grassmann::{Homog, PureFun, SuperFun};

/// `[ξa, ξb] = ξ(a'b - ab')`, `[ξa, b] = -ab'`, `[a, ξb] = a'b`, `[a, b] = 0`.
pub fn bracket_homog(f: &Homog, g: &Homog) -> PureFun {
    match (f, g) {
        (Homog::Xi(a), Homog::Xi(b)) => PureFun::xi(&(&a.diff(1) * b) - &(a * &b.diff(1))),
        (Homog::Xi(a), Homog::Body(b)) => PureFun::body(-(a * &b.diff(1))),
        (Homog::Body(a), Homog::Xi(b)) => PureFun::body(&a.diff(1) * b),
        (Homog::Body(_), Homog::Body(_)) => PureFun::zero(),
    }
}

pub fn antibracket_pure(f: &PureFun, g: &PureFun) -> PureFun {
    eval_multilinear(&FormId::M0, &[f.clone(), g.clone()]).expect("bracket is local")
}

/// Colored antibracket on `DE ⊗ A`.
pub fn antibracket(f: &SuperFun, g: &SuperFun) -> SuperFun {
    eval_colored(&FormId::M0, &[f, g]).expect("bracket is local")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{DeformRing, Truncation};
    use crate::symfun::SymExpr;

    #[test]
    fn worked_brackets() {
        let x = SymExpr::x();
        assert!(bracket_homog(&Homog::Body(x.clone()), &Homog::Body(x.clone())).is_zero());
        let b = SymExpr::bump(0.0, 1.0);
        let v = bracket_homog(&Homog::Xi(b.clone()), &Homog::Body(x.clone()));
        for t in [-0.5, 0.0, 0.3] {
            assert!((v.body.eval(t) + b.eval(t)).abs() < 1e-15);
        }
        let c = SymExpr::bump(0.3, 0.8);
        let v = bracket_homog(&Homog::Xi(b.clone()), &Homog::Xi(c.clone()));
        for t in [-0.5, 0.0, 0.3] {
            let expect = b.diff(1).eval(t) * c.eval(t) - b.eval(t) * c.diff(1).eval(t);
            assert!((v.xi.eval(t) - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn output_is_compact() {
        let f = PureFun::new(SymExpr::bump(0.0, 1.0), SymExpr::poly(vec![1.0, 2.0, 3.0]));
        let g = PureFun::new(SymExpr::bump(0.5, 1.0), SymExpr::exp(0.5));
        assert!(antibracket_pure(&f, &g).is_compact());
    }

    #[test]
    fn colored_superantisymmetry() {
        let tr = Truncation::default();
        let th = |k| DeformRing::theta(tr, k);
        let f = SuperFun::colored(&th(1), &PureFun::xi(SymExpr::bump(0.0, 1.0)));
        let g = SuperFun::colored(&th(2), &PureFun::body(SymExpr::poly(vec![0.0, 1.0, 1.0])));
        let h = SuperFun::pure(tr, PureFun::xi(SymExpr::bump(0.2, 0.9)));
        let grid: Vec<f64> = (0..=20).map(|i| -2.0 + 0.2 * i as f64).collect();
        // total ϵ: f → 1 + 0, g → 1 + 1, h → 0
        for (a, ea, b, eb) in [(&f, 1, &g, 0), (&f, 1, &h, 0), (&g, 0, &h, 0), (&f, 1, &f, 1)] {
            let s = if ea * eb == 1 { -1.0 } else { 1.0 };
            let r = antibracket(a, b).add(&antibracket(b, a).scale(s));
            assert!(r.max_abs(&grid) < 1e-13);
        }
    }
}
