//! Extension of pure cochains to colored arguments with the Koszul rule
//! `M(α₁f₁, …) = Π_k (-1)^{|α_k|(ϵ_M + ϵ(f₁) + … + ϵ(f_{k-1}))} α₁…α_p M(f₁, …)`.

use super::forms::Cochain;
use crate::error::Result;
use crate::grassmann::{DeformRing, Homog, Monomial, SuperFun};

pub fn eval_colored(c: &dyn Cochain, args: &[&SuperFun]) -> Result<SuperFun> {
    let trunc = args[0].truncation();
    eval_colored_scaled(c, &DeformRing::one(trunc), args)
}

/// `(r·M)(args)` for a ring coefficient `r`.
pub fn eval_colored_scaled(c: &dyn Cochain, r: &DeformRing, args: &[&SuperFun]) -> Result<SuperFun> {
    assert_eq!(args.len(), c.arity());
    let trunc = r.truncation();
    let comps: Vec<Vec<(Monomial, Homog)>> = args.iter().map(|a| a.components()).collect();
    let mut out = SuperFun::zero(trunc);
    if comps.iter().any(|v| v.is_empty()) || r.is_zero() {
        return Ok(out);
    }
    let mut idx = vec![0usize; args.len()];
    loop {
        let mut mono = Monomial::ONE;
        let mut sign = 1.0;
        let mut shifted_sum = c.parity();
        let mut alive = true;
        let mut pick = Vec::with_capacity(args.len());
        for (k, &i) in idx.iter().enumerate() {
            let (m, h) = &comps[k][i];
            if m.hbar + mono.hbar > trunc.order {
                alive = false;
                break;
            }
            match mono.mul(m) {
                Some((next, s)) => {
                    mono = next;
                    sign *= s;
                }
                None => {
                    alive = false;
                    break;
                }
            }
            if m.parity() * (shifted_sum % 2) == 1 {
                sign = -sign;
            }
            shifted_sum += h.shifted();
            pick.push(h.clone());
        }
        if alive {
            let val = c.eval_homog(&pick)?;
            if !val.is_zero() {
                for (rm, rc) in r.terms() {
                    if rm.hbar + mono.hbar > trunc.order {
                        continue;
                    }
                    if let Some((m, s)) = rm.mul(&mono) {
                        out.add_term(m, rc * s * sign, &val);
                    }
                }
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < comps[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
