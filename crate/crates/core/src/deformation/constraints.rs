//! The relations `c_4 c_i = 0 (i ≠ 4)`, `c_4 M = 0`, `c_3 c_i = 0`, `c_3 M = 0`, and the
//! classification into the known deformation families.

use serde::{Deserialize, Serialize};

use super::params::DeformParams;
use crate::grassmann::{DeformRing, Monomial};

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    /// e.g. `c4*c5`.
    pub relation: String,
    pub product: DeformRing,
    /// Lowest `ħ`-power in the product.
    pub order: u32,
}

impl Violation {
    /// `constraint c4*c5 = 0`.
    pub fn identity(&self) -> String {
        format!("constraint {} = 0", self.relation)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `c_4` has a `θ`-free part; everything else vanishes.
    Defform1,
    /// One of `c_5, c_6, M` has a `θ`-free part; `c_3 = c_4 = 0`.
    Defform2,
    /// Every parameter is divisible by one generator `θ_k`.
    Defform3,
    /// `n = 3` with the `θ`-shapes `c_{1,2} ∈ ħθ_{1,2} + ħ³θ₁θ₂θ₃`, `c_3 ∈ ħ³θ₁θ₂θ₃`,
    /// `c_4 ∈ ħ²θ₁θ₂`, `c_5, c_6, M ∈ ħ²Λ²`.
    Defform4,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintReport {
    /// Every relation that was evaluated.
    pub relations: Vec<String>,
    pub violations: Vec<Violation>,
    pub families: Vec<Family>,
    pub satisfied: bool,
}

fn theta_free(r: &DeformRing) -> bool {
    r.terms().any(|(m, _)| m.thetas == 0)
}

fn all_terms(r: &DeformRing, pred: impl Fn(&Monomial) -> bool) -> bool {
    r.terms().all(|(m, _)| pred(m))
}

/// Evaluates every product in the truncated ring.
pub fn check_constraints(p: &DeformParams) -> ConstraintReport {
    let mut relations = Vec::new();
    let mut violations = Vec::new();
    let mut test = |name: String, prod: DeformRing| {
        relations.push(name.clone());
        if !prod.is_zero() {
            let order = prod.lowest_hbar().unwrap_or(0);
            violations.push(Violation { relation: name, product: prod, order });
        }
    };
    for i in [1, 2, 3, 5, 6] {
        test(format!("c4*c{i}"), p.ci(4) * p.ci(i));
    }
    test("c4*M".into(), m_product(p, p.ci(4)));
    for i in [1, 2, 5, 6] {
        test(format!("c3*c{i}"), p.ci(3) * p.ci(i));
    }
    test("c3*M".into(), m_product(p, p.ci(3)));
    let satisfied = violations.is_empty();
    ConstraintReport { relations, violations, families: if satisfied { classify(p) } else { vec![] }, satisfied }
}

/// `r·ρ_k` for the first direction where it is nonzero, else 0.
fn m_product(p: &DeformParams, r: &DeformRing) -> DeformRing {
    p.m
        .iter()
        .filter(|t| !t.distribution.is_zero())
        .map(|t| r * &t.coeff)
        .find(|x| !x.is_zero())
        .unwrap_or_else(|| DeformRing::zero(p.trunc))
}

pub fn classify(p: &DeformParams) -> Vec<Family> {
    let mut out = Vec::new();
    let c = |i: usize| p.ci(i);
    let others_zero = [1, 2, 3, 5, 6].iter().all(|&i| c(i).is_zero()) && p.m_is_zero();
    if theta_free(c(4)) && others_zero {
        out.push(Family::Defform1);
    }
    let free_56m = theta_free(c(5)) || theta_free(c(6)) || p.m.iter().any(|t| theta_free(&t.coeff));
    if free_56m && c(3).is_zero() && c(4).is_zero() {
        out.push(Family::Defform2);
    }
    let nonzero = p.c.iter().any(|r| !r.is_zero()) || !p.m_is_zero();
    if nonzero && p.trunc.thetas == 3 && defform4_shape(p) {
        out.push(Family::Defform4);
    }
    if nonzero {
        for k in 0..p.trunc.thetas {
            let bit = 1u32 << k;
            let divisible = |r: &DeformRing| all_terms(r, |m| m.thetas & bit != 0);
            if p.c.iter().all(divisible) && p.m.iter().all(|t| divisible(&t.coeff)) {
                out.push(Family::Defform3);
                break;
            }
        }
    }
    out
}

fn defform4_shape(p: &DeformParams) -> bool {
    let t123 = 0b111;
    let odd12 = |m: &Monomial| (m.hbar >= 1 && (m.thetas == 0b001 || m.thetas == 0b010)) || (m.hbar >= 3 && m.thetas == t123);
    let top = |m: &Monomial| m.hbar >= 3 && m.thetas == t123;
    let t12 = |m: &Monomial| m.hbar >= 2 && m.thetas == 0b011;
    let pair = |m: &Monomial| m.hbar >= 2 && m.theta_degree() == 2;
    all_terms(p.ci(1), odd12)
        && all_terms(p.ci(2), odd12)
        && all_terms(p.ci(3), top)
        && all_terms(p.ci(4), t12)
        && all_terms(p.ci(5), pair)
        && all_terms(p.ci(6), pair)
        && p.m.iter().all(|t| all_terms(&t.coeff, pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antibracket::Distribution;
    use crate::grassmann::Truncation;

    fn tr() -> Truncation {
        Truncation::new(4, 3)
    }

    #[test]
    fn c4_c5_violation() {
        let p = DeformParams::zero(tr()).with_c(4, DeformRing::hbar(tr())).with_c(5, DeformRing::hbar(tr()));
        let r = check_constraints(&p);
        assert!(!r.satisfied);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].relation, "c4*c5");
        assert_eq!(r.violations[0].order, 2);
        assert_eq!(r.violations[0].product, DeformRing::term(tr(), 2, &[], 1.0));
        assert_eq!(r.violations[0].identity(), "constraint c4*c5 = 0");
    }

    #[test]
    fn nilpotent_products_accepted() {
        let p = DeformParams::zero(tr())
            .with_c(4, DeformRing::term(tr(), 2, &[1, 2], 1.0))
            .with_c(5, DeformRing::term(tr(), 2, &[1, 3], 1.0));
        assert!(check_constraints(&p).satisfied);
        // θ-degree 5 > 3
        let p = DeformParams::zero(tr())
            .with_c(3, DeformRing::term(tr(), 3, &[1, 2, 3], 1.0))
            .with_m(DeformRing::term(tr(), 2, &[2, 3], 1.0), Distribution::delta(0.0));
        let r = check_constraints(&p);
        assert!(r.satisfied, "{:?}", r.violations);
        assert!(r.families.contains(&Family::Defform4));
    }

    #[test]
    fn families() {
        let p = DeformParams::zero(tr()).with_c(4, DeformRing::hbar(tr()));
        assert_eq!(check_constraints(&p).families, vec![Family::Defform1]);
        let p = DeformParams::zero(tr())
            .with_c(2, DeformRing::term(tr(), 1, &[1], 1.0))
            .with_c(6, DeformRing::hbar(tr()));
        assert_eq!(check_constraints(&p).families, vec![Family::Defform2]);
        let p = DeformParams::zero(tr())
            .with_c(1, DeformRing::term(tr(), 1, &[1], 1.0))
            .with_c(4, DeformRing::term(tr(), 2, &[1, 2], 1.0))
            .with_c(5, DeformRing::term(tr(), 1, &[1, 3], 1.0));
        let r = check_constraints(&p);
        assert!(r.satisfied);
        assert_eq!(r.families, vec![Family::Defform3]);
        assert!(check_constraints(&DeformParams::zero(tr())).families.is_empty());
    }

    #[test]
    fn every_relation_listed() {
        let r = check_constraints(&DeformParams::zero(tr()));
        assert_eq!(r.relations.len(), 11);
        assert!(r.relations.contains(&"c3*M".to_string()));
    }
}
