//! The deformation `C` of the antibracket assembled from `c_1 … c_6` and `M`, the
//! constraint checker, the `c_4` normalization, and the order-by-order Jacobi check.

pub mod constraints;
pub mod normalize;
pub mod orderwise;
pub mod params;

use serde::{Deserialize, Serialize};

use crate::antibracket::{FormId, ResolventPiece};
use crate::cohomology::{form, ColoredCochain};
use crate::error::Result;
use crate::grassmann::DeformRing;

pub use constraints::{check_constraints, ConstraintReport, Family, Violation};
pub use normalize::{normalize_c4, BasisChange};
pub use orderwise::{verify_jacobi_orderwise, OrderReport, OrderResidual};
pub use params::{DeformParams, DistributionSpec, MEntry, MTerm, ParamsFile};

/// The terms of `C` beyond `Σ c_i m2_i + m2_7(M)` that cancel second-order obstructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Correction {
    /// `-c_6 m2_8(M)`
    M8,
    /// `-c_2 c_6 m2_9`
    M9,
    /// `-c_2 m2_10(M)`
    M10,
    /// `-c_2 c_6² m2_11(M)`
    M11,
}

#[derive(Clone, Debug)]
pub struct Deformation {
    pub params: DeformParams,
    pub cochain: ColoredCochain,
    pub omitted: Vec<Correction>,
}

/// `C = m2_0 + M_{c4} + Σ_{i≠4} c_i m2_i + m2_7(M) - c_6 m2_8(M) - c_2 c_6 m2_9 - c_2 m2_10(M) - c_2 c_6² m2_11(M)`.
pub fn build_deformation(p: &DeformParams) -> Result<Deformation> {
    build_deformation_without(p, &[])
}

/// As [`build_deformation`] with some correction terms left out.
pub fn build_deformation_without(p: &DeformParams, omit: &[Correction]) -> Result<Deformation> {
    p.validate()?;
    let tr = p.trunc;
    let keep = |c: Correction| !omit.contains(&c);
    let mut c = ColoredCochain::pure(tr, form(FormId::M0));

    // c4/(1 + c4 N_z/2) = Σ_j c4^{j+1} (-N_z/2)^j
    let c4 = p.ci(4);
    let mut power = c4.clone();
    let mut j = 0;
    while !power.is_zero() {
        c.push(power.clone(), std::sync::Arc::new(ResolventPiece(j)));
        power = &power * c4;
        j += 1;
    }

    for (i, id) in [(1, FormId::M1), (2, FormId::M2), (3, FormId::M3), (5, FormId::M5), (6, FormId::M6)] {
        c.push(p.ci(i).clone(), form(id));
    }
    let (c2, c6) = (p.ci(2), p.ci(6));
    let c2c6 = c2 * c6;
    let c2c6c6 = &c2c6 * c6;
    for t in &p.m {
        let m = &t.distribution;
        let r = &t.coeff;
        c.push(r.clone(), form(FormId::M7(m.clone())));
        if keep(Correction::M8) {
            c.push(-&(c6 * r), form(FormId::M8(m.clone())));
        }
        if keep(Correction::M10) {
            c.push(-&(c2 * r), form(FormId::M10(m.clone())));
        }
        if keep(Correction::M11) {
            c.push(-&(&c2c6c6 * r), form(FormId::M11(m.clone())));
        }
    }
    if keep(Correction::M9) {
        c.push(-&c2c6, form(FormId::M9));
    }
    Ok(Deformation { params: p.clone(), cochain: c, omitted: omit.to_vec() })
}

impl Deformation {
    /// `C` at `ħ = 0` has only the `m2_0` term.
    pub fn is_undeformed_at_zero(&self) -> bool {
        self.cochain.terms.iter().skip(1).all(|(r, _)| r.vanishes_at_hbar0())
    }

    /// `(coefficient, form label)` for every term of `C`.
    pub fn terms(&self) -> Vec<(DeformRing, String)> {
        self.cochain.terms.iter().map(|(r, c)| (r.clone(), c.label())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antibracket::Distribution;
    use crate::grassmann::Truncation;

    #[test]
    fn zero_params_give_the_bracket() {
        let d = build_deformation(&DeformParams::zero(Truncation::default())).unwrap();
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.terms()[0].1, "m2_0");
        assert!(d.is_undeformed_at_zero());
    }

    #[test]
    fn resolvent_terms() {
        let tr = Truncation::new(4, 0);
        let d = build_deformation(&DeformParams::zero(tr).with_c(4, DeformRing::hbar(tr))).unwrap();
        let labels: Vec<String> = d.terms().into_iter().map(|t| t.1).collect();
        assert_eq!(labels, vec!["m2_0", "resolvent_0", "resolvent_1", "resolvent_2", "resolvent_3"]);
        // c4^{j+1} = ħ^{j+1}
        assert_eq!(d.terms()[3].0, DeformRing::term(tr, 3, &[], 1.0));
    }

    #[test]
    fn correction_terms() {
        let tr = Truncation::new(4, 3);
        let p = DeformParams::zero(tr)
            .with_c(2, DeformRing::term(tr, 1, &[1], 1.0))
            .with_c(6, DeformRing::hbar(tr))
            .with_m(DeformRing::hbar(tr), Distribution::delta(0.0));
        let d = build_deformation(&p).unwrap();
        let labels: Vec<String> = d.terms().into_iter().map(|t| t.1).collect();
        assert_eq!(labels, vec!["m2_0", "m2_2", "m2_6", "m2_7", "m2_8", "m2_10", "m2_11", "m2_9"]);
        let coeff = |name: &str| d.terms().into_iter().find(|t| t.1 == name).unwrap().0;
        assert_eq!(coeff("m2_9"), DeformRing::term(tr, 2, &[1], -1.0));
        assert_eq!(coeff("m2_11"), DeformRing::term(tr, 4, &[1], -1.0));
        let without = build_deformation_without(&p, &[Correction::M11]).unwrap();
        assert!(without.terms().iter().all(|t| t.1 != "m2_11"));
    }
}
