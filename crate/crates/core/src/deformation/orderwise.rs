//! `J(C) = 0` checked one `ħ`-order at a time.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::Deformation;
use crate::cohomology::colored_jacobiator;
use crate::cohomology::verify::{combos, triple_scale, ResidualOptions};
use crate::error::Result;
use crate::grassmann::Monomial;
use crate::testfns::TestSet;

#[derive(Clone, Debug, Serialize)]
pub struct OrderResidual {
    pub order: u32,
    /// Max over monomials `ħ^order θ_I`.
    pub residual: f64,
    pub worst_monomial: Option<String>,
    /// Keyed by the monomial's display form.
    pub by_monomial: BTreeMap<String, f64>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub max_order: u32,
    pub tol: f64,
    pub orders: Vec<OrderResidual>,
    pub passed: bool,
    pub first_failing_order: Option<u32>,
}

/// Normalized residual of each coefficient of `J(C)` over all triples.
pub fn jacobiator_by_monomial(def: &Deformation, tests: &TestSet, opts: &ResidualOptions) -> Result<BTreeMap<Monomial, f64>> {
    let per: Vec<BTreeMap<Monomial, f64>> = tests
        .triples
        .par_iter()
        .map(|t| {
            let scale = triple_scale(t, &opts.grid);
            let mut acc = BTreeMap::new();
            for [a, b, c] in combos(t) {
                let j = colored_jacobiator(&def.cochain, &a, &b, &c)?;
                for (m, v) in j.max_abs_by_monomial(&opts.grid) {
                    let e = acc.entry(m).or_insert(0.0f64);
                    *e = e.max(v / scale);
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for m in per {
        for (k, v) in m {
            let e = out.entry(k).or_insert(0.0f64);
            *e = e.max(v);
        }
    }
    Ok(out)
}

/// Orders `0..=max_order` (capped at the truncation order).
pub fn verify_jacobi_orderwise(def: &Deformation, max_order: u32, tests: &TestSet, opts: &ResidualOptions) -> Result<OrderReport> {
    let k = max_order.min(def.params.trunc.order);
    let all = jacobiator_by_monomial(def, tests, opts)?;
    let mut orders = Vec::new();
    for p in 0..=k {
        let by: BTreeMap<String, f64> = all.iter().filter(|(m, _)| m.hbar == p).map(|(m, v)| (m.to_string(), *v)).collect();
        let (worst, residual) = by
            .iter()
            .fold((None, 0.0f64), |(w, r), (m, &v)| if v > r { (Some(m.clone()), v) } else { (w, r) });
        orders.push(OrderResidual { order: p, residual, worst_monomial: worst, by_monomial: by, passed: residual <= opts.tol });
    }
    let first_failing_order = orders.iter().find(|o| !o.passed).map(|o| o.order);
    Ok(OrderReport { max_order: k, tol: opts.tol, passed: first_failing_order.is_none(), orders, first_failing_order })
}

impl OrderReport {
    pub fn to_markdown(&self) -> String {
        let mut s = format!("| order | residual | worst monomial | verdict |\n|---|---|---|---|\n");
        for o in &self.orders {
            s += &format!(
                "| {} | {:.3e} | {} | {} |\n",
                o.order,
                o.residual,
                o.worst_monomial.as_deref().unwrap_or("-"),
                if o.passed { "PASS" } else { "FAIL" }
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::{build_deformation, DeformParams};
    use crate::grassmann::{DeformRing, Truncation};

    #[test]
    fn c5_alone_is_jacobi() {
        let tr = Truncation::new(3, 1);
        let p = DeformParams::zero(tr).with_c(5, DeformRing::hbar(tr));
        let d = build_deformation(&p).unwrap();
        let tests = TestSet::random(3, 2, 3);
        let r = verify_jacobi_orderwise(&d, 3, &tests, &ResidualOptions::default()).unwrap();
        assert!(r.passed, "{}", r.to_markdown());
        assert_eq!(r.orders.len(), 4);
    }
}
