//! Canonical JSON form of expression trees (golden files, fixtures).

use serde::{Deserialize, Serialize};

use super::{Node, SymExpr};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExprJson {
    Const { value: f64 },
    Poly { coeffs: Vec<f64> },
    Exp { rate: f64 },
    Bump { center: f64, radius: f64 },
    Step { at: f64, rising: bool },
    Sum { children: Vec<ExprJson> },
    Product { children: Vec<ExprJson> },
    Pow { base: Box<ExprJson>, exponent: u32 },
    Deriv { child: Box<ExprJson>, order: u32 },
    Cumulative { integrand: Box<ExprJson>, compact: bool },
}

impl From<&SymExpr> for ExprJson {
    fn from(e: &SymExpr) -> Self {
        match e.node() {
            Node::Const(v) => ExprJson::Const { value: *v },
            Node::Poly(c) => ExprJson::Poly { coeffs: c.clone() },
            Node::Exp(r) => ExprJson::Exp { rate: *r },
            Node::Bump { center, radius } => ExprJson::Bump { center: *center, radius: *radius },
            Node::Step { at, rising } => ExprJson::Step { at: *at, rising: *rising },
            Node::Sum(v) => ExprJson::Sum { children: v.iter().map(Into::into).collect() },
            Node::Product(v) => ExprJson::Product { children: v.iter().map(Into::into).collect() },
            Node::Pow(b, n) => ExprJson::Pow { base: Box::new(b.into()), exponent: *n },
            Node::Deriv(b, k) => ExprJson::Deriv { child: Box::new(b.into()), order: *k },
            Node::Cumulative(c) => ExprJson::Cumulative {
                integrand: Box::new((&c.integrand).into()),
                compact: c.compact,
            },
        }
    }
}

impl ExprJson {
    pub fn to_expr(&self) -> Result<SymExpr> {
        Ok(match self {
            ExprJson::Const { value } => SymExpr::constant(*value),
            ExprJson::Poly { coeffs } => SymExpr::poly(coeffs.clone()),
            ExprJson::Exp { rate } => SymExpr::exp(*rate),
            ExprJson::Bump { center, radius } => SymExpr::bump(*center, *radius),
            ExprJson::Step { at, rising } => SymExpr::step(*at, *rising),
            ExprJson::Sum { children } => {
                SymExpr::sum(children.iter().map(|c| c.to_expr()).collect::<Result<_>>()?)
            }
            ExprJson::Product { children } => {
                SymExpr::product(children.iter().map(|c| c.to_expr()).collect::<Result<_>>()?)
            }
            ExprJson::Pow { base, exponent } => base.to_expr()?.powi(*exponent),
            ExprJson::Deriv { child, order } => child.to_expr()?.diff(*order),
            ExprJson::Cumulative { integrand, compact } => {
                let f = integrand.to_expr()?;
                if *compact {
                    SymExpr::heaviside_convolve_compact(&f)?
                } else {
                    SymExpr::heaviside_convolve(&f)?
                }
            }
        })
    }
}

pub fn to_json_string(e: &SymExpr) -> String {
    serde_json::to_string(&ExprJson::from(e)).expect("expression serialization")
}

pub fn from_json_str(s: &str) -> std::result::Result<SymExpr, String> {
    let repr: ExprJson = serde_json::from_str(s).map_err(|e| e.to_string())?;
    repr.to_expr().map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_preserves_values() {
        let e = SymExpr::sum(vec![
            &SymExpr::poly(vec![1.0, -2.0, 0.5]) * &SymExpr::bump(0.2, 1.3),
            SymExpr::heaviside_convolve(&SymExpr::bump(-0.5, 0.7)).unwrap(),
            SymExpr::exp(0.3).diff(2),
        ]);
        let s = to_json_string(&e);
        let back = from_json_str(&s).unwrap();
        assert_eq!(to_json_string(&back), s);
        for x in [-1.0, -0.3, 0.0, 0.8, 2.0] {
            assert_eq!(back.eval(x), e.eval(x));
        }
    }
}
