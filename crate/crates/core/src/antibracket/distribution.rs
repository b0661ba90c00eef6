//! Distributions on the line: finite delta combs plus a locally integrable kernel.

use crate::error::{Error, Result};
use crate::symfun::{self, Node, SymExpr};

/// `weight · δ^{(order)}(· - at)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaTerm {
    pub at: f64,
    pub order: u32,
    pub weight: f64,
}

#[derive(Clone, Debug, Default)]
pub struct Distribution {
    pub deltas: Vec<DeltaTerm>,
    pub kernel: Option<SymExpr>,
}

impl Distribution {
    pub fn zero() -> Self {
        Distribution::default()
    }

    pub fn delta(at: f64) -> Self {
        Self::delta_deriv(at, 0)
    }

    pub fn delta_deriv(at: f64, order: u32) -> Self {
        Distribution { deltas: vec![DeltaTerm { at, order, weight: 1.0 }], kernel: None }
    }

    pub fn kernel(rho: SymExpr) -> Self {
        Distribution { deltas: vec![], kernel: Some(rho) }
    }

    pub fn is_zero(&self) -> bool {
        self.deltas.iter().all(|d| d.weight == 0.0) && self.kernel.as_ref().is_none_or(|k| k.is_zero())
    }

    /// Compactly supported (an element of `E'`).
    pub fn in_e_prime(&self) -> bool {
        self.kernel.as_ref().is_none_or(|k| k.support().is_bounded())
    }

    pub fn scale(&self, s: f64) -> Self {
        Distribution {
            deltas: self.deltas.iter().map(|d| DeltaTerm { weight: d.weight * s, ..*d }).collect(),
            kernel: self.kernel.as_ref().map(|k| k.scale(s)),
        }
    }

    pub fn add(&self, o: &Distribution) -> Self {
        let mut deltas = self.deltas.clone();
        deltas.extend(o.deltas.iter().copied());
        let kernel = match (&self.kernel, &o.kernel) {
            (Some(a), Some(b)) => Some(a + b),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        Distribution { deltas, kernel }
    }

    /// Short human-readable name, e.g. `delta'(0.2)` or `2*delta(0) + kernel`.
    pub fn label(&self) -> String {
        let mut parts: Vec<String> = self
            .deltas
            .iter()
            .map(|d| {
                let w = if d.weight == 1.0 { String::new() } else { format!("{}*", d.weight) };
                let primes = match d.order {
                    0 => String::new(),
                    1 => "'".into(),
                    2 => "''".into(),
                    k => format!("^({k})"),
                };
                format!("{w}delta{primes}({})", d.at)
            })
            .collect();
        if self.kernel.is_some() {
            parts.push("kernel".into());
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// `Σ w (-1)^k φ^{(k)}(a) + ∫ ρ φ`.
    pub fn apply(&self, phi: &SymExpr) -> Result<f64> {
        let mut acc = 0.0;
        for d in &self.deltas {
            let j = phi.jet(d.at, d.order as usize);
            let sign = if d.order % 2 == 0 { 1.0 } else { -1.0 };
            acc += d.weight * sign * j.derivative(d.order as usize);
        }
        if let Some(k) = &self.kernel {
            acc += (k * phi).integrate()?;
        }
        Ok(acc)
    }

    /// `μ̃(x) = M(θ(· - x) - θ̃)`, itself a distribution in `x`.
    pub fn mu_tilde(&self) -> Result<Distribution> {
        let step = symfun::smooth_step();
        let mut out = Distribution::zero();
        let mut smooth: Vec<SymExpr> = Vec::new();
        for d in &self.deltas {
            if d.order == 0 {
                smooth.push(SymExpr::step(d.at, false).scale(d.weight));
                smooth.push(SymExpr::constant(-d.weight * step.eval(d.at)));
            } else {
                out.deltas.push(DeltaTerm { at: d.at, order: d.order - 1, weight: -d.weight });
                let sign = if d.order % 2 == 0 { 1.0 } else { -1.0 };
                let der = step.jet(d.at, d.order as usize).derivative(d.order as usize);
                smooth.push(SymExpr::constant(-d.weight * sign * der));
            }
        }
        if let Some(k) = &self.kernel {
            smooth.push(kernel_mu_tilde(k)?);
        }
        if !smooth.is_empty() {
            out.kernel = Some(SymExpr::sum(smooth));
        }
        Ok(out)
    }
}

/// `μ̃` for a kernel that is compactly supported, a polynomial, or a sum of those.
fn kernel_mu_tilde(rho: &SymExpr) -> Result<SymExpr> {
    let step = symfun::smooth_step();
    if rho.support().is_bounded() {
        // ∫_x^∞ ρ - ∫ ρ θ̃
        let total = rho.integrate()?;
        let shift = (rho * &step).integrate()?;
        let h = SymExpr::heaviside_convolve(rho)?;
        return Ok(SymExpr::sum(vec![SymExpr::constant(total - shift), -h]));
    }
    match rho.node() {
        Node::Const(c) => poly_mu_tilde(&[*c]),
        Node::Poly(p) => poly_mu_tilde(p),
        Node::Sum(parts) => {
            let pieces = parts.iter().map(kernel_mu_tilde).collect::<Result<Vec<_>>>()?;
            Ok(SymExpr::sum(pieces))
        }
        _ => Err(Error::NonIntegrable(
            "mu_tilde needs a compact or polynomial kernel".into(),
        )),
    }
}

/// `Σ c_k [-x^{k+1}/(k+1) + ∫ y^k (θ(y) - θ̃(y)) dy]`.
fn poly_mu_tilde(c: &[f64]) -> Result<SymExpr> {
    let step = symfun::smooth_step();
    let gap = &SymExpr::step(0.0, true) - &step;
    let mut coeffs = vec![0.0; c.len() + 1];
    let mut constant = 0.0;
    for (k, ck) in c.iter().enumerate() {
        coeffs[k + 1] = -ck / (k + 1) as f64;
        let mono = SymExpr::poly({
            let mut v = vec![0.0; k + 1];
            v[k] = 1.0;
            v
        });
        constant += ck * (&mono * &gap).integrate_over(-1.0, 1.0);
    }
    coeffs[0] = constant;
    Ok(SymExpr::poly(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::smooth_step;

    #[test]
    fn delta_actions() {
        let b = SymExpr::bump(0.3, 1.0);
        assert_eq!(Distribution::delta(0.3).apply(&b).unwrap(), b.eval(0.3));
        let d1 = Distribution::delta_deriv(0.1, 1).apply(&b).unwrap();
        assert!((d1 + b.diff(1).eval(0.1)).abs() < 1e-15);
        let ones = Distribution::kernel(SymExpr::constant(1.0));
        assert!(!ones.in_e_prime());
        assert!((ones.apply(&b).unwrap() - b.integrate().unwrap()).abs() < 1e-14);
    }

    #[test]
    fn mu_tilde_of_delta() {
        let a = 1.5;
        let mt = Distribution::delta(a).mu_tilde().unwrap();
        let k = mt.kernel.unwrap();
        assert!(mt.deltas.is_empty());
        assert!((k.eval(2.0) + 1.0).abs() < 1e-15);
        assert!((k.eval(0.0) - 0.0).abs() < 1e-15);
        let a = 0.2;
        let mt = Distribution::delta(a).mu_tilde().unwrap();
        let k = mt.kernel.unwrap();
        assert!((k.eval(-0.5) - (1.0 - smooth_step().eval(a))).abs() < 1e-15);
        assert!(Distribution::zero().mu_tilde().unwrap().is_zero());
    }

    /// Compare `μ̃` against direct quadrature of `∫μ(y)(θ(y-x) - θ̃(y))dy` on a window.
    #[test]
    fn mu_tilde_of_kernels() {
        let step = smooth_step();
        let rho = SymExpr::bump(0.4, 0.9);
        let mt = Distribution::kernel(rho.clone()).mu_tilde().unwrap();
        let poly = Distribution::kernel(SymExpr::constant(1.0)).mu_tilde().unwrap();
        for x in [-2.0, -0.7, 0.0, 0.35, 1.1, 2.5] {
            let direct = rho.integrate_over(x, 10.0) - (&rho * &step).integrate().unwrap();
            assert!((mt.kernel.as_ref().unwrap().eval(x) - direct).abs() < 1e-11);
            // ∫ (θ(y-x) - θ̃(y)) dy = -x by oddness of θ - θ̃
            assert!((poly.kernel.as_ref().unwrap().eval(x) + x).abs() < 1e-11);
        }
    }

    #[test]
    fn mu_tilde_of_delta_derivative() {
        let mt = Distribution::delta_deriv(0.0, 1).mu_tilde().unwrap();
        assert_eq!(mt.deltas, vec![DeltaTerm { at: 0.0, order: 0, weight: -1.0 }]);
        let c = mt.kernel.unwrap().eval(0.0);
        assert!((c - smooth_step().diff(1).eval(0.0)).abs() < 1e-14);
    }
}
