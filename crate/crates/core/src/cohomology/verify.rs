//! Residual measurement over test triples and the single-identity verifiers.

use std::sync::Arc;

use rayon::prelude::*;

use super::{differential, jacobiator, jacobiator_single, Differential};
use crate::antibracket::{Cochain, Distribution, FormId, GradedProduct, Operator};
use crate::error::{Error, Result};
use crate::grassmann::{Homog, PureFun};
use crate::report::Check;
use crate::testfns::{TestSet, Triple};

/// Evaluation grid and verdict thresholds.
#[derive(Clone, Debug)]
pub struct ResidualOptions {
    pub grid: Vec<f64>,
    /// Zero verdict threshold.
    pub tol: f64,
    /// Nonzero verdict threshold.
    pub nu: f64,
}

impl Default for ResidualOptions {
    fn default() -> Self {
        ResidualOptions { grid: residual_grid(61), tol: 1e-8, nu: 1e-6 }
    }
}

/// `points` equispaced points of `[-3, 3]`.
pub fn residual_grid(points: usize) -> Vec<f64> {
    (0..points).map(|i| -3.0 + 6.0 * i as f64 / (points - 1) as f64).collect()
}

pub fn max_abs(f: &PureFun, grid: &[f64]) -> f64 {
    grid.iter().fold(0.0f64, |m, &x| {
        let (a, b) = f.eval(x);
        m.max(a.abs()).max(b.abs())
    })
}

/// `max(1, max |input|)^3` over the grid.
pub fn triple_scale(t: &Triple, grid: &[f64]) -> f64 {
    let m = t.iter().map(|f| max_abs(f, grid)).fold(1.0f64, f64::max);
    m.powi(3)
}

/// All homogeneous component combinations of a triple.
pub fn combos(t: &Triple) -> Vec<[Homog; 3]> {
    let mut v = Vec::new();
    for a in t[0].components() {
        for b in t[1].components() {
            for c in t[2].components() {
                v.push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    v
}

/// Normalized grid residual of `expr` for each triple, maximized over component combinations.
pub fn residuals<F>(tests: &TestSet, opts: &ResidualOptions, expr: F) -> Result<Vec<f64>>
where
    F: Fn(&Homog, &Homog, &Homog) -> Result<PureFun> + Sync,
{
    tests
        .triples
        .par_iter()
        .map(|t| {
            let scale = triple_scale(t, &opts.grid);
            let mut worst = 0.0f64;
            for [a, b, c] in combos(t) {
                worst = worst.max(max_abs(&expr(&a, &b, &c)?, &opts.grid) / scale);
            }
            Ok(worst)
        })
        .collect()
}

/// Max over triples and component combinations of the normalized grid residual of `expr`.
pub fn max_residual<F>(tests: &TestSet, opts: &ResidualOptions, expr: F) -> Result<f64>
where
    F: Fn(&Homog, &Homog, &Homog) -> Result<PureFun> + Sync,
{
    Ok(residuals(tests, opts, expr)?.into_iter().fold(0.0f64, f64::max))
}

fn to_check(name: &str, r: Result<f64>, threshold: f64, zero: bool) -> Check {
    match r {
        Ok(v) if zero => Check::zero(name, v, threshold),
        Ok(v) => Check::nonzero(name, v, threshold),
        Err(e) => Check::failed(name, e.to_string()),
    }
}

/// `J(m2_0) = 0`.
pub fn verify_jacobi_m0(tests: &TestSet, opts: &ResidualOptions) -> Check {
    let r = max_residual(tests, opts, |f, g, h| jacobiator_single(&FormId::M0, f, g, h));
    to_check("jacobi(m2_0)", r, opts.tol, true)
}

/// `d_2 m = 0`.
pub fn verify_cocycle(m: &dyn Cochain, tests: &TestSet, opts: &ResidualOptions) -> Check {
    let r = max_residual(tests, opts, |f, g, h| differential(m, &[f.clone(), g.clone(), h.clone()]));
    to_check(&format!("d2({})", m.label()), r, opts.tol, true)
}

/// The graded product is not a cocycle; passes when `d_2` of it exceeds `threshold`.
pub fn verify_negative_control(tests: &TestSet, opts: &ResidualOptions, threshold: f64) -> Check {
    let r = max_residual(tests, opts, |f, g, h| {
        differential(&GradedProduct, &[f.clone(), g.clone(), h.clone()])
    });
    to_check("d2(graded_product) nonzero", r, threshold, false)
}

/// `m2_7(M) = d_1 T` with `T(f) = -M(∫dξ ξ f)`.
pub fn verify_exactness_m7(m: &Distribution, tests: &TestSet, opts: &ResidualOptions) -> Result<Check> {
    if !m.in_e_prime() {
        return Err(Error::NotInEPrime);
    }
    let pairing = Operator::XiPairing(m.clone());
    let m7 = FormId::M7(m.clone());
    let r = max_residual(tests, opts, |f, g, _| {
        let lhs = m7.eval_homog(&[f.clone(), g.clone()])?;
        let rhs = differential(&pairing, &[f.clone(), g.clone()])?;
        Ok(lhs.add(&rhs.scale(-1.0)))
    });
    Ok(to_check("m2_7(M) - d1(M o xi_int)", r, opts.tol, true))
}

/// `d_2 d_1 M = 0`.
pub fn verify_nilpotency(m: Arc<dyn Cochain>, tests: &TestSet, opts: &ResidualOptions) -> Check {
    let dm = Differential(m);
    let r = max_residual(tests, opts, |f, g, h| differential(&dm, &[f.clone(), g.clone(), h.clone()]));
    to_check(&format!("d2(d1({}))", dm.0.label()), r, opts.tol, true)
}

/// `d_2 m + (-1)^{ϵ(f)ϵ(h)} J(m2_0, m) = 0`.
pub fn verify_bridge(m: &dyn Cochain, tests: &TestSet, opts: &ResidualOptions) -> Check {
    let r = max_residual(tests, opts, |f, g, h| {
        let d = differential(m, &[f.clone(), g.clone(), h.clone()])?;
        let j = jacobiator(&FormId::M0, m, f, g, h)?;
        let s = if f.shifted() * h.shifted() == 1 { -1.0 } else { 1.0 };
        Ok(d.add(&j.scale(s)))
    });
    to_check(&format!("bridge({})", m.label()), r, opts.tol, true)
}
