//! Python bindings. Every function returns a JSON string.

use oddbracket::antibracket::{Distribution, FormId};
use oddbracket::cohomology::table::{jacobiator_table as table, TableConfig};
use oddbracket::cohomology::verify::{residual_grid, verify_cocycle, verify_jacobi_m0 as jacobi_m0, ResidualOptions};
use oddbracket::deformation::{self, build_deformation, verify_jacobi_orderwise, DeformParams};
use oddbracket::report::Report;
use oddbracket::testfns::TestSet;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn opts(tol: f64, nu: f64) -> PyResult<ResidualOptions> {
    if !(tol > 0.0 && nu > tol && nu.is_finite()) {
        return Err(PyValueError::new_err(format!("need 0 < tol < nu, got tol = {tol}, nu = {nu}")));
    }
    Ok(ResidualOptions { grid: residual_grid(61), tol, nu })
}

fn params(text: &str) -> PyResult<DeformParams> {
    let p = DeformParams::from_json_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    p.validate().map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(p)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// Checks `d2 m = 0` for the six local cocycles and `m2_7(delta_0)`.
#[pyfunction]
#[pyo3(signature = (seed = 0, count = 50, tol = 1e-8, nu = 1e-6))]
pub fn verify_cocycles(seed: u64, count: usize, tol: f64, nu: f64) -> PyResult<String> {
    let o = opts(tol, nu)?;
    let tests = TestSet::random(seed, count, 3);
    let forms = [FormId::M1, FormId::M2, FormId::M3, FormId::M4, FormId::M5, FormId::M6, FormId::M7(Distribution::delta(0.0))];
    let checks = forms.iter().map(|m| verify_cocycle(m, &tests, &o)).collect();
    Ok(Report::new("verify-cocycles", checks).to_json())
}

#[pyfunction]
#[pyo3(signature = (seed = 0, count = 100, tol = 1e-8, nu = 1e-6))]
pub fn verify_jacobi_m0(seed: u64, count: usize, tol: f64, nu: f64) -> PyResult<String> {
    Ok(json(&jacobi_m0(&TestSet::random(seed, count, 3), &opts(tol, nu)?)))
}

#[pyfunction]
#[pyo3(signature = (seed = 0, count = 50, tol = 1e-8, nu = 1e-6))]
pub fn jacobiator_table(seed: u64, count: usize, tol: f64, nu: f64) -> PyResult<String> {
    let mut cfg = TableConfig::new(Distribution::delta(0.0), "delta(0)", seed, count);
    cfg.opts = opts(tol, nu)?;
    Ok(json(&table(&cfg)))
}

/// Evaluates the constraint relations for parameters given as JSON.
#[pyfunction]
pub fn check_constraints(params_json: &str) -> PyResult<String> {
    Ok(json(&deformation::check_constraints(&params(params_json)?)))
}

/// Order-by-order Jacobi identity for parameters given as JSON.
#[pyfunction]
#[pyo3(signature = (params_json, order = 4, seed = 0, tol = 1e-8, nu = 1e-6))]
pub fn verify_deformation(params_json: &str, order: u32, seed: u64, tol: f64, nu: f64) -> PyResult<String> {
    let p = params(params_json)?;
    let d = build_deformation(&p).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let tests = TestSet::random(seed.wrapping_add(101), 4, 3).extend(TestSet::witnesses());
    let r = verify_jacobi_orderwise(&d, order, &tests, &opts(tol, nu)?).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(json(&r))
}

/// Returns the normalized parameters.
#[pyfunction]
pub fn normalize_c4(params_json: &str) -> PyResult<String> {
    let (q, _) = deformation::normalize_c4(&params(params_json)?).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(json(&q.to_json()))
}

#[pymodule]
fn oddbracket_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(verify_cocycles, m)?)?;
    m.add_function(wrap_pyfunction!(verify_jacobi_m0, m)?)?;
    m.add_function(wrap_pyfunction!(jacobiator_table, m)?)?;
    m.add_function(wrap_pyfunction!(check_constraints, m)?)?;
    m.add_function(wrap_pyfunction!(verify_deformation, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_c4, m)?)?;
    Ok(())
}
