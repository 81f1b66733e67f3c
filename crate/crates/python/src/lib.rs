//! Python bindings. Rational arguments accept `int`, `fractions.Fraction`
//! or a literal string such as `"7/5"`; floats are rejected so that exact
//! paths stay exact. Exact results come back as `fractions.Fraction`.

use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyFloat, PyString};

use catconv::analytic::{self, AsymptoticKind, AsymptoticModel, QuadratureConfig};
use catconv::audit::{self, Grid, ReportFormat};
use catconv::evaluate::{self as eval, EvalRequest, Method};
use catconv::exactnum;
use catconv::walks::{self, WalkConfig};
use catconv::{Int, Rat};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Converts an `int`, `Fraction` or literal string into an exact rational.
pub fn to_rat(obj: &Bound<'_, PyAny>) -> PyResult<Rat> {
    if obj.is_instance_of::<PyString>() {
        return obj.extract::<String>()?.parse().map_err(value_error);
    }
    if obj.is_instance_of::<PyFloat>() {
        return Err(PyTypeError::new_err(
            "floats are not accepted; pass an int, Fraction or \"p/q\" string",
        ));
    }
    let numer: Int = obj.getattr("numerator")?.extract()?;
    let denom: Int = obj.getattr("denominator")?.extract()?;
    if denom == Int::from(0) {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(Rat::new(numer, denom))
}

/// Converts an exact rational into a `fractions.Fraction`.
pub fn to_fraction<'py>(py: Python<'py>, r: &Rat) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.numer().clone(), r.denom().clone()))
}

fn parse_method(name: &str) -> PyResult<Method> {
    name.parse().map_err(value_error)
}

/// S_n(a) by the named method (default "recurrence").
#[pyfunction]
#[pyo3(signature = (n, a, method = "recurrence"))]
fn evaluate<'py>(
    py: Python<'py>,
    n: u64,
    a: &Bound<'py, PyAny>,
    method: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let req = EvalRequest {
        n,
        a: to_rat(a)?,
        method: parse_method(method)?,
    };
    let result = py.detach(|| eval::evaluate(&req)).map_err(value_error)?;
    to_fraction(py, &result.value)
}

/// The direct convolution sum, the reference for every other method.
#[pyfunction]
fn s_direct<'py>(py: Python<'py>, n: u64, a: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let a = to_rat(a)?;
    to_fraction(py, &py.detach(|| eval::s_direct(n, &a)))
}

/// `[S_0(a), ..., S_{n_max}(a)]`.
#[pyfunction]
fn table<'py>(
    py: Python<'py>,
    n_max: u64,
    a: &Bound<'py, PyAny>,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let a = to_rat(a)?;
    (0..=n_max)
        .map(|n| to_fraction(py, &eval::s_recurrence(n, &a)))
        .collect()
}

#[pyfunction]
fn methods() -> Vec<&'static str> {
    Method::ALL.iter().map(|m| m.name()).collect()
}

#[pyfunction]
fn binomial(n: u64, k: i64) -> Int {
    exactnum::binomial(n, k)
}

#[pyfunction]
fn central_binomial(k: u64) -> Int {
    exactnum::central_binomial(k)
}

#[pyfunction]
fn catalan(n: u64) -> Int {
    exactnum::catalan(n)
}

#[pyfunction]
fn narayana(k: u64, i: i64) -> PyResult<Int> {
    if k == 0 {
        return Err(PyValueError::new_err("narayana needs k >= 1"));
    }
    Ok(exactnum::narayana(k, i))
}

/// Dyck words of semilength k, `U` for up and `D` for down.
#[pyfunction]
fn dyck_words(k: u32) -> PyResult<Vec<String>> {
    let paths = eval::dyck_enumerate(k).map_err(value_error)?;
    Ok(paths.iter().map(|p| p.word()).collect())
}

#[pyfunction]
#[pyo3(signature = (n, a, abs_tol = 1e-10, max_panel_doublings = 20))]
fn t_integral(n: u64, a: f64, abs_tol: f64, max_panel_doublings: u32) -> PyResult<f64> {
    let cfg = QuadratureConfig::new(abs_tol, max_panel_doublings).map_err(value_error)?;
    analytic::t_integral(n, a, &cfg).map_err(value_error)
}

/// `sum_k C(n,k)^2 a^k`, the exact value of the cosine integral.
#[pyfunction]
fn binomial_square_sum<'py>(
    py: Python<'py>,
    n: u64,
    a: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    to_fraction(py, &analytic::binomial_square_sum(n, &to_rat(a)?))
}

#[pyfunction]
fn legendre_pn(n: u64, x: f64) -> f64 {
    analytic::legendre_pn(n, x)
}

#[pyfunction]
#[pyo3(signature = (a, tol = 1e-12))]
fn saddle_solve(a: f64, tol: f64) -> PyResult<f64> {
    analytic::saddle_solve(a, tol).map_err(value_error)
}

#[pyfunction]
fn phi_prime(x: f64, a: f64) -> PyResult<f64> {
    analytic::phi_prime(x, a).map_err(value_error)
}

/// Log of the asymptotic model at n. `model` is "paper" for the formula as
/// printed or "singularity" for the corrected transfer-theorem form.
#[pyfunction]
#[pyo3(signature = (n, a, model = "singularity"))]
fn asym_log_value(n: u64, a: f64, model: &str) -> PyResult<f64> {
    let kind = match model {
        "paper" => AsymptoticKind::Printed,
        "singularity" => AsymptoticKind::SingularityCorrected,
        other => return Err(PyValueError::new_err(format!("unknown model {other:?}"))),
    };
    let model = AsymptoticModel::new(kind, a).map_err(value_error)?;
    analytic::asym_log_value(&model, n).map_err(value_error)
}

#[pyfunction]
fn log_s_exact(n: u64, a: &Bound<'_, PyAny>) -> PyResult<f64> {
    analytic::log_s_exact(n, &to_rat(a)?).map_err(value_error)
}

/// Monte Carlo estimate with its standard error.
#[pyclass(frozen, get_all, skip_from_py_object, module = "pycatconv")]
#[derive(Debug, Clone)]
struct Estimate {
    mean: f64,
    std_error: f64,
    samples: u64,
    seed: u64,
}

#[pymethods]
impl Estimate {
    fn __repr__(&self) -> String {
        format!(
            "Estimate(mean={}, std_error={}, samples={}, seed={})",
            self.mean, self.std_error, self.samples, self.seed
        )
    }
}

#[pyfunction]
#[pyo3(signature = (n, a, samples, seed = 0, chunks = 1, rao = false))]
fn estimate(
    py: Python<'_>,
    n: u64,
    a: &Bound<'_, PyAny>,
    samples: u64,
    seed: u64,
    chunks: u32,
    rao: bool,
) -> PyResult<Estimate> {
    let cfg = WalkConfig {
        n,
        a: to_rat(a)?,
        samples,
        seed,
        chunks,
    };
    let est = py
        .detach(|| {
            if rao {
                walks::estimate_s_rao(&cfg)
            } else {
                walks::estimate_s(&cfg)
            }
        })
        .map_err(value_error)?;
    Ok(Estimate {
        mean: est.mean,
        std_error: est.std_error,
        samples: est.samples,
        seed: est.seed,
    })
}

/// Runs the claim audit and returns the report as JSON text. `a_values`
/// defaults to the standard grid.
#[pyfunction]
#[pyo3(signature = (n_max = 24, a_values = None))]
fn run_audit(
    py: Python<'_>,
    n_max: u64,
    a_values: Option<Vec<Bound<'_, PyAny>>>,
) -> PyResult<String> {
    let grid = match a_values {
        None => Grid {
            n_max,
            ..Grid::default_grid()
        },
        Some(values) => Grid::new(
            n_max,
            values.iter().map(to_rat).collect::<PyResult<Vec<_>>>()?,
        ),
    };
    let report = py
        .detach(|| audit::run_all(&audit::registry(), &grid))
        .map_err(value_error)?;
    Ok(audit::render_report(&report, ReportFormat::Json))
}

#[pymodule]
fn pycatconv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Estimate>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(s_direct, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(methods, m)?)?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(central_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(narayana, m)?)?;
    m.add_function(wrap_pyfunction!(dyck_words, m)?)?;
    m.add_function(wrap_pyfunction!(t_integral, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_square_sum, m)?)?;
    m.add_function(wrap_pyfunction!(legendre_pn, m)?)?;
    m.add_function(wrap_pyfunction!(saddle_solve, m)?)?;
    m.add_function(wrap_pyfunction!(phi_prime, m)?)?;
    m.add_function(wrap_pyfunction!(asym_log_value, m)?)?;
    m.add_function(wrap_pyfunction!(log_s_exact, m)?)?;
    m.add_function(wrap_pyfunction!(estimate, m)?)?;
    m.add_function(wrap_pyfunction!(run_audit, m)?)?;
    Ok(())
}
