//! Python bindings: the matrix type plus the main decision operations.
//! Structured results cross the boundary as JSON strings; simple values as
//! native floats/tuples.

use num_complex::Complex64 as Complex;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use kleinian_rp::config::{EnumCaps, Tolerances};
use kleinian_rp::moebius::{self, ParamTriple};
use kleinian_rp::oracle;
use kleinian_rp::witnesses::WitnessSet;
use kleinian_rp::{geometry, orbifold353};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(err)
}

/// A determinant-1 complex 2x2 matrix acting on the boundary sphere,
/// understood up to sign.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct MoebiusMap {
    inner: moebius::MoebiusMap,
}

#[pymethods]
impl MoebiusMap {
    /// Build from four (re, im) pairs in row-major order; the matrix is
    /// rescaled to determinant 1.
    #[new]
    fn new(entries: [(f64, f64); 4]) -> PyResult<Self> {
        let [a, b, c, d] = entries.map(|(re, im)| Complex::new(re, im));
        let m = moebius::MoebiusMap::new_normalized(a, b, c, d);
        if !m.det().is_finite() || (m.det() - Complex::new(1.0, 0.0)).norm() > 1e-9 {
            return Err(PyValueError::new_err("matrix is singular"));
        }
        Ok(MoebiusMap { inner: m })
    }

    fn entries(&self) -> [(f64, f64); 4] {
        self.inner.entries().map(|z| (z.re, z.im))
    }

    fn trace(&self) -> (f64, f64) {
        let t = self.inner.trace();
        (t.re, t.im)
    }

    fn beta(&self) -> (f64, f64) {
        let b = self.inner.beta();
        (b.re, b.im)
    }

    fn inverse(&self) -> MoebiusMap {
        MoebiusMap { inner: self.inner.inverse() }
    }

    fn mul(&self, other: &MoebiusMap) -> MoebiusMap {
        MoebiusMap { inner: self.inner * other.inner }
    }

    fn __mul__(&self, other: &MoebiusMap) -> MoebiusMap {
        self.mul(other)
    }

    fn pow(&self, k: i64) -> MoebiusMap {
        MoebiusMap { inner: self.inner.pow(k) }
    }

    /// Element classification as a JSON string.
    fn classify(&self) -> PyResult<String> {
        let c = moebius::classify_element(&self.inner, &Tolerances::default()).map_err(err)?;
        to_json(&c)
    }

    fn __repr__(&self) -> String {
        let [a, b, c, d] = self.inner.entries();
        format!("MoebiusMap([[{a}, {b}], [{c}, {d}]])")
    }
}

/// Normalized generator pair for a parameter triple.
#[pyfunction]
fn construct_generators(beta: f64, beta_prime: f64, gamma: f64) -> PyResult<(MoebiusMap, MoebiusMap)> {
    let pair = moebius::construct_generators(
        &ParamTriple::new(beta, beta_prime, gamma),
        &Tolerances::default(),
    )
    .map_err(err)?;
    Ok((MoebiusMap { inner: pair.f }, MoebiusMap { inner: pair.g }))
}

/// Trace parameters `(beta, beta', gamma)` of a pair.
#[pyfunction]
fn params_of(f: &MoebiusMap, g: &MoebiusMap) -> PyResult<(f64, f64, f64)> {
    let t = moebius::params_of(&f.inner, &g.inner, &Tolerances::default()).map_err(err)?;
    Ok((t.beta, t.beta_prime, t.gamma))
}

/// cosh of the minimal distance between elliptic axes of orders p and q.
#[pyfunction]
fn min_distance(p: u32, q: u32) -> PyResult<f64> {
    geometry::min_distance(p, q).map_err(err)
}

/// Taxonomy of a triple (elementary / invariant-plane / truly spatial) as JSON.
#[pyfunction]
fn classify_pair(beta: f64, beta_prime: f64, gamma: f64) -> PyResult<String> {
    let c = kleinian_rp::taxonomy::classify_pair(
        &ParamTriple::new(beta, beta_prime, gamma),
        &Tolerances::default(),
    )
    .map_err(err)?;
    to_json(&c)
}

/// Full discreteness verdict for a triple, as JSON.
#[pyfunction]
#[pyo3(signature = (beta, beta_prime, gamma, cap = 200))]
fn decide(beta: f64, beta_prime: f64, gamma: f64, cap: u32) -> PyResult<String> {
    let v = oracle::decide_triple(
        &ParamTriple::new(beta, beta_prime, gamma),
        &EnumCaps::uniform(cap),
        &Tolerances::default(),
    )
    .map_err(err)?;
    to_json(&v)
}

/// Discreteness verdict for a matrix pair, as JSON.
#[pyfunction]
#[pyo3(signature = (f, g, cap = 200))]
fn decide_matrices(f: &MoebiusMap, g: &MoebiusMap, cap: u32) -> PyResult<String> {
    let v = oracle::decide_matrices(&f.inner, &g.inner, &EnumCaps::uniform(cap), &Tolerances::default())
        .map_err(err)?;
    to_json(&v)
}

/// Table rows matched by a triple, as JSON.
#[pyfunction]
#[pyo3(signature = (beta, beta_prime, gamma, cap = 200))]
fn match_table(beta: f64, beta_prime: f64, gamma: f64, cap: u32) -> PyResult<String> {
    let rows = oracle::match_table(
        &ParamTriple::new(beta, beta_prime, gamma),
        &EnumCaps::uniform(cap),
        &Tolerances::default(),
    );
    to_json(&rows)
}

/// Instances of one table row under a cap, as JSON.
#[pyfunction]
#[pyo3(signature = (row, cap = 50))]
fn enumerate_row(row: u32, cap: u32) -> PyResult<String> {
    let items =
        oracle::enumerate_row(row, &EnumCaps::uniform(cap), &Tolerances::default()).map_err(err)?;
    to_json(&items)
}

/// Witness elements of a triple: traces, classes and word residuals, as JSON.
#[pyfunction]
fn witnesses(beta: f64, beta_prime: f64, gamma: f64) -> PyResult<String> {
    let tol = Tolerances::default();
    let pair = moebius::construct_generators(&ParamTriple::new(beta, beta_prime, gamma), &tol)
        .map_err(err)?;
    let ws = WitnessSet::build(&pair.f, &pair.g, &tol).map_err(err)?;
    to_json(&ws)
}

/// The minimal-volume orbifold verification report, as JSON.
#[pyfunction]
fn verify_353() -> PyResult<String> {
    let r = orbifold353::verify_353(&Tolerances::default()).map_err(err)?;
    to_json(&r)
}

#[pymodule(name = "kleinian_rp")]
fn kleinian_rp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<MoebiusMap>()?;
    m.add_function(wrap_pyfunction!(construct_generators, m)?)?;
    m.add_function(wrap_pyfunction!(params_of, m)?)?;
    m.add_function(wrap_pyfunction!(min_distance, m)?)?;
    m.add_function(wrap_pyfunction!(classify_pair, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(decide_matrices, m)?)?;
    m.add_function(wrap_pyfunction!(match_table, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_row, m)?)?;
    m.add_function(wrap_pyfunction!(witnesses, m)?)?;
    m.add_function(wrap_pyfunction!(verify_353, m)?)?;
    Ok(())
}
