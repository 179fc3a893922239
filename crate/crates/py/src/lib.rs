//! Python module `kohn`: polynomials, ideals, Levi determinants and full
//! problem runs on top of `kohn-core`.

use kohn_core::cli::{exit_code, run_problem, ProblemFile};
use kohn_core::ideal::Ideal;
use kohn_core::{parse_expression, Poly};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Polynomial in z1..zn and their conjugates, exact Gaussian-rational coefficients.
#[pyclass(name = "Poly", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly(Poly);

#[pymethods]
impl PyPoly {
    #[new]
    fn new(src: &str, n: usize) -> PyResult<Self> {
        parse_expression(src, n).map(PyPoly).map_err(value_error)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn conjugate(&self) -> Self {
        PyPoly(self.0.conjugate())
    }

    fn is_real(&self) -> bool {
        self.0.conjugate() == self.0
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.checked_add(&other.0).map(PyPoly).map_err(value_error)
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.checked_sub(&other.0).map(PyPoly).map_err(value_error)
    }

    fn __mul__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.checked_mul(&other.0).map(PyPoly).map_err(value_error)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?}, {})", self.0.to_string(), self.0.n())
    }
}

/// Ideal of the polynomial ring in z and zbar.
#[pyclass(name = "Ideal", frozen)]
struct PyIdeal(Ideal);

#[pymethods]
impl PyIdeal {
    #[new]
    fn new(n: usize, generators: Vec<PyRef<'_, PyPoly>>) -> PyResult<Self> {
        if let Some(g) = generators.iter().find(|g| g.0.n() != n) {
            return Err(value_error(format!("generator {} has n = {}, expected {n}", g.0, g.0.n())));
        }
        Ok(PyIdeal(Ideal::new(n, generators.iter().map(|g| g.0.clone()))))
    }

    fn contains(&self, p: PyRef<'_, PyPoly>) -> PyResult<bool> {
        if p.0.n() != self.0.n() {
            return Err(value_error("ambient dimension mismatch"));
        }
        Ok(self.0.contains(&p.0))
    }

    /// Reduced Gröbner basis, ascending by leading monomial.
    fn basis(&self) -> Vec<PyPoly> {
        self.0.basis().iter().cloned().map(PyPoly).collect()
    }

    fn generators(&self) -> Vec<PyPoly> {
        self.0.generators().iter().cloned().map(PyPoly).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Coefficients of `dr ^ dbar r ^ (ddbar r)^(n-q-k) ^ df_1 ^ ... ^ df_k`.
#[pyfunction]
#[pyo3(signature = (r, q, tuple = Vec::new()))]
fn levi_determinants(r: PyRef<'_, PyPoly>, q: usize, tuple: Vec<PyRef<'_, PyPoly>>) -> PyResult<Vec<PyPoly>> {
    let fs: Vec<Poly> = tuple.iter().map(|f| f.0.clone()).collect();
    let dets = kohn_core::forms::levi_determinants(&r.0, q, &fs).map_err(value_error)?;
    Ok(dets.into_iter().map(PyPoly).collect())
}

/// Run a problem file given as JSON text; returns the machine trace and the
/// CLI exit code (0 terminated, 2 otherwise).
#[pyfunction]
fn run_problem_json(py: Python<'_>, src: &str) -> PyResult<(String, i32)> {
    let file = ProblemFile::from_json(src).map_err(value_error)?;
    let doc = py.detach(|| run_problem(&file)).map_err(value_error)?;
    Ok((doc.to_json(), exit_code(&doc)))
}

#[pymodule]
fn kohn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyIdeal>()?;
    m.add_function(wrap_pyfunction!(levi_determinants, m)?)?;
    m.add_function(wrap_pyfunction!(run_problem_json, m)?)?;
    Ok(())
}
