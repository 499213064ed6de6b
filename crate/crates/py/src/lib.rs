//! Python bindings: radius bounds, certified roots, truncated series and the
//! verification harness.

use num_bigint::BigUint;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use bohr_core::bounds::{self, Direction, Quantity};
use bohr_core::harness::{self, Budget, TableFormat};
use bohr_core::{combinatorics, json, DomainSpec, MultiIndex, TruncatedSeries};

fn py_err(e: bohr_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn index(parts: Vec<u32>) -> PyResult<MultiIndex> {
    MultiIndex::new(parts).map_err(py_err)
}

#[pyclass(name = "CertifiedRoot", module = "pybohr", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCertifiedRoot(bohr_core::CertifiedRoot);

#[pymethods]
impl PyCertifiedRoot {
    #[getter]
    fn lo(&self) -> f64 {
        self.0.lo
    }

    #[getter]
    fn hi(&self) -> f64 {
        self.0.hi
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p
    }

    #[getter]
    fn target(&self) -> f64 {
        self.0.target
    }

    #[getter]
    fn steps(&self) -> u32 {
        self.0.steps
    }

    fn width(&self) -> f64 {
        self.0.width()
    }

    fn to_json(&self) -> String {
        json::to_string(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "CertifiedRoot(lo={:.12}, hi={:.12}, p={})",
            self.0.lo, self.0.hi, self.0.p
        )
    }
}

#[pyclass(name = "RadiusBound", module = "pybohr", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRadiusBound(bounds::RadiusBound);

#[pymethods]
impl PyRadiusBound {
    #[getter]
    fn quantity(&self) -> &'static str {
        match self.0.quantity {
            Quantity::Bn => "bn",
            Quantity::Kn => "kn",
            Quantity::Ln => "ln",
        }
    }

    #[getter]
    fn direction(&self) -> &'static str {
        match self.0.direction {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
        }
    }

    #[getter]
    fn domain(&self) -> &'static str {
        self.0.domain
    }

    #[getter]
    fn n(&self) -> Option<usize> {
        self.0.n
    }

    #[getter]
    fn value(&self) -> f64 {
        self.0.value
    }

    #[getter]
    fn exact(&self) -> bool {
        self.0.exact
    }

    #[getter]
    fn certificate(&self) -> Option<PyCertifiedRoot> {
        self.0.certificate.clone().map(PyCertifiedRoot)
    }

    #[getter]
    fn source(&self) -> &'static str {
        self.0.source
    }

    /// Six-decimal rendering rounded away from the bounded quantity.
    fn display(&self) -> String {
        self.0.display(6)
    }

    fn to_json(&self) -> String {
        json::to_string(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "RadiusBound({} {} on {}, n={:?}, value={})",
            self.quantity(),
            self.direction(),
            self.0.domain,
            self.0.n,
            self.0.value
        )
    }
}

#[pyclass(name = "Domain", module = "pybohr", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDomain(DomainSpec);

#[pymethods]
impl PyDomain {
    #[staticmethod]
    fn polydisk(n: usize) -> PyResult<Self> {
        DomainSpec::polydisk(n).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn ball(n: usize) -> PyResult<Self> {
        DomainSpec::ball(n).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn hypercone(n: usize) -> PyResult<Self> {
        DomainSpec::hypercone(n).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn monomial(beta: Vec<u32>) -> PyResult<Self> {
        DomainSpec::monomial(index(beta)?).map(Self).map_err(py_err)
    }

    /// Table text: one line per multi-index, parts then `d_α`.
    #[staticmethod]
    fn custom_from_text(text: &str) -> PyResult<Self> {
        DomainSpec::custom_from_text(text).map(Self).map_err(py_err)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind().name()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.0.dimension()
    }

    fn monomial_sup(&self, alpha: Vec<u32>) -> PyResult<f64> {
        self.0.monomial_sup(&index(alpha)?).map_err(py_err)
    }

    fn scaled_monomial_sup(&self, alpha: Vec<u32>, r: f64) -> PyResult<f64> {
        self.0.scaled_monomial_sup(&index(alpha)?, r).map_err(py_err)
    }

    fn boundary_sample(&self, density: usize) -> PyResult<Vec<Vec<Complex64>>> {
        self.0.boundary_sample(density).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Domain({}, n={})", self.0.kind().name(), self.0.dimension())
    }
}

#[pyclass(name = "Series", module = "pybohr", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeries(TruncatedSeries);

#[pymethods]
impl PySeries {
    /// One-variable series from coefficients `c_0, c_1, …`.
    #[new]
    fn new(coeffs: Vec<Complex64>) -> PyResult<Self> {
        TruncatedSeries::from_coefficients(&coeffs).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn extremal_cone_family(a: f64, n: usize, cap: u32) -> PyResult<Self> {
        TruncatedSeries::extremal_cone_family(a, n, cap)
            .map(Self)
            .map_err(py_err)
    }

    #[staticmethod]
    fn mobius_witness(a: f64, cap: u32) -> PyResult<Self> {
        TruncatedSeries::mobius_witness(a, cap).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        TruncatedSeries::from_text(text).map(Self).map_err(py_err)
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.0.dimension()
    }

    #[getter]
    fn cap(&self) -> u32 {
        self.0.cap()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn coefficient(&self, alpha: Vec<u32>) -> PyResult<Complex64> {
        Ok(self.0.coefficient(&index(alpha)?))
    }

    /// `(parts, coefficient)` pairs in ascending multi-index order.
    fn coefficients(&self) -> Vec<(Vec<u32>, Complex64)> {
        self.0.iter().map(|(a, c)| (a.parts().to_vec(), *c)).collect()
    }

    fn evaluate(&self, z: Vec<Complex64>) -> PyResult<Complex64> {
        self.0.evaluate(&z).map_err(py_err)
    }

    fn compose_linear(&self, direction: Vec<Complex64>) -> PyResult<Self> {
        self.0.compose_linear(&direction).map(Self).map_err(py_err)
    }

    fn scaled(&self, factor: f64) -> Self {
        Self(self.0.scaled(factor))
    }

    fn bohr_majorant_sum(&self, domain: &PyDomain, r: f64) -> PyResult<f64> {
        Ok(self.0.bohr_majorant_sum(&domain.0, r).map_err(py_err)?.value)
    }

    fn cone_l1_sum(&self, r: f64) -> PyResult<f64> {
        Ok(self.0.cone_l1_sum(r).map_err(py_err)?.value)
    }

    /// Values `P_k(z)` of the homogeneous layers, `k = 0..=cap`.
    fn homogeneous_layers_at(&self, z: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        self.0.to_homogeneous().slice_to_line(&z).map_err(py_err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!(
            "Series(n={}, cap={}, terms={})",
            self.0.dimension(),
            self.0.cap(),
            self.0.len()
        )
    }
}

#[pyfunction]
fn general_lower(n: usize) -> PyResult<PyRadiusBound> {
    bounds::general_lower(n).map(PyRadiusBound).map_err(py_err)
}

#[pyfunction]
fn ball_lower(n: usize) -> PyResult<PyRadiusBound> {
    bounds::ball_lower(n).map(PyRadiusBound).map_err(py_err)
}

#[pyfunction]
fn kn_bounds(n: usize) -> PyResult<(PyRadiusBound, PyRadiusBound)> {
    let (lo, hi) = bounds::kn_bounds(n).map_err(py_err)?;
    Ok((PyRadiusBound(lo), PyRadiusBound(hi)))
}

#[pyfunction]
fn hypercone_upper(n: usize) -> PyResult<PyRadiusBound> {
    bounds::hypercone_upper(n).map(PyRadiusBound).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, cap = 60))]
fn refined_cone_upper(n: usize, cap: u32) -> PyResult<PyRadiusBound> {
    bounds::refined_cone_upper(n, cap).map(PyRadiusBound).map_err(py_err)
}

#[pyfunction]
fn l1_bounds() -> PyResult<(PyRadiusBound, PyRadiusBound)> {
    let (lo, hi) = bounds::l1_bounds().map_err(py_err)?;
    Ok((PyRadiusBound(lo), PyRadiusBound(hi)))
}

#[pyfunction]
fn monomial_domain_radius(beta: Vec<u32>) -> PyResult<PyRadiusBound> {
    bounds::monomial_domain_radius(&index(beta)?)
        .map(PyRadiusBound)
        .map_err(py_err)
}

#[pyfunction]
fn hypercone_root() -> PyResult<PyCertifiedRoot> {
    bounds::hypercone_root().map(PyCertifiedRoot).map_err(py_err)
}

#[pyfunction]
fn l1_root() -> PyResult<PyCertifiedRoot> {
    bounds::l1_root().map(PyCertifiedRoot).map_err(py_err)
}

#[pyfunction]
fn cone_threshold_root(a: f64) -> PyResult<PyCertifiedRoot> {
    bounds::cone_threshold_root(a).map(PyCertifiedRoot).map_err(py_err)
}

#[pyfunction]
fn cone_layer_sum(k: u32, n: usize) -> PyResult<(BigUint, BigUint)> {
    let t = bounds::cone_layer_sum(k, n).map_err(py_err)?;
    let num = t.numer().to_biguint().unwrap_or_default();
    let den = t.denom().to_biguint().unwrap_or_default();
    Ok((num, den))
}

#[pyfunction]
fn multinomial(alpha: Vec<u32>) -> PyResult<BigUint> {
    Ok(combinatorics::multinomial(&index(alpha)?))
}

#[pyfunction]
fn simplex_count(n: usize, k: u32) -> BigUint {
    combinatorics::simplex_count(n, k)
}

#[pyfunction]
fn enumerate_weight(n: usize, k: u32) -> PyResult<Vec<Vec<u32>>> {
    let layer = combinatorics::enumerate_weight(n, k).map_err(py_err)?;
    Ok(layer.into_iter().map(|a| a.parts().to_vec()).collect())
}

/// Verification reports as a JSON array.
#[pyfunction]
#[pyo3(signature = (seed = 0, budget = "small"))]
fn verify(py: Python<'_>, seed: u64, budget: &str) -> PyResult<String> {
    let budget: Budget = budget.parse().map_err(|e: String| PyValueError::new_err(e))?;
    let reports = py
        .detach(|| harness::run_verification_suite(seed, budget))
        .map_err(py_err)?;
    Ok(json::to_string(&reports))
}

/// Constant table rendered as `json`, `csv` or `md`.
#[pyfunction]
#[pyo3(signature = (format = "json", n_max = 10))]
fn table(format: &str, n_max: usize) -> PyResult<String> {
    let format: TableFormat = format.parse().map_err(|e: String| PyValueError::new_err(e))?;
    Ok(harness::build_constant_table(n_max).map_err(py_err)?.render(format))
}

#[pymodule]
fn pybohr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCertifiedRoot>()?;
    m.add_class::<PyRadiusBound>()?;
    m.add_class::<PyDomain>()?;
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(general_lower, m)?)?;
    m.add_function(wrap_pyfunction!(ball_lower, m)?)?;
    m.add_function(wrap_pyfunction!(kn_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(hypercone_upper, m)?)?;
    m.add_function(wrap_pyfunction!(refined_cone_upper, m)?)?;
    m.add_function(wrap_pyfunction!(l1_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(monomial_domain_radius, m)?)?;
    m.add_function(wrap_pyfunction!(hypercone_root, m)?)?;
    m.add_function(wrap_pyfunction!(l1_root, m)?)?;
    m.add_function(wrap_pyfunction!(cone_threshold_root, m)?)?;
    m.add_function(wrap_pyfunction!(cone_layer_sum, m)?)?;
    m.add_function(wrap_pyfunction!(multinomial, m)?)?;
    m.add_function(wrap_pyfunction!(simplex_count, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_weight, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    Ok(())
}
