//! Python bindings for `branch-invariants`.

use ::branch_invariants as core;
use ::branch_invariants::{check, enumerate, output};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py_err(e: core::Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

/// Characteristic exponents `(n; beta_1, ..., beta_g)` of a plane branch.
#[pyclass(name = "CharacteristicExponents", module = "branch_invariants", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyCharExponents(core::CharacteristicExponents);

#[pymethods]
impl PyCharExponents {
    #[new]
    fn new(n: u64, beta: Vec<u64>) -> PyResult<Self> {
        core::CharacteristicExponents::new(n, beta).map(Self).map_err(to_py_err)
    }

    /// Parses `"n:b1,b2,..."`.
    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        s.parse().map(Self).map_err(to_py_err)
    }

    #[getter]
    fn n(&self) -> u64 {
        self.0.n()
    }

    #[getter]
    fn beta(&self) -> Vec<u64> {
        self.0.beta().to_vec()
    }

    #[getter]
    fn g(&self) -> usize {
        self.0.g()
    }

    fn gcd_chain(&self) -> Vec<u64> {
        self.0.gcd_chain()
    }

    fn semigroup(&self) -> PyResult<PySemigroup> {
        self.0.semigroup().map(PySemigroup).map_err(to_py_err)
    }

    /// `[(multiplicity, kind, stage), ...]` along the minimal resolution.
    fn multiplicity_sequence(&self) -> PyResult<Vec<(u64, String, usize)>> {
        let seq = core::multiplicity_sequence(&self.0).map_err(to_py_err)?;
        Ok(seq.iter().map(|p| (p.multiplicity, p.kind.to_string(), p.stage)).collect())
    }

    fn report(&self) -> PyResult<PyReport> {
        core::full_report(&self.0).map(PyReport).map_err(to_py_err)
    }

    /// The full class report as JSON, identical to the CLI's `--format json`.
    fn report_json(&self) -> PyResult<String> {
        let r = output::ClassReport::new(&self.0).map_err(to_py_err)?;
        Ok(r.render(output::OutputFormat::Json))
    }

    fn __repr__(&self) -> String {
        format!("CharacteristicExponents{}", self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Minimal generators of the semigroup of values of a plane branch.
#[pyclass(name = "Semigroup", module = "branch_invariants", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySemigroup(core::SemigroupGenerators);

#[pymethods]
impl PySemigroup {
    #[new]
    fn new(gens: Vec<u64>) -> PyResult<Self> {
        core::SemigroupGenerators::new(gens).map(Self).map_err(to_py_err)
    }

    #[getter]
    fn gens(&self) -> Vec<u64> {
        self.0.gens().to_vec()
    }

    fn char_exponents(&self) -> PyResult<PyCharExponents> {
        self.0.char_exponents().map(PyCharExponents).map_err(to_py_err)
    }

    fn conductor(&self) -> PyResult<u64> {
        self.0.conductor().map_err(to_py_err)
    }

    fn gap_count(&self) -> PyResult<u64> {
        self.0.gap_count().map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!("Semigroup{}", self.0)
    }
}

#[pyclass(name = "InvariantReport", module = "branch_invariants", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyReport(core::InvariantReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn n(&self) -> u64 {
        self.0.n
    }

    #[getter]
    fn mu(&self) -> u64 {
        self.0.mu
    }

    #[getter]
    fn tau_minus(&self) -> u64 {
        self.0.tau_minus
    }

    #[getter]
    fn q_min(&self) -> u64 {
        self.0.q_min
    }

    #[getter]
    fn tau_min(&self) -> u64 {
        self.0.tau_min
    }

    /// `mu / tau_min` as a reduced `(numerator, denominator)` pair.
    #[getter]
    fn quotient(&self) -> (u64, u64) {
        (self.0.quotient.num(), self.0.quotient.den())
    }

    #[getter]
    fn tau_lower_bound(&self) -> u64 {
        self.0.tau_lower_bound
    }

    #[getter]
    fn delta_gen_gaps(&self) -> u64 {
        self.0.delta_gen_gaps
    }

    #[getter]
    fn dimca_greuel_margin(&self) -> i128 {
        self.0.dimca_greuel_margin()
    }

    fn __repr__(&self) -> String {
        let r = &self.0;
        format!(
            "InvariantReport(n={}, mu={}, tau_minus={}, q_min={}, tau_min={}, delta_gen_gaps={})",
            r.n, r.mu, r.tau_minus, r.q_min, r.tau_min, r.delta_gen_gaps
        )
    }
}

#[pyfunction]
fn sigma(k: u64) -> PyResult<u64> {
    core::sigma(k).map_err(to_py_err)
}

#[pyfunction]
fn tau_lower_bound(n: u64) -> PyResult<u64> {
    core::tau_lower_bound(n).map_err(to_py_err)
}

fn bounds(max_mult: u64, max_beta: u64, max_pairs: Option<usize>) -> PyResult<enumerate::EnumerationBounds> {
    enumerate::EnumerationBounds::new(max_mult, max_beta, max_pairs).map_err(to_py_err)
}

#[pyfunction]
#[pyo3(signature = (max_mult, max_beta, max_pairs=None))]
fn enumerate_classes(max_mult: u64, max_beta: u64, max_pairs: Option<usize>) -> PyResult<Vec<PyCharExponents>> {
    Ok(enumerate::enumerate_classes(bounds(max_mult, max_beta, max_pairs)?)
        .map(PyCharExponents)
        .collect())
}

/// Sweep records and summary as a JSON string (same layout as the CLI).
#[pyfunction]
#[pyo3(signature = (max_mult, max_beta, max_pairs=None))]
fn sweep_json(py: Python<'_>, max_mult: u64, max_beta: u64, max_pairs: Option<usize>) -> PyResult<String> {
    let b = bounds(max_mult, max_beta, max_pairs)?;
    let records = py.detach(|| enumerate::sweep(b));
    let summary = enumerate::summarize(&records);
    Ok(output::render_sweep(&records, &summary, output::OutputFormat::Json))
}

/// Runs the identity suite; returns the number of classes checked or raises
/// `RuntimeError` naming the first failing identity.
#[pyfunction]
#[pyo3(signature = (max_mult=check::DEFAULT_MAX_MULTIPLICITY, max_beta=check::DEFAULT_MAX_BETA))]
fn run_check(py: Python<'_>, max_mult: u64, max_beta: u64) -> PyResult<usize> {
    let b = bounds(max_mult, max_beta, None)?;
    py.detach(|| check::run(b, None))
        .map(|s| s.classes)
        .map_err(|f| PyRuntimeError::new_err(format!("{}: {}", f.identity, f.detail)))
}

#[pymodule]
#[pyo3(name = "branch_invariants")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCharExponents>()?;
    m.add_class::<PySemigroup>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(tau_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_classes, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_json, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    Ok(())
}
