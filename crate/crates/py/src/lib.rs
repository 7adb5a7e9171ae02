//! Python bindings: `pyapnkit.Field`, `Vbf`, `LinearMap`, `CosetDecomposition`
//! and the constructions, invariants and searches over them.

use apnkit::constructions as cons;
use apnkit::invariants::{self, InvariantBundle};
use apnkit::search::{self, SearchMode, SearchOptions};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: apnkit::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serializable results cross over as plain dicts and lists.
fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Field", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyField(apnkit::Field);

#[pymethods]
impl PyField {
    /// `GF(2^n)`; without `modulus` the preset polynomial for `n` is used.
    #[new]
    #[pyo3(signature = (n, modulus=None))]
    fn new(n: u32, modulus: Option<u32>) -> PyResult<Self> {
        match modulus {
            Some(p) => apnkit::Field::new(n, p),
            None => apnkit::Field::preset(n),
        }
        .map(PyField)
        .map_err(err)
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.degree()
    }

    #[getter]
    fn modulus(&self) -> u32 {
        self.0.modulus()
    }

    #[getter]
    fn generator(&self) -> u32 {
        self.0.generator()
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        self.0.mul(x, y)
    }

    fn inv(&self, x: u32) -> PyResult<u32> {
        self.0.inv(x).map_err(err)
    }

    fn pow(&self, x: u32, k: u64) -> u32 {
        self.0.pow(x, k)
    }

    fn gen_pow(&self, k: u64) -> u32 {
        self.0.gen_pow(k)
    }

    fn log(&self, x: u32) -> Option<u32> {
        self.0.log(x)
    }

    fn trace(&self, x: u32) -> u32 {
        self.0.trace(x)
    }

    fn trace_to_subfield(&self, x: u32, m: u32) -> PyResult<u32> {
        self.0.trace_to_subfield(x, m).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Field(n={}, modulus={:#x})", self.0.degree(), self.0.modulus())
    }
}

#[pyclass(name = "Vbf", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyVbf(apnkit::Vbf);

#[pymethods]
impl PyVbf {
    #[new]
    fn new(n: u32, m: u32, table: Vec<u32>) -> PyResult<Self> {
        apnkit::Vbf::from_table(n, m, table).map(PyVbf).map_err(err)
    }

    #[staticmethod]
    fn power(field: &PyField, d: u64) -> Self {
        PyVbf(apnkit::Vbf::power(&field.0, d))
    }

    #[staticmethod]
    fn inverse(field: &PyField) -> Self {
        PyVbf(apnkit::Vbf::inverse(&field.0))
    }

    /// Parses the `vbf1` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        apnkit::format::parse_vbf1(text).map(PyVbf).map_err(err)
    }

    fn dumps(&self) -> String {
        apnkit::format::write_vbf1(&self.0)
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.n()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.0.m()
    }

    fn table(&self) -> Vec<u32> {
        self.0.table().to_vec()
    }

    fn __call__(&self, x: u32) -> PyResult<u32> {
        if x as usize >= self.0.domain_size() {
            return Err(PyValueError::new_err(format!("{x} is outside F_2^{}", self.0.n())));
        }
        Ok(self.0.eval(x))
    }

    fn __len__(&self) -> usize {
        self.0.domain_size()
    }

    fn is_apn(&self) -> bool {
        self.0.is_apn()
    }

    fn is_quadratic(&self) -> bool {
        self.0.is_quadratic()
    }

    fn differential_uniformity(&self) -> u32 {
        self.0.differential_uniformity()
    }

    fn algebraic_degree(&self) -> u32 {
        self.0.algebraic_degree()
    }

    /// Difference distribution table as a list of rows.
    fn ddt(&self) -> Vec<Vec<u32>> {
        let ddt = self.0.ddt();
        (0..self.0.domain_size() as u32).map(|a| ddt.row(a).unwrap().to_vec()).collect()
    }

    /// Walsh spectrum as a `{|W|: count}` dict.
    fn walsh_spectrum<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.walsh_spectrum())
    }

    fn gamma_rank(&self) -> PyResult<u64> {
        invariants::gamma_rank(&self.0).map_err(err)
    }

    #[pyo3(signature = (gamma_rank=false))]
    fn invariants<'py>(&self, py: Python<'py>, gamma_rank: bool) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &InvariantBundle::compute(&self.0, gamma_rank).map_err(err)?)
    }

    fn __add__(&self, other: &PyVbf) -> PyResult<Self> {
        self.0.add(&other.0).map(PyVbf).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Vbf(n={}, m={})", self.0.n(), self.0.m())
    }
}

#[pyclass(name = "LinearMap", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyLinearMap(apnkit::LinearMap);

#[pymethods]
impl PyLinearMap {
    /// From the images of the unit vectors.
    #[new]
    fn new(n_in: u32, n_out: u32, columns: Vec<u32>) -> PyResult<Self> {
        apnkit::LinearMap::new(n_in, n_out, columns).map(PyLinearMap).map_err(err)
    }

    /// `x ↦ Σ c_i x^{2^i}`.
    #[staticmethod]
    fn linearized(field: &PyField, coefficients: Vec<u32>) -> PyResult<Self> {
        apnkit::LinearMap::from_linearized(&field.0, &coefficients).map(PyLinearMap).map_err(err)
    }

    fn linearized_coefficients(&self, field: &PyField) -> PyResult<Vec<u32>> {
        self.0.linearized_coefficients(&field.0).map_err(err)
    }

    fn columns(&self) -> Vec<u32> {
        self.0.columns().to_vec()
    }

    fn __call__(&self, x: u32) -> u32 {
        self.0.eval(x)
    }

    fn rank(&self) -> u32 {
        self.0.rank()
    }

    fn __repr__(&self) -> String {
        format!("LinearMap({:?})", self.0.columns())
    }
}

#[pyclass(name = "CosetDecomposition", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCosetDecomposition(cons::CosetDecomposition);

#[pymethods]
impl PyCosetDecomposition {
    #[new]
    fn new(n: u32, basis: Vec<u32>, reps: [u32; 4]) -> PyResult<Self> {
        cons::CosetDecomposition::new(n, basis, reps).map(PyCosetDecomposition).map_err(err)
    }

    /// Cosets of `ker Tr^n_2`, ordered by trace value `0, 1, β, β²`.
    #[staticmethod]
    fn trace_to_f4(field: &PyField) -> PyResult<Self> {
        cons::CosetDecomposition::from_trace_to_f4(&field.0).map(PyCosetDecomposition).map_err(err)
    }

    fn coset_of(&self, x: u32) -> usize {
        self.0.coset_of(x)
    }

    fn representatives(&self) -> [u32; 4] {
        self.0.representatives()
    }
}

#[pyfunction]
fn hyperplane_modify(field: &PyField, f: &PyVbf, l: &PyLinearMap) -> PyResult<PyVbf> {
    cons::hyperplane_modify(&field.0, &f.0, &l.0).map(PyVbf).map_err(err)
}

/// `None` when `F + Tr·L` is APN, else the failing `{a, x}`.
#[pyfunction]
#[pyo3(signature = (field, f, l, e0=None))]
fn tr_l_criterion<'py>(
    py: Python<'py>,
    field: &PyField,
    f: &PyVbf,
    l: &PyLinearMap,
    e0: Option<u32>,
) -> PyResult<Bound<'py, PyAny>> {
    let e0 = e0.unwrap_or_else(|| field.0.trace_one_element());
    to_py(py, &cons::tr_l_criterion(&field.0, &f.0, &l.0, e0).map_err(err)?)
}

#[pyfunction]
fn exp_sum_condition<'py>(py: Python<'py>, field: &PyField, l: &PyLinearMap) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &cons::exp_sum_condition(&field.0, &l.0).map_err(err)?)
}

/// The thirteen tabulated maps on the preset `GF(2^6)`.
#[pyfunction]
fn table1_maps(field: &PyField) -> PyResult<Vec<PyLinearMap>> {
    Ok(cons::table1_maps(&field.0).map_err(err)?.into_iter().map(PyLinearMap).collect())
}

#[pyfunction]
fn coset_modify(f: &PyVbf, dec: &PyCosetDecomposition, a: [u32; 4]) -> PyResult<PyVbf> {
    cons::coset_modify(&f.0, &dec.0, a).map(PyVbf).map_err(err)
}

#[pyfunction]
fn coset_criterion<'py>(
    py: Python<'py>,
    f: &PyVbf,
    dec: &PyCosetDecomposition,
    a: [u32; 4],
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &cons::coset_criterion(&f.0, &dec.0, a).map_err(err)?)
}

#[pyfunction]
fn admissible_sums(f: &PyVbf, dec: &PyCosetDecomposition) -> PyResult<Vec<u32>> {
    Ok(cons::admissible_sums(&f.0, &dec.0).map_err(err)?.into_iter().collect())
}

/// `(f + u·g, certificate holds, witness)` for an `(n, m+1)`-function `(f, g)`.
#[pyfunction]
fn switch(combined: &PyVbf, u: u32) -> PyResult<(PyVbf, bool, Option<(u32, u32, u32)>)> {
    let spec = cons::SwitchSpec::from_combined(&combined.0, u).map_err(err)?;
    let out = cons::switch(&spec).map_err(err)?;
    Ok((PyVbf(out.function), out.certificate, out.witness))
}

/// `(F, holds)`: the concatenation of `f` and `g` and whether it is APN.
#[pyfunction]
fn concatenate(f: &PyVbf, g: &PyVbf) -> PyResult<(PyVbf, bool)> {
    let emb = cons::Embedding::standard(f.0.n());
    let h = cons::concatenate(&f.0, &g.0, &emb).map_err(err)?;
    let holds = cons::concat_is_apn(&f.0, &g.0).map_err(err)?.is_none();
    Ok((PyVbf(h), holds))
}

#[pyfunction]
fn inverse_extension(field: &PyField) -> PyResult<PyVbf> {
    cons::inverse_extension(&field.0).map(PyVbf).map_err(err)
}

/// `{"verdict": ..., "differing": [...]}` from two invariant bundles.
#[pyfunction]
#[pyo3(signature = (f, g, gamma_rank=false))]
fn compare<'py>(py: Python<'py>, f: &PyVbf, g: &PyVbf, gamma_rank: bool) -> PyResult<Bound<'py, PyAny>> {
    let a = InvariantBundle::compute(&f.0, gamma_rank).map_err(err)?;
    let b = InvariantBundle::compute(&g.0, gamma_rank).map_err(err)?;
    to_py(py, &invariants::distinguish(&a, &b))
}

/// Searches linear maps `L` making `F + Tr·L` APN. Releases the GIL.
#[pyfunction]
#[pyo3(signature = (field, f, samples=None, seed=0, workers=1, cap=100, e0=None, free_e0_image=false, allow_long=false))]
#[allow(clippy::too_many_arguments)]
fn search_tr_l<'py>(
    py: Python<'py>,
    field: &PyField,
    f: &PyVbf,
    samples: Option<u64>,
    seed: u64,
    workers: usize,
    cap: usize,
    e0: Option<u32>,
    free_e0_image: bool,
    allow_long: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = SearchOptions {
        mode: match samples {
            Some(samples) => SearchMode::Random { samples, seed },
            None => SearchMode::Exhaustive,
        },
        workers,
        cap,
        e0,
        free_e0_image,
        allow_long,
    };
    let (field, f) = (field.0.clone(), f.0.clone());
    let report = py.detach(|| search::search_tr_l(&field, &f, &opts)).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
fn pyapnkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyVbf>()?;
    m.add_class::<PyLinearMap>()?;
    m.add_class::<PyCosetDecomposition>()?;
    m.add_function(wrap_pyfunction!(hyperplane_modify, m)?)?;
    m.add_function(wrap_pyfunction!(tr_l_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(exp_sum_condition, m)?)?;
    m.add_function(wrap_pyfunction!(table1_maps, m)?)?;
    m.add_function(wrap_pyfunction!(coset_modify, m)?)?;
    m.add_function(wrap_pyfunction!(coset_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_sums, m)?)?;
    m.add_function(wrap_pyfunction!(switch, m)?)?;
    m.add_function(wrap_pyfunction!(concatenate, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_extension, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(search_tr_l, m)?)?;
    Ok(())
}
