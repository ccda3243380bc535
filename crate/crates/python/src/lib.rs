//! Python bindings: groups, CCC graphs, Zagreb reports and verification
//! records. Records cross the boundary as plain dicts.

use ccc_core::families::{build_family_with_limit, build_group, FamilySpec, GroupSpec};
use ccc_core::graph::{ccc_graph, detect_clique_union, export_dot, graph_from_decomposition, CliqueDecomposition, SimpleGraph};
use ccc_core::group::{
    commuting_probability, conjugacy_data, distinct_centralizer_count, frobenius_decomposition,
    quotient_by_center, recognize_structure, FiniteGroup, GroupDocument, DEFAULT_SUBGROUP_BUDGET,
};
use ccc_core::predictions::{predicted_decomposition, verify_family as verify_family_rs, verify_quotient_cases};
use ccc_core::presentation::{coset_enumerate, coset_limit_from_env, Presentation};
use ccc_core::zagreb::{report_from_decomposition as report_from_decomposition_rs, zagreb_report, ZagrebReport};
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, value: &impl Serialize) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "Group", module = "ccc_zagreb", frozen)]
struct PyGroup {
    inner: FiniteGroup,
}

#[pymethods]
impl PyGroup {
    /// A family member such as `"dihedral:12"` or an auxiliary group such as
    /// `"frobenius:7,3"`.
    #[new]
    #[pyo3(signature = (spec, coset_limit=None))]
    fn new(spec: &str, coset_limit: Option<usize>) -> PyResult<Self> {
        let spec: GroupSpec = spec.parse().map_err(value_error)?;
        let inner = match &spec {
            GroupSpec::Family(f) => build_family_with_limit(f, coset_limit.unwrap_or_else(coset_limit_from_env)),
            GroupSpec::Aux(_) => build_group(&spec),
        }
        .map_err(value_error)?;
        Ok(PyGroup { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (text, coset_limit=None))]
    fn from_presentation(text: &str, coset_limit: Option<usize>) -> PyResult<Self> {
        let p = Presentation::parse(text).map_err(value_error)?;
        let inner = coset_enumerate(&p, coset_limit.unwrap_or_else(coset_limit_from_env)).map_err(value_error)?;
        Ok(PyGroup { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc: GroupDocument = serde_json::from_str(text).map_err(value_error)?;
        Ok(PyGroup { inner: FiniteGroup::from_document(&doc).map_err(value_error)? })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_document()).map_err(value_error)
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Group({}, order={})", self.inner.name(), self.inner.order())
    }

    fn center_size(&self) -> usize {
        conjugacy_data(&self.inner).center.len()
    }

    fn class_sizes(&self) -> Vec<usize> {
        conjugacy_data(&self.inner).class_sizes()
    }

    fn commuting_probability<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = commuting_probability(&self.inner);
        py.import("fractions")?.getattr("Fraction")?.call1((*r.numer(), *r.denom()))
    }

    fn distinct_centralizer_count(&self) -> usize {
        distinct_centralizer_count(&self.inner)
    }

    /// `(kernel order, complement order)` or `None`.
    fn frobenius(&self) -> PyResult<Option<(usize, usize)>> {
        let split = frobenius_decomposition(&self.inner, DEFAULT_SUBGROUP_BUDGET).map_err(value_error)?;
        Ok(split.map(|s| (s.kernel_order, s.complement_order)))
    }

    fn structure(&self) -> String {
        recognize_structure(&self.inner).to_string()
    }

    fn center_quotient_structure(&self) -> String {
        recognize_structure(&quotient_by_center(&self.inner)).to_string()
    }

    fn ccc_graph(&self) -> PyGraph {
        PyGraph { inner: ccc_graph(&self.inner) }
    }

    /// One dict per central-quotient hypothesis the group satisfies.
    fn verify_quotients(&self, py: Python<'_>) -> PyResult<Vec<Py<PyAny>>> {
        verify_quotient_cases(&self.inner)
            .into_iter()
            .map(|(case, rec)| {
                let rec = rec.map_err(value_error)?;
                let d = to_py(py, &rec)?;
                d.bind(py).set_item("case", case.to_string())?;
                Ok(d)
            })
            .collect()
    }
}

#[pyclass(name = "Graph", module = "ccc_zagreb", frozen)]
struct PyGraph {
    inner: SimpleGraph,
}

#[pymethods]
impl PyGraph {
    /// Mini-syntax such as `"star:5+K:3"`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: spec.parse().map_err(value_error)? })
    }

    #[staticmethod]
    fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let labels = (0..n).map(|i| format!("v{i}")).collect();
        Ok(PyGraph { inner: SimpleGraph::from_edges(labels, &edges).map_err(value_error)? })
    }

    #[staticmethod]
    fn from_decomposition(text: &str) -> PyResult<Self> {
        let d: CliqueDecomposition = text.parse().map_err(value_error)?;
        Ok(PyGraph { inner: graph_from_decomposition(&d) })
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    /// Canonical clique-union form such as `"2K4 + K1"`, or `None`.
    fn decomposition(&self) -> Option<String> {
        detect_clique_union(&self.inner).map(|d| d.to_string())
    }

    #[pyo3(signature = (name="G"))]
    fn to_dot(&self, name: &str) -> String {
        export_dot(&self.inner, name)
    }

    fn zagreb(&self) -> PyReport {
        PyReport { inner: zagreb_report(&self.inner) }
    }

    fn __repr__(&self) -> String {
        format!("Graph(|V|={}, |E|={})", self.inner.num_vertices(), self.inner.num_edges())
    }
}

#[pyclass(name = "Report", module = "ccc_zagreb", frozen)]
struct PyReport {
    inner: ZagrebReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn m1(&self) -> BigUint {
        self.inner.m1.clone()
    }

    #[getter]
    fn m2(&self) -> BigUint {
        self.inner.m2.clone()
    }

    #[getter]
    fn num_vertices(&self) -> BigUint {
        self.inner.num_vertices.clone()
    }

    #[getter]
    fn num_edges(&self) -> BigUint {
        self.inner.num_edges.clone()
    }

    /// `M2·|V|`.
    #[getter]
    fn lhs(&self) -> BigUint {
        self.inner.lhs.clone()
    }

    /// `M1·|E|`.
    #[getter]
    fn rhs(&self) -> BigUint {
        self.inner.rhs.clone()
    }

    #[getter]
    fn verdict(&self) -> &'static str {
        self.inner.verdict.as_str()
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Report(M1={}, M2={}, |V|={}, |E|={}, verdict={})",
            self.inner.m1, self.inner.m2, self.inner.num_vertices, self.inner.num_edges, self.inner.verdict
        )
    }
}

/// Report for a clique union given as text, e.g. `"2K4 + K1"`, without
/// building the graph.
#[pyfunction]
fn report_from_decomposition(text: &str) -> PyResult<PyReport> {
    let d: CliqueDecomposition = text.parse().map_err(value_error)?;
    Ok(PyReport { inner: report_from_decomposition_rs(&d) })
}

#[pyfunction]
fn predicted_structure(py: Python<'_>, spec: &str) -> PyResult<Py<PyAny>> {
    let spec: FamilySpec = spec.parse().map_err(value_error)?;
    to_py(py, &predicted_decomposition(&spec).map_err(value_error)?)
}

/// Brute force against the prediction for one family member.
#[pyfunction]
#[pyo3(signature = (spec, coset_limit=None))]
fn verify_family(py: Python<'_>, spec: &str, coset_limit: Option<usize>) -> PyResult<Py<PyAny>> {
    let spec: FamilySpec = spec.parse().map_err(value_error)?;
    let rec = verify_family_rs(&spec, coset_limit.unwrap_or_else(coset_limit_from_env)).map_err(value_error)?;
    to_py(py, &rec)
}

/// Runs the `ccc` command line in-process; output goes to the process
/// stdout/stderr and the exit code is returned.
#[pyfunction]
fn run_cli(argv: Vec<String>) -> i32 {
    ccc_core::cli::run(std::iter::once("ccc".to_string()).chain(argv))
}

#[pymodule]
fn ccc_zagreb(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(report_from_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_structure, m)?)?;
    m.add_function(wrap_pyfunction!(verify_family, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
