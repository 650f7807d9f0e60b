//! Python bindings. Structured results come back as plain dicts and lists,
//! in the same JSON shapes the CLI writes.

#![allow(clippy::useless_conversion)] // triggered inside the pyo3 macros

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use nzflow_core::engine::{five_flow_oddness4, EngineOptions};
use nzflow_core::flow::{is_nowhere_zero, solve_nowhere_zero_flow_within, verify_flow, FlowCertificate};
use nzflow_core::structure::{compute_oddness, cyclic_connectivity, CyclicConnectivity};
use nzflow_core::valuation::{check_balanced_mincut, flow_to_valuation, valuation_to_flow, Valuation};
use nzflow_core::{corpus, parse_graph6, to_graph6, Budget, MultiGraph};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import_bound("json")?.call_method1("loads", (text,))?.unbind())
}

fn from_py<T: serde::de::DeserializeOwned>(py: Python<'_>, value: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = py.import_bound("json")?.call_method1("dumps", (value,))?.extract()?;
    serde_json::from_str(&text).map_err(value_err)
}

/// A finite undirected multigraph with vertices `0..n` and edge ids in
/// insertion order.
#[pyclass(module = "nzflow", frozen)]
#[derive(Clone)]
struct Graph {
    inner: MultiGraph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Graph { inner: MultiGraph::from_edges(n, edges).map_err(value_err)? })
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        Ok(Graph { inner: parse_graph6(text).map_err(value_err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Graph { inner: MultiGraph::from_json(text).map_err(value_err)? })
    }

    #[staticmethod]
    fn petersen() -> Self {
        Graph { inner: corpus::petersen() }
    }

    fn to_graph6(&self) -> PyResult<String> {
        to_graph6(&self.inner).map_err(value_err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().map(|(_, u, v)| (u, v)).collect()
    }

    fn is_cubic(&self) -> bool {
        self.inner.is_cubic()
    }

    fn bridges(&self) -> Vec<usize> {
        self.inner.bridges()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

/// Returns `(oddness, matching edge ids)`.
#[pyfunction]
fn oddness(g: &Graph) -> PyResult<(usize, Vec<usize>)> {
    let r = compute_oddness(&g.inner).map_err(value_err)?;
    Ok((r.oddness, r.witness.matching.clone()))
}

/// Exact cyclic edge-connectivity below `bound`, else `None` meaning at least `bound`.
#[pyfunction]
#[pyo3(signature = (g, bound = 6))]
fn cyclic_connectivity_below(g: &Graph, bound: usize) -> PyResult<Option<usize>> {
    let (c, _) = cyclic_connectivity(&g.inner, bound, &mut Budget::unlimited()).map_err(value_err)?;
    Ok(match c {
        CyclicConnectivity::Exact(k) => Some(k),
        CyclicConnectivity::AtLeast(_) => None,
    })
}

/// A nowhere-zero k-flow certificate as a dict, or `None` if none exists.
#[pyfunction]
#[pyo3(signature = (g, k = 5, max_work = None))]
fn find_flow(py: Python<'_>, g: &Graph, k: u32, max_work: Option<u64>) -> PyResult<Option<PyObject>> {
    let mut budget = Budget::new(max_work);
    let sol = solve_nowhere_zero_flow_within(&g.inner, k, &mut budget).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    sol.flow().map(|f| to_py(py, &f.to_certificate())).transpose()
}

/// True if the certificate is a nowhere-zero flow on `g`.
#[pyfunction]
fn verify_certificate(py: Python<'_>, g: &Graph, certificate: &Bound<'_, PyAny>) -> PyResult<bool> {
    let cert: FlowCertificate = from_py(py, certificate)?;
    Ok(cert.to_flow(&g.inner).is_ok_and(|f| verify_flow(&g.inner, &f).is_ok() && is_nowhere_zero(&f)))
}

/// The valuation of a flow certificate, `{"denominator": d, "values": [...]}`.
#[pyfunction]
fn valuation_of(py: Python<'_>, g: &Graph, certificate: &Bound<'_, PyAny>) -> PyResult<PyObject> {
    let cert: FlowCertificate = from_py(py, certificate)?;
    let f = cert.to_flow(&g.inner).map_err(value_err)?;
    to_py(py, &flow_to_valuation(&g.inner, &f).map_err(value_err)?)
}

/// Balance report of a valuation: `{"balanced": bool, "violator": ...}`.
#[pyfunction]
fn check_balanced(py: Python<'_>, g: &Graph, valuation: &Bound<'_, PyAny>) -> PyResult<PyObject> {
    let v: Valuation = from_py(py, valuation)?;
    to_py(py, &check_balanced_mincut(&g.inner, &v).map_err(value_err)?)
}

/// A flow certificate realizing a balanced valuation.
#[pyfunction]
#[pyo3(signature = (g, valuation, k = 5))]
fn flow_from_valuation(py: Python<'_>, g: &Graph, valuation: &Bound<'_, PyAny>, k: u32) -> PyResult<PyObject> {
    let v: Valuation = from_py(py, valuation)?;
    let f = valuation_to_flow(&g.inner, &v, k).map_err(value_err)?;
    to_py(py, &f.to_certificate())
}

/// Runs the oddness-4 engine and returns its certificate as a dict.
#[pyfunction]
#[pyo3(signature = (g, fallback = true, max_work = None))]
fn five_flow(py: Python<'_>, g: &Graph, fallback: bool, max_work: Option<u64>) -> PyResult<PyObject> {
    let opts = EngineOptions { fallback, max_work, ..EngineOptions::default() };
    let cert = five_flow_oddness4(&g.inner, &opts).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &cert)
}

#[pymodule]
fn nzflow(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(oddness, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_connectivity_below, m)?)?;
    m.add_function(wrap_pyfunction!(find_flow, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(valuation_of, m)?)?;
    m.add_function(wrap_pyfunction!(check_balanced, m)?)?;
    m.add_function(wrap_pyfunction!(flow_from_valuation, m)?)?;
    m.add_function(wrap_pyfunction!(five_flow, m)?)?;
    Ok(())
}
