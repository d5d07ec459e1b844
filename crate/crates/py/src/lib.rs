//! Python bindings for `treespec`.
//!
//! Graphs are wrapped in a `Graph` class; matrices cross the boundary as
//! lists of lists of Python ints. Verdicts and reports are returned as plain
//! dicts built from their JSON form.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use treespec::checks::{self, ClaimId};
use treespec::corpus::{self, CorpusSource, OutputFormat, RunConfig};
use treespec::graph::{self as g, Orientation};
use treespec::linalg::{self, IntMatrix};
use treespec::oracle;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serializes `value` and hands it to Python's `json.loads`.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(value_err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows()
}

fn matrix_from(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(PyValueError::new_err("rows must have equal length"));
    }
    IntMatrix::from_entries(r, c, rows.into_iter().flatten().collect()).map_err(value_err)
}

fn claim(name: &str) -> PyResult<ClaimId> {
    name.parse().map_err(value_err)
}

/// A finite simple undirected graph on vertices `0..order`.
#[pyclass(name = "Graph", module = "treespec_py", frozen)]
struct PyGraph {
    inner: g::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(order: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self {
            inner: g::Graph::from_edge_list(order, &edges).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: g::parse_graph6(text).map_err(value_err)?,
        })
    }

    fn graph6(&self) -> PyResult<String> {
        g::to_graph6(&self.inner).map_err(value_err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_bipartite(&self) -> bool {
        self.inner.is_bipartite()
    }

    fn components(&self) -> Vec<Vec<usize>> {
        self.inner.components()
    }

    fn line_graph(&self) -> Self {
        Self {
            inner: self.inner.line_graph(),
        }
    }

    fn adjacency(&self) -> Vec<Vec<BigInt>> {
        matrix_rows(&self.inner.adjacency())
    }

    fn laplacian(&self) -> Vec<Vec<BigInt>> {
        matrix_rows(&self.inner.laplacian())
    }

    fn signless_laplacian(&self) -> Vec<Vec<BigInt>> {
        matrix_rows(&self.inner.signless_laplacian())
    }

    /// Vertex-edge incidence matrix; `orientation` (one bool per edge,
    /// `True` meaning the lower endpoint is the tail) selects the signed form.
    #[pyo3(signature = (orientation=None))]
    fn incidence(&self, orientation: Option<Vec<bool>>) -> PyResult<Vec<Vec<BigInt>>> {
        let m = match orientation {
            Some(o) => self.inner.incidence_oriented(&Orientation::new(o)),
            None => self.inner.incidence_unoriented(),
        };
        m.map(|m| matrix_rows(&m)).map_err(value_err)
    }

    fn tree_count(&self) -> BigInt {
        checks::tree_count(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph({}, {:?})", self.inner.order(), self.inner.edges())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

fn wrap(r: Result<g::Graph, g::GraphError>) -> PyResult<PyGraph> {
    r.map(|inner| PyGraph { inner }).map_err(value_err)
}

#[pyfunction]
fn complete_graph(n: usize) -> PyResult<PyGraph> {
    wrap(g::complete_graph(n))
}

#[pyfunction]
fn cycle(n: usize) -> PyResult<PyGraph> {
    wrap(g::cycle(n))
}

#[pyfunction]
fn path(n: usize) -> PyResult<PyGraph> {
    wrap(g::path(n))
}

#[pyfunction]
fn random_tree(n: usize, seed: u64) -> PyResult<PyGraph> {
    wrap(g::random_tree(n, seed))
}

#[pyfunction]
fn random_connected(n: usize, edge_prob: f64, seed: u64) -> PyResult<PyGraph> {
    wrap(g::random_connected(n, edge_prob, seed))
}

#[pyfunction]
fn random_unicyclic(n: usize, seed: u64) -> PyResult<PyGraph> {
    wrap(g::random_unicyclic(n, seed))
}

#[pyfunction]
fn det(m: Vec<Vec<BigInt>>) -> PyResult<BigInt> {
    linalg::det(&matrix_from(m)?).map_err(value_err)
}

/// Coefficients of `det(xI − m)`, constant term first.
#[pyfunction]
fn char_poly(m: Vec<Vec<BigInt>>) -> PyResult<Vec<BigInt>> {
    linalg::char_poly(&matrix_from(m)?)
        .map(|p| p.coeffs().to_vec())
        .map_err(value_err)
}

/// `[(eigenvalue, multiplicity)]` for the integer eigenvalues, descending.
#[pyfunction]
fn integer_eigenvalues(m: Vec<Vec<BigInt>>) -> PyResult<Vec<(BigInt, usize)>> {
    let p = linalg::char_poly(&matrix_from(m)?).map_err(value_err)?;
    let s = linalg::integer_eigenvalues(&p).map_err(value_err)?;
    Ok(s.eigenvalues)
}

#[pyfunction]
fn smith_invariants(m: Vec<Vec<BigInt>>) -> PyResult<Vec<BigInt>> {
    Ok(linalg::smith_normal_form(&matrix_from(m)?).invariant_factors)
}

#[pyfunction]
fn rank_gf2(m: Vec<Vec<BigInt>>) -> PyResult<usize> {
    Ok(linalg::rank_gf2(&matrix_from(m)?))
}

/// `(tau, t, s)` with `tau = 2^t * s` and `s` odd.
#[pyfunction]
fn factor_tree_count(tau: BigInt) -> PyResult<(BigInt, u64, BigInt)> {
    let f = oracle::factor_tree_count(&tau).map_err(value_err)?;
    Ok((f.tau, f.t, f.s))
}

/// Number of spanning trees by enumerating edge subsets.
#[pyfunction]
fn spanning_tree_count_bruteforce(graph: &PyGraph) -> PyResult<BigInt> {
    oracle::spanning_tree_count_bruteforce(&graph.inner).map_err(value_err)
}

#[pyfunction]
fn claims() -> Vec<&'static str> {
    ClaimId::ALL.iter().map(|c| c.as_str()).collect()
}

/// One checker on one graph, as a verdict dict.
#[pyfunction]
#[pyo3(signature = (claim_id, graph, seed=0))]
fn check(py: Python<'_>, claim_id: &str, graph: &PyGraph, seed: u64) -> PyResult<Py<PyAny>> {
    let id = claim(claim_id)?;
    let verdict = py.detach(|| checks::run_check(id, &graph.inner, seed));
    to_py(py, &verdict)
}

#[pyfunction]
#[pyo3(signature = (graph, seed=0))]
fn analyze(py: Python<'_>, graph: &PyGraph, seed: u64) -> PyResult<Py<PyAny>> {
    let report = py.detach(|| corpus::analyze(&graph.inner, seed));
    to_py(py, &report)
}

/// Runs the selected checkers (all when `checks` is None) over `graphs` and
/// returns the report dict.
#[pyfunction]
#[pyo3(signature = (graphs, checks=None, jobs=1))]
fn verify(
    py: Python<'_>,
    graphs: Vec<PyRef<'_, PyGraph>>,
    checks: Option<Vec<String>>,
    jobs: usize,
) -> PyResult<Py<PyAny>> {
    let ids = checks
        .unwrap_or_default()
        .iter()
        .map(|c| claim(c))
        .collect::<PyResult<Vec<_>>>()?;
    let graphs: Vec<g::Graph> = graphs.iter().map(|p| p.inner.clone()).collect();
    let config = RunConfig::new(
        CorpusSource::File("<memory>".into()),
        &ids,
        jobs,
        OutputFormat::Json,
        false,
    );
    let report = py
        .detach(|| corpus::verify_graphs(&config, &graphs))
        .map_err(value_err)?;
    to_py(py, &report)
}

#[pymodule]
fn treespec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(complete_graph, m)?)?;
    m.add_function(wrap_pyfunction!(cycle, m)?)?;
    m.add_function(wrap_pyfunction!(path, m)?)?;
    m.add_function(wrap_pyfunction!(random_tree, m)?)?;
    m.add_function(wrap_pyfunction!(random_connected, m)?)?;
    m.add_function(wrap_pyfunction!(random_unicyclic, m)?)?;
    m.add_function(wrap_pyfunction!(det, m)?)?;
    m.add_function(wrap_pyfunction!(char_poly, m)?)?;
    m.add_function(wrap_pyfunction!(integer_eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(smith_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(rank_gf2, m)?)?;
    m.add_function(wrap_pyfunction!(factor_tree_count, m)?)?;
    m.add_function(wrap_pyfunction!(spanning_tree_count_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(claims, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
