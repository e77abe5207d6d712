//! Python bindings. Rationals cross the boundary as `"p/q"` strings, which
//! `fractions.Fraction` parses directly; reports come back as plain dicts.

use pyo3::exceptions::{PyAssertionError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use cnbound::electrical::{self, Backend};
use cnbound::good_pairs::{self, Ordering};
use cnbound::harness::{self, FuzzConfig, GenSpec, Model, ModelFamily, Property};
use cnbound::inequality::{self, DEFAULT_PATH_CAP};
use cnbound::{Error, Graph};

fn err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::Usage(_) | Error::Domain(_) => PyValueError::new_err(e.to_string()),
        Error::Resource(_) => PyRuntimeError::new_err(e.to_string()),
        Error::Assertion(_) => PyAssertionError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any(),
            (None, Some(i)) => i.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, val) in map {
                dict.set_item(key, to_py(py, val)?)?;
            }
            dict.into_any()
        }
    })
}

fn report<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let tree = serde_json::to_value(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &tree)
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "cnbound_py", frozen)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Graph::from_edges(n, edges).map(|inner| PyGraph { inner }).map_err(err)
    }

    /// Parses the `n m` header plus one `u v` line per edge format.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        cnbound::parse_edge_list(text).map(|inner| PyGraph { inner }).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn neighbors(&self, u: usize) -> PyResult<Vec<usize>> {
        if u >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {u} out of range")));
        }
        Ok(self.inner.neighbors(u).to_vec())
    }

    fn common_neighbors(&self, u: usize, v: usize) -> PyResult<Vec<usize>> {
        self.inner.common_neighbors(u, v).map_err(err)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_block_graph(&self) -> PyResult<bool> {
        self.inner.is_block_graph().map_err(err)
    }

    fn blocks<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &self.inner.biconnected_components().map_err(err)?)
    }

    #[pyo3(signature = (highlight=None))]
    fn to_dot(&self, highlight: Option<Vec<(usize, usize)>>) -> PyResult<String> {
        self.inner.to_dot(highlight.as_deref()).map_err(err)
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

fn ordering(g: &Graph, ranks: Vec<usize>) -> PyResult<Ordering> {
    if ranks.len() != g.n() {
        return Err(PyValueError::new_err(format!(
            "ordering has {} entries, graph has {} vertices",
            ranks.len(),
            g.n()
        )));
    }
    Ordering::from_ranks(ranks).map_err(err)
}

#[pyfunction]
fn common_neighbor_sum(g: &PyGraph) -> String {
    inequality::common_neighbor_sum(&g.inner).to_string()
}

#[pyfunction]
fn verify_theorem1<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    report(py, &inequality::verify_theorem1(&g.inner).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (g, ell, path_cap=DEFAULT_PATH_CAP))]
fn verify_generalized<'py>(py: Python<'py>, g: &PyGraph, ell: usize, path_cap: usize) -> PyResult<Bound<'py, PyAny>> {
    report(py, &inequality::verify_generalized(&g.inner, ell, path_cap).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (g, u, v, ell, path_cap=DEFAULT_PATH_CAP))]
fn path_packing<'py>(
    py: Python<'py>,
    g: &PyGraph,
    u: usize,
    v: usize,
    ell: usize,
    path_cap: usize,
) -> PyResult<Bound<'py, PyAny>> {
    report(py, &inequality::path_packing(&g.inner, u, v, ell, path_cap).map_err(err)?)
}

#[pyfunction]
fn caro_wei_sum(g: &PyGraph) -> String {
    inequality::caro_wei_sum(&g.inner).to_string()
}

#[pyfunction]
fn independence_number(g: &PyGraph) -> PyResult<usize> {
    harness::independence_number(&g.inner).map_err(err)
}

/// `ranks[v]` is the position of vertex `v` in the ordering.
#[pyfunction]
fn good_pair_graph(g: &PyGraph, ranks: Vec<usize>) -> PyResult<PyGraph> {
    let pi = ordering(&g.inner, ranks)?;
    good_pairs::good_pair_graph(&g.inner, &pi).map(|inner| PyGraph { inner }).map_err(err)
}

#[pyfunction]
fn good_pair_graph_by_deletion(g: &PyGraph, ranks: Vec<usize>) -> PyResult<PyGraph> {
    let pi = ordering(&g.inner, ranks)?;
    good_pairs::good_pair_graph_by_deletion(&g.inner, &pi)
        .map(|inner| PyGraph { inner })
        .map_err(err)
}

#[pyfunction]
fn min_weight_spanning_tree<'py>(py: Python<'py>, g: &PyGraph, ranks: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
    let pi = ordering(&g.inner, ranks)?;
    report(py, &good_pairs::min_weight_spanning_tree(&g.inner, &pi).map_err(err)?)
}

#[pyfunction]
fn exact_expected_good_edges(g: &PyGraph) -> String {
    good_pairs::exact_expected_good_edges(&g.inner).to_string()
}

#[pyfunction]
fn sample_good_edge_count<'py>(py: Python<'py>, g: &PyGraph, trials: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let rep = py
        .detach(|| good_pairs::sample_good_edge_count(&g.inner, trials, seed))
        .map_err(err)?;
    report(py, &rep)
}

#[pyfunction]
#[pyo3(signature = (g, n_limit=good_pairs::DEFAULT_ORDERING_LIMIT))]
fn all_orderings_report<'py>(py: Python<'py>, g: &PyGraph, n_limit: usize) -> PyResult<Bound<'py, PyAny>> {
    let rep = py.detach(|| good_pairs::all_orderings_report(&g.inner, n_limit)).map_err(err)?;
    report(py, &rep)
}

/// Returns `None` for block graphs.
#[pyfunction]
fn cycle_witness<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    match good_pairs::cycle_witness_ordering(&g.inner).map_err(err)? {
        Some(w) => report(py, &w),
        None => Ok(py.None().into_bound(py)),
    }
}

fn backend(name: &str) -> PyResult<Backend> {
    match name {
        "exact" => Ok(Backend::Exact),
        "float" | "floating" => Ok(Backend::Floating),
        "auto" => Ok(Backend::Auto),
        other => Err(PyValueError::new_err(format!("unknown backend {other:?}"))),
    }
}

/// Exact results are `"p/q"` strings, floating ones are floats.
#[pyfunction]
#[pyo3(signature = (g, u, v, backend="exact"))]
fn effective_resistance<'py>(
    py: Python<'py>,
    g: &PyGraph,
    u: usize,
    v: usize,
    backend: &str,
) -> PyResult<Bound<'py, PyAny>> {
    match self::backend(backend)?.resolve(g.inner.n()) {
        Backend::Floating => Ok(electrical::effective_resistance_float(&g.inner, u, v)
            .map_err(err)?
            .into_pyobject(py)?
            .into_any()),
        _ => Ok(electrical::effective_resistance_exact(&g.inner, u, v)
            .map_err(err)?
            .to_string()
            .into_pyobject(py)?
            .into_any()),
    }
}

#[pyfunction]
fn resistance_via_spanning_trees(g: &PyGraph, u: usize, v: usize) -> PyResult<String> {
    electrical::resistance_via_spanning_trees(&g.inner, u, v)
        .map(|r| r.to_string())
        .map_err(err)
}

#[pyfunction]
fn spanning_tree_count(g: &PyGraph) -> String {
    electrical::spanning_tree_count(&g.inner).to_string()
}

#[pyfunction]
#[pyo3(signature = (g, backend="auto"))]
fn forster_check<'py>(py: Python<'py>, g: &PyGraph, backend: &str) -> PyResult<Bound<'py, PyAny>> {
    let backend = self::backend(backend)?;
    let rep = py.detach(|| electrical::forster_check(&g.inner, backend)).map_err(err)?;
    report(py, &rep)
}

#[pyfunction]
fn check_bound_eq1<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    report(py, &electrical::check_bound_eq1(&g.inner).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (g, ell, path_cap=DEFAULT_PATH_CAP))]
fn path_resistance_bounds<'py>(py: Python<'py>, g: &PyGraph, ell: usize, path_cap: usize) -> PyResult<Bound<'py, PyAny>> {
    report(py, &electrical::theorem3_bounds(&g.inner, ell, path_cap).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (model, seed, n=None, p=None, blocks=None, max_clique=None))]
fn gen_graph(
    model: &str,
    seed: u64,
    n: Option<usize>,
    p: Option<f64>,
    blocks: Option<usize>,
    max_clique: Option<usize>,
) -> PyResult<PyGraph> {
    let need = |what: &str| PyValueError::new_err(format!("model {model} requires {what}"));
    let model = match model {
        "erdos_renyi" => Model::ErdosRenyi {
            n: n.ok_or_else(|| need("n"))?,
            p: p.ok_or_else(|| need("p"))?,
        },
        "random_tree" => Model::RandomTree { n: n.ok_or_else(|| need("n"))? },
        "block_graph" => Model::BlockGraph {
            blocks: blocks.ok_or_else(|| need("blocks"))?,
            max_clique: max_clique.ok_or_else(|| need("max_clique"))?,
        },
        other => return Err(PyValueError::new_err(format!("unknown model {other:?}"))),
    };
    harness::gen_graph(&GenSpec::new(model, seed))
        .map(|inner| PyGraph { inner })
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (props, models, trials, seed, max_n=harness::DEFAULT_FUZZ_MAX_N))]
fn fuzz<'py>(
    py: Python<'py>,
    props: Vec<String>,
    models: Vec<String>,
    trials: usize,
    seed: u64,
    max_n: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let properties = props
        .iter()
        .map(|p| p.parse::<Property>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let models = models
        .iter()
        .map(|m| m.parse::<ModelFamily>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let config = FuzzConfig {
        models,
        trials,
        properties,
        master_seed: seed,
        max_n,
    };
    let rep = py.detach(|| harness::fuzz_run(&config)).map_err(err)?;
    report(py, &rep)
}

#[pymodule]
fn cnbound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(common_neighbor_sum, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem1, m)?)?;
    m.add_function(wrap_pyfunction!(verify_generalized, m)?)?;
    m.add_function(wrap_pyfunction!(path_packing, m)?)?;
    m.add_function(wrap_pyfunction!(caro_wei_sum, m)?)?;
    m.add_function(wrap_pyfunction!(independence_number, m)?)?;
    m.add_function(wrap_pyfunction!(good_pair_graph, m)?)?;
    m.add_function(wrap_pyfunction!(good_pair_graph_by_deletion, m)?)?;
    m.add_function(wrap_pyfunction!(min_weight_spanning_tree, m)?)?;
    m.add_function(wrap_pyfunction!(exact_expected_good_edges, m)?)?;
    m.add_function(wrap_pyfunction!(sample_good_edge_count, m)?)?;
    m.add_function(wrap_pyfunction!(all_orderings_report, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_witness, m)?)?;
    m.add_function(wrap_pyfunction!(effective_resistance, m)?)?;
    m.add_function(wrap_pyfunction!(resistance_via_spanning_trees, m)?)?;
    m.add_function(wrap_pyfunction!(spanning_tree_count, m)?)?;
    m.add_function(wrap_pyfunction!(forster_check, m)?)?;
    m.add_function(wrap_pyfunction!(check_bound_eq1, m)?)?;
    m.add_function(wrap_pyfunction!(path_resistance_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(gen_graph, m)?)?;
    m.add_function(wrap_pyfunction!(fuzz, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pyo3::types::PyModule;

    fn diamond() -> PyGraph {
        PyGraph::from_edge_list("4 5\n0 1\n1 2\n2 3\n3 0\n0 2\n").unwrap()
    }

    #[test]
    fn reports_convert_to_dicts() {
        Python::attach(|py| {
            let rep = verify_theorem1(py, &diamond()).unwrap();
            let sum: String = rep.get_item("sum").unwrap().extract().unwrap();
            assert_eq!(sum, "19/12");
            let consistent: bool = rep.get_item("consistent").unwrap().extract().unwrap();
            assert!(consistent);
            assert!(cycle_witness(py, &PyGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap())
                .unwrap()
                .is_none());
        });
    }

    #[test]
    fn errors_map_to_python_exceptions() {
        Python::attach(|py| {
            let e = PyGraph::from_edge_list("2 1\n0 0\n").err().unwrap();
            assert!(e.is_instance_of::<PyValueError>(py));
            let big = PyGraph::new(10, (0..9).map(|i| (i, i + 1)).collect()).unwrap();
            let e = all_orderings_report(py, &big, 9).err().unwrap();
            assert!(e.is_instance_of::<PyRuntimeError>(py));
        });
    }

    #[test]
    fn module_registers_everything() {
        Python::attach(|py| {
            let m = PyModule::new(py, "cnbound_py").unwrap();
            cnbound_py(&m).unwrap();
            for name in ["Graph", "verify_theorem1", "good_pair_graph", "effective_resistance", "fuzz"] {
                assert!(m.hasattr(name).unwrap(), "{name}");
            }
            let g = m.getattr("Graph").unwrap().call1((3, vec![(0usize, 1usize), (1, 2)])).unwrap();
            let r: String = m
                .getattr("effective_resistance")
                .unwrap()
                .call1((g, 0, 2))
                .unwrap()
                .extract()
                .unwrap();
            assert_eq!(r, "2/1");
        });
    }
}
