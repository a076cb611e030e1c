//! Python bindings: graphs, permutation groups, flows, the exhaustive solver
//! and the 3-flow pipeline.

use nzflow::families;
use nzflow::flow::{self, FlowError};
use nzflow::format;
use nzflow::pipeline::{self, PipelineError};
use nzflow::{Permutation, PipelineOptions, SolverConfig};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(nzflow, OutsideScopeError, PyException, "A hypothesis of the pipeline fails.");
create_exception!(nzflow, InfeasibleError, PyException, "No nowhere-zero 3-flow exists.");
create_exception!(nzflow, BudgetExceededError, PyException, "The search budget ran out.");
create_exception!(nzflow, InternalError, PyException, "An internal invariant was violated.");

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn flow_err(e: FlowError) -> PyErr {
    match e {
        FlowError::BudgetExceeded { .. } => BudgetExceededError::new_err(e.to_string()),
        other => value_err(other),
    }
}

fn config(budget: Option<u64>) -> SolverConfig {
    match budget {
        Some(b) => SolverConfig { budget: Some(b) },
        None => SolverConfig::default(),
    }
}

/// Undirected multigraph with indexed edges and no loops.
#[pyclass(name = "Graph", module = "nzflow", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph(nzflow::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        nzflow::Graph::new(n, edges).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        format::parse_graph(text).map(Self).map_err(value_err)
    }

    fn to_text(&self) -> String {
        format::write_graph(&self.0)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.0.vertex_count() {
            return Err(value_err(format!("vertex {v} out of range")));
        }
        Ok(self.0.degree(v))
    }

    /// Common degree, or None when the graph is not regular.
    fn valency(&self) -> Option<usize> {
        self.0.valency()
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn cycle_rank(&self) -> usize {
        self.0.cycle_rank()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.0.vertex_count(), self.0.edge_count())
    }
}

/// Permutation group on `0..degree`, given by generator image lists.
#[pyclass(name = "PermGroup", module = "nzflow", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPermGroup(nzflow::PermGroup);

#[pymethods]
impl PyPermGroup {
    #[new]
    fn new(degree: usize, generators: Vec<Vec<usize>>) -> PyResult<Self> {
        nzflow::PermGroup::from_images(degree, &generators)
            .map(Self)
            .map_err(value_err)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        format::parse_group(text).map(Self).map_err(value_err)
    }

    fn to_text(&self) -> String {
        format::write_group(&self.0)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn generators(&self) -> Vec<Vec<usize>> {
        self.0.generators().iter().map(Permutation::images).collect()
    }

    fn order(&self) -> PyResult<usize> {
        self.0.order().map_err(value_err)
    }

    fn is_abelian(&self) -> bool {
        self.0.is_abelian()
    }

    /// Orders of the derived series terms, first to last.
    fn derived_series(&self) -> PyResult<Vec<usize>> {
        Ok(self.0.derived_series().map_err(value_err)?.orders())
    }

    /// Derived length, or None when the group is not solvable.
    fn derived_length(&self) -> PyResult<Option<usize>> {
        Ok(self.0.derived_series().map_err(value_err)?.derived_length)
    }

    fn is_solvable(&self) -> PyResult<bool> {
        Ok(self.0.derived_series().map_err(value_err)?.is_solvable())
    }

    fn orbits(&self) -> Vec<Vec<usize>> {
        self.0.orbits().blocks().to_vec()
    }

    fn is_transitive(&self) -> bool {
        self.0.is_transitive()
    }

    fn is_arc_transitive(&self, graph: &PyGraph) -> PyResult<bool> {
        self.0.is_arc_transitive(&graph.0).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "PermGroup(degree={}, generators={})",
            self.0.degree(),
            self.0.generators().len()
        )
    }
}

/// An orientation with integer edge values bounded by `k - 1`.
#[pyclass(name = "Flow", module = "nzflow", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFlow(nzflow::Flow);

#[pymethods]
impl PyFlow {
    #[new]
    fn new(k: u32, arcs: Vec<(usize, usize)>, values: Vec<i32>) -> Self {
        Self(nzflow::Flow::new(k, nzflow::Orientation::from_arcs(arcs), values))
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        format::parse_flow(text).map(Self).map_err(value_err)
    }

    fn to_text(&self) -> String {
        format::write_flow(&self.0)
    }

    #[getter]
    fn k(&self) -> u32 {
        self.0.k
    }

    #[getter]
    fn arcs(&self) -> Vec<(usize, usize)> {
        self.0.orientation.arcs().to_vec()
    }

    #[getter]
    fn values(&self) -> Vec<i32> {
        self.0.values.clone()
    }

    fn __repr__(&self) -> String {
        format!("Flow(k={}, m={})", self.0.k, self.0.values.len())
    }
}

/// One-line report: `OK nowhere-zero k-flow` or the first defect.
#[pyfunction]
fn verify_flow(graph: &PyGraph, flow: &PyFlow) -> String {
    flow::verify_flow(&graph.0, &flow.0).to_string()
}

#[pyfunction]
fn is_nowhere_zero(graph: &PyGraph, flow: &PyFlow) -> bool {
    flow::verify_flow(&graph.0, &flow.0).is_nowhere_zero()
}

/// Exhaustive search; None when no nowhere-zero k-flow exists.
#[pyfunction]
#[pyo3(signature = (graph, k, budget=None))]
fn solve_nz_kflow(py: Python<'_>, graph: &PyGraph, k: u32, budget: Option<u64>) -> PyResult<Option<PyFlow>> {
    let g = graph.0.clone();
    let found = py.detach(move || flow::solve_nz_kflow(&g, k, &config(budget)));
    found.map(|f| f.map(PyFlow)).map_err(flow_err)
}

#[pyfunction]
fn eulerian_two_flow(graph: &PyGraph) -> PyResult<PyFlow> {
    flow::eulerian_two_flow(&graph.0).map(PyFlow).map_err(flow_err)
}

#[pyfunction]
fn bipartite_regular_three_flow(graph: &PyGraph) -> PyResult<PyFlow> {
    flow::bipartite_regular_three_flow(&graph.0).map(PyFlow).map_err(flow_err)
}

/// Returns `(flow, steps)` with one `STEP ...` string per trace record.
#[pyfunction]
#[pyo3(signature = (graph, group, fallback=false, budget=None))]
fn solve_three_flow(
    py: Python<'_>,
    graph: &PyGraph,
    group: &PyPermGroup,
    fallback: bool,
    budget: Option<u64>,
) -> PyResult<(PyFlow, Vec<String>)> {
    let opts = PipelineOptions {
        fallback,
        solver: config(budget),
    };
    let (g, grp) = (graph.0.clone(), group.0.clone());
    let result = py.detach(move || pipeline::solve_three_flow(&g, &grp, &opts));
    match result {
        Ok(t) => Ok((PyFlow(t.flow), t.steps.iter().map(|s| s.to_string()).collect())),
        Err(e @ PipelineError::OutsideScope(_)) => Err(OutsideScopeError::new_err(e.to_string())),
        Err(e @ PipelineError::Infeasible) => Err(InfeasibleError::new_err(e.to_string())),
        Err(e @ PipelineError::BudgetExceeded(_)) => Err(BudgetExceededError::new_err(e.to_string())),
        Err(e) => Err(InternalError::new_err(e.to_string())),
    }
}

/// Each hypothesis of the pipeline as a dict entry.
#[pyfunction]
fn check_hypotheses<'py>(py: Python<'py>, graph: &PyGraph, group: &PyPermGroup) -> PyResult<Bound<'py, PyDict>> {
    let r = pipeline::check_hypotheses(&graph.0, &group.0);
    let d = PyDict::new(py);
    d.set_item("connected", r.connected)?;
    d.set_item("valency", r.valency)?;
    d.set_item("preserves_graph", r.preserves_graph)?;
    d.set_item("vertex_transitive", r.vertex_transitive)?;
    d.set_item("arc_transitive", r.arc_transitive)?;
    d.set_item("group_order", r.group_order)?;
    d.set_item("solvable", r.solvable)?;
    d.set_item("derived_length", r.derived_length)?;
    d.set_item("all_hold", r.all_hold())?;
    Ok(d)
}

/// A named graph family with its symmetry group, e.g.
/// `family("complete_bipartite", [5, 5])`.
#[pyfunction]
#[pyo3(signature = (name, params=Vec::new()))]
fn family(name: &str, params: Vec<usize>) -> PyResult<(PyGraph, PyPermGroup)> {
    let need = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(value_err(format!("`{name}` takes {n} parameters, found {}", params.len())))
        }
    };
    let f = match name {
        "cycle" => {
            need(1)?;
            if params[0] < 3 {
                return Err(value_err("cycle needs at least 3 vertices"));
            }
            families::cycle(params[0])
        }
        "complete" => {
            need(1)?;
            if params[0] < 2 {
                return Err(value_err("complete graph needs at least 2 vertices"));
            }
            families::complete(params[0])
        }
        "complete_bipartite" => {
            need(2)?;
            if params.contains(&0) {
                return Err(value_err("both parts must be nonempty"));
            }
            families::complete_bipartite(params[0], params[1])
        }
        "circulant" => {
            if params.len() < 2 {
                return Err(value_err("circulant takes n followed by jumps"));
            }
            families::circulant(params[0], &params[1..]).map_err(value_err)?
        }
        "octahedron" => {
            need(0)?;
            families::octahedron()
        }
        "petersen" => {
            need(0)?;
            families::petersen()
        }
        "clebsch" => {
            need(0)?;
            families::clebsch()
        }
        "hypercube" => {
            need(1)?;
            if !(1..=20).contains(&params[0]) {
                return Err(value_err("hypercube dimension must be in 1..=20"));
            }
            families::hypercube(params[0])
        }
        other => return Err(value_err(format!("unknown family `{other}`"))),
    };
    Ok((PyGraph(f.graph), PyPermGroup(f.group)))
}

#[pymodule(name = "nzflow")]
fn nzflow_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyPermGroup>()?;
    m.add_class::<PyFlow>()?;
    m.add_function(wrap_pyfunction!(verify_flow, m)?)?;
    m.add_function(wrap_pyfunction!(is_nowhere_zero, m)?)?;
    m.add_function(wrap_pyfunction!(solve_nz_kflow, m)?)?;
    m.add_function(wrap_pyfunction!(eulerian_two_flow, m)?)?;
    m.add_function(wrap_pyfunction!(bipartite_regular_three_flow, m)?)?;
    m.add_function(wrap_pyfunction!(solve_three_flow, m)?)?;
    m.add_function(wrap_pyfunction!(check_hypotheses, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    let py = m.py();
    m.add("OutsideScopeError", py.get_type::<OutsideScopeError>())?;
    m.add("InfeasibleError", py.get_type::<InfeasibleError>())?;
    m.add("BudgetExceededError", py.get_type::<BudgetExceededError>())?;
    m.add("InternalError", py.get_type::<InternalError>())?;
    Ok(())
}
