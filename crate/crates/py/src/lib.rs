//! Python bindings for the selection engine, the baselines and the simulator.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fedcomp::cli::format::{parse_instance, write_instance};
use fedcomp::fedsim::{run_experiment, ExperimentSpec, Method, Preset};
use fedcomp::partition::{CoverMode, Partition, PartitionKind};
use fedcomp::{Error, Verdict};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::TrainingDiverged { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Competing graph plus benefit weights. `benefit_edges` are
/// `(from, to, weight)`: `to` gains `weight` from `from`'s data.
#[pyclass(name = "Instance", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInstance {
    inner: fedcomp::Instance,
}

#[pymethods]
impl PyInstance {
    #[new]
    #[pyo3(signature = (n, competing_edges=Vec::new(), benefit_edges=Vec::new()))]
    fn new(n: usize, competing_edges: Vec<(usize, usize)>, benefit_edges: Vec<(usize, usize, f64)>) -> PyResult<Self> {
        let inner = fedcomp::Instance::from_edges(n, &competing_edges, &benefit_edges).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<Self> {
        let inner = parse_instance(text, "<string>").map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self { inner })
    }

    fn to_toml(&self) -> String {
        write_instance(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn competes(&self, a: usize, b: usize) -> bool {
        a < self.inner.n() && b < self.inner.n() && self.inner.competes(a, b)
    }

    fn benefit(&self, from: usize, to: usize) -> PyResult<f64> {
        let n = self.inner.n();
        if from >= n || to >= n {
            return Err(PyValueError::new_err(format!("node out of range for n = {n}")));
        }
        Ok(self.inner.benefit(from, to))
    }

    fn competing_edges(&self) -> Vec<(usize, usize)> {
        self.inner.competing_edges()
    }

    fn benefit_edges(&self) -> Vec<(usize, usize, f64)> {
        self.inner.benefit_edges()
    }

    /// Total benefit each participant offers the others.
    fn lop(&self) -> Vec<f64> {
        fedcomp::lop(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, competing_edges={}, benefit_edges={})",
            self.inner.n(),
            self.inner.competing_edges().len(),
            self.inner.benefit_edges().len()
        )
    }
}

/// Selected collaboration edges and their transitive closure.
#[pyclass(name = "UsageGraph", skip_from_py_object)]
#[derive(Clone)]
struct PyUsageGraph {
    inner: fedcomp::UsageGraph,
}

#[pymethods]
impl PyUsageGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = fedcomp::UsageGraph::from_edges(n, &edges, None).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn add_edge(&mut self, from: usize, to: usize) -> PyResult<()> {
        self.inner.add_edge(from, to).map_err(to_py)
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn reaches(&self, from: usize, to: usize) -> bool {
        from < self.inner.n() && to < self.inner.n() && self.inner.reaches(from, to)
    }

    fn reachable_from(&self, node: usize) -> PyResult<Vec<usize>> {
        self.inner.reachable_from(node).map_err(to_py)
    }

    fn reachable_to(&self, node: usize) -> PyResult<Vec<usize>> {
        self.inner.reachable_to(node).map_err(to_py)
    }

    fn collaborators(&self, node: usize) -> Vec<usize> {
        if node < self.inner.n() {
            self.inner.collaborators(node)
        } else {
            Vec::new()
        }
    }

    fn x_matrix(&self) -> Vec<Vec<bool>> {
        self.inner.x_matrix()
    }

    fn closure_matrix(&self) -> Vec<Vec<bool>> {
        self.inner.closure_matrix()
    }

    /// Shortest selected path between two nodes, or None.
    fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if from >= self.inner.n() || to >= self.inner.n() {
            return None;
        }
        self.inner.path(from, to).map(|p| p.nodes)
    }

    fn __repr__(&self) -> String {
        format!("UsageGraph(n={}, edges={:?})", self.inner.n(), self.inner.edges())
    }
}

/// Runs the greedy selection. Returns the usage graph and a trace dict with
/// `lop`, `order` and one entry per step listing every candidate decision.
#[pyfunction]
fn select_all<'py>(py: Python<'py>, instance: &PyInstance) -> PyResult<(PyUsageGraph, Bound<'py, PyDict>)> {
    let (usage, trace) = fedcomp::select_all(&instance.inner);
    let steps = trace
        .steps
        .iter()
        .map(|s| {
            let step = PyDict::new(py);
            step.set_item("participant", s.participant)?;
            step.set_item("objective", s.objective)?;
            let cands = s
                .candidates
                .iter()
                .map(|c| {
                    let d = PyDict::new(py);
                    d.set_item("node", c.node)?;
                    d.set_item("weight", c.weight)?;
                    d.set_item("accepted", c.accepted())?;
                    if let Verdict::Rejected { s_plus, s_minus } = &c.verdict {
                        d.set_item("s_plus", s_plus.clone())?;
                        d.set_item("s_minus", s_minus.clone())?;
                    }
                    Ok(d)
                })
                .collect::<PyResult<Vec<_>>>()?;
            step.set_item("candidates", cands)?;
            Ok(step)
        })
        .collect::<PyResult<Vec<_>>>()?;
    let out = PyDict::new(py);
    out.set_item("lop", trace.lop)?;
    out.set_item("order", trace.order)?;
    out.set_item("steps", steps)?;
    Ok((PyUsageGraph { inner: usage }, out))
}

#[pyfunction]
fn assumption_holds(instance: &PyInstance, usage: &PyUsageGraph) -> bool {
    usage.inner.n() == instance.inner.n() && fedcomp::assumption_holds(&instance.inner, &usage.inner)
}

/// Competing pairs `(a, b)` where `a` reaches `b`.
#[pyfunction]
fn violations(instance: &PyInstance, usage: &PyUsageGraph) -> PyResult<Vec<(usize, usize)>> {
    if usage.inner.n() != instance.inner.n() {
        return Err(PyValueError::new_err("usage graph and instance sizes differ"));
    }
    Ok(fedcomp::violations(&instance.inner, &usage.inner))
}

#[pyfunction]
fn feasible_by_paths(instance: &PyInstance, usage: &PyUsageGraph) -> PyResult<bool> {
    fedcomp::feasible_by_paths(&instance.inner, &usage.inner).map_err(to_py)
}

#[pyfunction]
fn violating_path(instance: &PyInstance, usage: &PyUsageGraph) -> PyResult<Option<Vec<usize>>> {
    let p = fedcomp::violating_path(&instance.inner, &usage.inner).map_err(to_py)?;
    Ok(p.map(|p| p.nodes))
}

/// Guard sets `(minus, plus)` for `i` taking `j` as a collaborator.
#[pyfunction]
fn competitor_sets(
    instance: &PyInstance,
    usage: &PyUsageGraph,
    i: usize,
    j: usize,
) -> PyResult<(Vec<usize>, Vec<usize>)> {
    let g = fedcomp::competitor_sets(&instance.inner, &usage.inner, i, j).map_err(to_py)?;
    Ok((g.minus, g.plus))
}

#[pyfunction]
fn optimal_step<'py>(
    py: Python<'py>,
    instance: &PyInstance,
    usage: &PyUsageGraph,
    i: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let v = fedcomp::optimal_step(&instance.inner, &usage.inner, i).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("participant", v.participant)?;
    d.set_item("feasible", v.feasible)?;
    d.set_item("optimal_value", v.optimal_value)?;
    d.set_item("optimal_set", v.optimal_set)?;
    d.set_item("greedy_value", v.greedy_value)?;
    d.set_item("greedy_set", v.greedy_set)?;
    d.set_item("gap_ratio", v.gap_ratio)?;
    Ok(d)
}

#[pyfunction]
fn min_clique_cover(instance: &PyInstance) -> Vec<Vec<usize>> {
    fedcomp::min_clique_cover(&instance.inner).groups
}

/// Coalitions within `groups`, or within the minimum clique cover when no
/// groups are given.
#[pyfunction]
#[pyo3(signature = (instance, groups=None))]
fn scc_coalitions(instance: &PyInstance, groups: Option<Vec<Vec<usize>>>) -> PyResult<Vec<Vec<usize>>> {
    let within = match groups {
        None => fedcomp::min_clique_cover(&instance.inner),
        Some(groups) => {
            let p = Partition {
                groups,
                kind: PartitionKind::CliqueCover,
                mode: CoverMode::Exact,
            };
            if !p.is_partition_of(instance.inner.n()) {
                return Err(PyValueError::new_err("groups must partition the participants"));
            }
            p
        }
    };
    Ok(fedcomp::scc_coalitions(&instance.inner, &within).groups)
}

/// Runs a preset experiment and returns `(csv_table, report_toml)`.
#[pyfunction]
#[pyo3(signature = (preset, seed=0, reps=None, methods=None))]
fn simulate(
    py: Python<'_>,
    preset: &str,
    seed: u64,
    reps: Option<usize>,
    methods: Option<Vec<String>>,
) -> PyResult<(String, String)> {
    let preset = Preset::parse(preset).ok_or_else(|| PyValueError::new_err(format!("unknown preset '{preset}'")))?;
    let mut spec = ExperimentSpec::preset(preset, seed);
    if let Some(r) = reps {
        if r == 0 {
            return Err(PyValueError::new_err("reps must be at least 1"));
        }
        spec.training.repetitions = r;
    }
    if let Some(ms) = methods {
        spec.methods = ms
            .iter()
            .map(|m| m.parse::<Method>().map_err(PyValueError::new_err))
            .collect::<PyResult<_>>()?;
    }
    let report = py.detach(|| run_experiment(&spec)).map_err(to_py)?;
    let text = toml::to_string(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((report.to_csv(), text))
}

#[pymodule]
fn pyfedcomp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_class::<PyUsageGraph>()?;
    m.add_function(wrap_pyfunction!(select_all, m)?)?;
    m.add_function(wrap_pyfunction!(assumption_holds, m)?)?;
    m.add_function(wrap_pyfunction!(violations, m)?)?;
    m.add_function(wrap_pyfunction!(feasible_by_paths, m)?)?;
    m.add_function(wrap_pyfunction!(violating_path, m)?)?;
    m.add_function(wrap_pyfunction!(competitor_sets, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_step, m)?)?;
    m.add_function(wrap_pyfunction!(min_clique_cover, m)?)?;
    m.add_function(wrap_pyfunction!(scc_coalitions, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
