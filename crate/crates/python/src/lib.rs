//! Python bindings. Reports come back as plain dicts and lists (their JSON form);
//! structured inputs such as groups and certificates are accepted as dicts or
//! JSON strings in the same shape as the command-line input files.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;
use serde::de::DeserializeOwned;
use serde::Serialize;

use gradlab::coset::{farber_prefix_check, ChainSpec, SubgroupChain};
use gradlab::group::{RaagGraph, Word};
use gradlab::homology::{estimate_trend, gradient_series, smith_normal_form, IntegerMatrix, InvariantKind};
use gradlab::io::GroupSpec;
use gradlab::qnormal::{build_coset_graph, verify_chain, ChainCertificateFile, GraphOptions};
use gradlab::raag::{analyze_raag, dfs_walk, is_inner_amenable_raag};
use gradlab::rebuilding;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

/// Dict, list or JSON string into a Rust value, via JSON.
fn from_py<T: DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text = if let Ok(s) = obj.cast::<PyString>() {
        s.to_string()
    } else {
        let json = obj.py().import("json")?;
        json.call_method1("dumps", (obj,))?.extract::<String>()?
    };
    serde_json::from_str(&text).map_err(value_err)
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(runtime_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn matrix(rows: Vec<Vec<i64>>) -> PyResult<IntegerMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    IntegerMatrix::from_rows(cols, &rows).ok_or_else(|| value_err("rows have different lengths"))
}

fn word(letters: Vec<i32>) -> PyResult<Word> {
    Word::new(letters).map_err(value_err)
}

fn chain(group: &GroupSpec, spec: &str, budget: usize) -> PyResult<SubgroupChain> {
    let spec: ChainSpec = spec.parse().map_err(value_err)?;
    spec.build(&group.presentation(), budget).map_err(runtime_err)
}

/// Invariant factors of an integer matrix given as a list of rows.
#[pyfunction]
fn smith_normal_form_factors(rows: Vec<Vec<i64>>) -> PyResult<Vec<String>> {
    Ok(smith_normal_form(&matrix(rows)?).invariant_factors.iter().map(ToString::to_string).collect())
}

/// Largest singular value.
#[pyfunction]
fn operator_norm(rows: Vec<Vec<i64>>) -> PyResult<f64> {
    Ok(rebuilding::operator_norm(&matrix(rows)?))
}

/// Gradient series and trend of one invariant along a chain such as
/// `"abelian:n=1..5"` or `"cyclic:images=1,0;n=2..8"`.
#[pyfunction]
#[pyo3(signature = (group, chain_spec, invariant = "betti_q", primes = vec![2], budget = 100_000))]
fn homology_gradient<'py>(
    py: Python<'py>,
    group: &Bound<'py, PyAny>,
    chain_spec: &str,
    invariant: &str,
    primes: Vec<u64>,
    budget: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let group: GroupSpec = from_py(group)?;
    let kind: InvariantKind = invariant.parse().map_err(value_err)?;
    let c = chain(&group, chain_spec, budget)?;
    let series = gradient_series(&c, kind, &primes, None).map_err(runtime_err)?;
    let trend = estimate_trend(&series).map_err(runtime_err)?;
    to_py(py, &serde_json::json!({ "series": series, "trend": trend }))
}

/// Fixed-point ratios of each `gamma` (a list of signed letters) along a chain.
#[pyfunction]
#[pyo3(signature = (group, chain_spec, gammas, eps = (0, 1), budget = 100_000))]
fn farber_check<'py>(
    py: Python<'py>,
    group: &Bound<'py, PyAny>,
    chain_spec: &str,
    gammas: Vec<Vec<i32>>,
    eps: (u64, u64),
    budget: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let group: GroupSpec = from_py(group)?;
    let c = chain(&group, chain_spec, budget)?;
    let gammas = gammas.into_iter().map(word).collect::<PyResult<Vec<_>>>()?;
    if eps.1 == 0 {
        return Err(value_err("eps denominator is zero"));
    }
    let r = farber_prefix_check(&c, &gammas, num_rational::Ratio::new(eps.0, eps.1)).map_err(value_err)?;
    to_py(py, &r)
}

/// Verify a chain certificate (`{"group": ..., "base": ..., "steps": [...]}`).
#[pyfunction]
fn verify_certificate<'py>(py: Python<'py>, certificate: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let file: ChainCertificateFile = from_py(certificate)?;
    let ctx = file.group.context().map_err(value_err)?;
    let report = verify_chain(&file.chain, &ctx).map_err(value_err)?;
    to_py(py, &report)
}

/// Coset graph `H/L` with edges `{gL, gsL}` for `s` in `labels`.
#[pyfunction]
#[pyo3(signature = (group, subgroup, labels, radius = 3, ambient = None, budget = 10_000))]
fn coset_graph<'py>(
    py: Python<'py>,
    group: &Bound<'py, PyAny>,
    subgroup: Vec<Vec<i32>>,
    labels: Vec<Vec<i32>>,
    radius: usize,
    ambient: Option<Vec<Vec<i32>>>,
    budget: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let group: GroupSpec = from_py(group)?;
    let ctx = group.context().map_err(value_err)?;
    let words = |v: Vec<Vec<i32>>| v.into_iter().map(word).collect::<PyResult<Vec<_>>>();
    let opts = GraphOptions { ambient: ambient.map(words).transpose()?, budget, radius };
    let g = build_coset_graph(&ctx, &words(subgroup)?, &words(labels)?, &opts).map_err(runtime_err)?;
    let summary = serde_json::json!({
        "graph": g,
        "orbit_count": g.orbit_count(),
        "connected": g.is_connected(),
    });
    to_py(py, &summary)
}

/// Defining graph of a right-angled Artin group on vertices `1..=n`.
#[pyclass(name = "RaagGraph", frozen)]
struct PyRaagGraph {
    inner: RaagGraph,
}

#[pymethods]
impl PyRaagGraph {
    #[new]
    fn new(n: u32, edges: Vec<(u32, u32)>) -> PyResult<Self> {
        Ok(PyRaagGraph { inner: RaagGraph::new(n, edges).map_err(value_err)? })
    }

    #[getter]
    fn vertex_count(&self) -> u32 {
        self.inner.vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.edges().collect()
    }

    fn is_inner_amenable(&self) -> bool {
        is_inner_amenable_raag(&self.inner).inner_amenable
    }

    fn dfs_walk(&self) -> Option<Vec<u32>> {
        dfs_walk(&self.inner)
    }

    /// Inner-amenability, chain-commuting sequence and the status of the emitted chain.
    fn analyze<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &analyze_raag(&self.inner).map_err(runtime_err)?)
    }

    /// The emitted chain certificate, in the form `verify_certificate` accepts.
    fn chain_certificate<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        let analysis = analyze_raag(&self.inner).map_err(runtime_err)?;
        analysis
            .certificate
            .map(|chain| to_py(py, &ChainCertificateFile { group: GroupSpec::Raag(self.inner.clone()), chain }))
            .transpose()
    }

    fn __repr__(&self) -> String {
        format!("RaagGraph({}, {:?})", self.inner.vertex_count(), self.inner.edges().collect::<Vec<_>>())
    }
}

/// Chain data of a rebuilding `(Y, Y', g, h, ρ)`.
#[pyclass(name = "RebuildingData", frozen)]
struct PyRebuildingData {
    inner: rebuilding::RebuildingData,
}

#[pymethods]
impl PyRebuildingData {
    /// From the dict or JSON string used by the command-line rebuilding files.
    #[new]
    fn new(data: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyRebuildingData { inner: from_py(data)? })
    }

    #[staticmethod]
    fn subdivided_circle(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(value_err("need at least one vertex"));
        }
        Ok(PyRebuildingData { inner: rebuilding::RebuildingData::subdivided_circle(n) })
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &rebuilding::validate_rebuilding(&self.inner).map_err(value_err)?)
    }

    fn quality<'py>(&self, py: Python<'py>, t: f64, kappa: f64) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &rebuilding::quality_check(&self.inner, t, kappa).map_err(value_err)?)
    }

    fn minimal_kappa(&self, t: f64) -> PyResult<f64> {
        rebuilding::minimal_kappa(&self.inner, t).map_err(value_err)
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner)
    }
}

#[pymodule]
#[pyo3(name = "gradlab")]
fn gradlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(smith_normal_form_factors, m)?)?;
    m.add_function(wrap_pyfunction!(operator_norm, m)?)?;
    m.add_function(wrap_pyfunction!(homology_gradient, m)?)?;
    m.add_function(wrap_pyfunction!(farber_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(coset_graph, m)?)?;
    m.add_class::<PyRaagGraph>()?;
    m.add_class::<PyRebuildingData>()?;
    Ok(())
}
