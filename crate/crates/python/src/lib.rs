//! Python bindings, importable as `swapins`.

use num_rational::Ratio;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use swapins::oracle::{self, OracleError, DEFAULT_COMBINATION_BUDGET, DEFAULT_STATE_BUDGET};
use swapins::toolkit::{generate_instance, GeneratorSpec, Profile};
use swapins::{Cost, EditOp, Script, Weight};

create_exception!(swapins, InstanceTooLarge, PyRuntimeError, "An oracle ran past its search budget.");

/// `(op, position, symbol)`; `symbol` is `None` for swaps.
type PyOp = (String, usize, Option<String>);

fn chars(s: &str) -> Vec<char> {
    s.chars().collect()
}

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn oracle_error(e: OracleError) -> PyErr {
    InstanceTooLarge::new_err(e.to_string())
}

fn to_weight(value: &Bound<'_, PyAny>) -> PyResult<Weight> {
    let num: u64 = value.getattr("numerator")?.extract()?;
    let den: u64 = value.getattr("denominator")?.extract()?;
    if den == 0 {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(Ratio::new(num, den))
}

fn to_fraction<'py>(py: Python<'py>, w: Weight) -> PyResult<Bound<'py, PyAny>> {
    let fraction = PyModule::import(py, "fractions")?.getattr("Fraction")?;
    fraction.call1((*w.numer(), *w.denom()))
}

fn op_tuple(op: &EditOp<char>) -> PyOp {
    match *op {
        EditOp::Insert { position, symbol } => ("ins".into(), position, Some(symbol.to_string())),
        EditOp::Delete { position, symbol } => ("del".into(), position, Some(symbol.to_string())),
        EditOp::Swap { position } => ("swap".into(), position, None),
    }
}

fn op_from_tuple((name, position, symbol): PyOp) -> PyResult<EditOp<char>> {
    let symbol = || -> PyResult<char> {
        let s = symbol.as_deref().ok_or_else(|| value_error(format!("{name} needs a symbol")))?;
        let mut it = s.chars();
        match (it.next(), it.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(value_error(format!("symbol {s:?} is not a single character"))),
        }
    };
    match name.as_str() {
        "ins" => Ok(EditOp::Insert { position, symbol: symbol()? }),
        "del" => Ok(EditOp::Delete { position, symbol: symbol()? }),
        "swap" => Ok(EditOp::Swap { position }),
        other => Err(value_error(format!("unknown op {other:?}"))),
    }
}

/// A source/target pair indexed over their shared alphabet.
#[pyclass(name = "Instance", module = "swapins", frozen)]
struct PyInstance {
    inner: swapins::Instance,
    source: String,
    target: String,
}

#[pymethods]
impl PyInstance {
    #[new]
    fn new(source: &str, target: &str) -> PyResult<Self> {
        let inner = swapins::Instance::from_strs(source, target).map_err(value_error)?;
        Ok(PyInstance {
            inner,
            source: source.to_string(),
            target: target.to_string(),
        })
    }

    #[getter]
    fn source(&self) -> &str {
        &self.source
    }

    #[getter]
    fn target(&self) -> &str {
        &self.target
    }

    /// Minimum insertions plus adjacent swaps, or `None` when unreachable.
    fn distance(&self) -> Option<u64> {
        self.inner.distance().distance.finite()
    }

    /// Number of memoized states the engine stored for this instance.
    fn memo_entries(&self) -> usize {
        self.inner.distance().memo_entries
    }

    /// An optimal script as `(op, position, symbol)` tuples, or `None`.
    fn script(&self) -> Option<Vec<PyOp>> {
        let (_, script) = self.inner.distance_with_script().ok()?;
        Some(script.ops.iter().map(op_tuple).collect())
    }

    fn weighted_distance<'py>(
        &self,
        py: Python<'py>,
        c_ins: &Bound<'py, PyAny>,
        c_swap: &Bound<'py, PyAny>,
    ) -> PyResult<Option<Bound<'py, PyAny>>> {
        match self.inner.weighted_distance(to_weight(c_ins)?, to_weight(c_swap)?) {
            Cost::Finite(w) => to_fraction(py, w).map(Some),
            Cost::Unreachable => Ok(None),
        }
    }

    /// Deletions plus swaps from the target back to the source.
    fn swap_delete_distance(&self) -> Option<u64> {
        self.inner.swap_delete_distance().0.distance.finite()
    }

    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        stats_dict(py, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Instance({:?}, {:?})", self.source, self.target)
    }
}

fn stats_dict<'py>(py: Python<'py>, inst: &swapins::Instance) -> PyResult<Bound<'py, PyDict>> {
    let st = inst.stats();
    let dict = PyDict::new(py);
    dict.set_item("n", st.n)?;
    dict.set_item("m", st.m)?;
    dict.set_item("d", st.d)?;
    dict.set_item("symbols", inst.alphabet.symbols().iter().map(char::to_string).collect::<Vec<_>>())?;
    dict.set_item("source_counts", st.source_counts)?;
    dict.set_item("target_counts", st.target_counts)?;
    dict.set_item("imbalance", st.imbalance)?;
    dict.set_item("g", st.g)?;
    dict.set_item("s", st.s)?;
    dict.set_item("sigma_plus", st.sigma_plus)?;
    dict.set_item("predicted_state_bound", st.predicted_state_bound)?;
    dict.set_item("feasible", st.feasible)?;
    Ok(dict)
}

#[pyfunction]
fn distance(source: &str, target: &str) -> PyResult<Option<u64>> {
    Ok(PyInstance::new(source, target)?.distance())
}

#[pyfunction]
fn script(source: &str, target: &str) -> PyResult<Option<Vec<PyOp>>> {
    Ok(PyInstance::new(source, target)?.script())
}

#[pyfunction]
fn weighted_distance<'py>(
    py: Python<'py>,
    source: &str,
    target: &str,
    c_ins: &Bound<'py, PyAny>,
    c_swap: &Bound<'py, PyAny>,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    PyInstance::new(source, target)?.weighted_distance(py, c_ins, c_swap)
}

/// Deletions plus swaps turning `longer` into `shorter`.
#[pyfunction]
fn swap_delete_distance(longer: &str, shorter: &str) -> PyResult<Option<u64>> {
    Ok(PyInstance::new(shorter, longer)?.swap_delete_distance())
}

#[pyfunction]
fn stats<'py>(py: Python<'py>, source: &str, target: &str) -> PyResult<Bound<'py, PyDict>> {
    stats_dict(py, &PyInstance::new(source, target)?.inner)
}

#[pyfunction]
#[pyo3(signature = (source, target, budget = DEFAULT_STATE_BUDGET))]
fn ucs_distance(source: &str, target: &str, budget: usize) -> PyResult<Option<u64>> {
    let value = oracle::ucs_distance(&chars(source), &chars(target), budget).map_err(oracle_error)?;
    Ok(value.finite())
}

#[pyfunction]
#[pyo3(signature = (source, target, budget = DEFAULT_COMBINATION_BUDGET))]
fn matching_distance(source: &str, target: &str, budget: u64) -> PyResult<Option<u64>> {
    let value = oracle::matching_distance(&chars(source), &chars(target), budget).map_err(oracle_error)?;
    Ok(value.finite())
}

/// Seeded `(source, target)` pair with the given imbalance profile.
#[pyfunction]
#[pyo3(signature = (d, n, m, profile = "balanced-g", seed = 0))]
fn generate(d: usize, n: usize, m: usize, profile: &str, seed: u64) -> PyResult<(String, String)> {
    let profile: Profile = profile.parse().map_err(value_error)?;
    let (s, l) = generate_instance(&GeneratorSpec::new(d, n, m, profile, seed)).map_err(value_error)?;
    Ok((s.into_iter().collect(), l.into_iter().collect()))
}

/// Replays `ops` on `source` and reports whether it yields `target`.
#[pyfunction]
fn verify<'py>(py: Python<'py>, source: &str, target: &str, ops: Vec<PyOp>) -> PyResult<Bound<'py, PyDict>> {
    let ops = ops.into_iter().map(op_from_tuple).collect::<PyResult<Vec<_>>>()?;
    let verdict = swapins::verify_script(&chars(source), &chars(target), &Script::new(ops));
    let dict = PyDict::new(py);
    dict.set_item("valid", verdict.valid)?;
    dict.set_item("cost", verdict.cost)?;
    dict.set_item("insert_count", verdict.insert_count)?;
    dict.set_item("delete_count", verdict.delete_count)?;
    dict.set_item("swap_count", verdict.swap_count)?;
    dict.set_item("failure", verdict.failure)?;
    Ok(dict)
}

#[pymodule]
#[pyo3(name = "swapins")]
fn swapins_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add("InstanceTooLarge", m.py().get_type::<InstanceTooLarge>())?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(script, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_distance, m)?)?;
    m.add_function(wrap_pyfunction!(swap_delete_distance, m)?)?;
    m.add_function(wrap_pyfunction!(stats, m)?)?;
    m.add_function(wrap_pyfunction!(ucs_distance, m)?)?;
    m.add_function(wrap_pyfunction!(matching_distance, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
