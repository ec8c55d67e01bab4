//! Python bindings. Matrices cross the boundary as nested lists of `complex`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use srbb::circuit::{self, Gate};
use srbb::optimizer::{self, OptimizerConfig};
use srbb::scaling::{lift_layer, LiftMode};
use srbb::{synthesis, CMat, SrbbError};

fn err(e: SrbbError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rows(m: &CMat) -> Vec<Vec<Complex64>> {
    (0..m.dim()).map(|r| m.row(r).to_vec()).collect()
}

fn from_rows(rows: Vec<Vec<Complex64>>) -> PyResult<CMat> {
    let d = rows.len();
    if d == 0 || rows.iter().any(|r| r.len() != d) {
        return Err(PyValueError::new_err("matrix must be square and non-empty"));
    }
    Ok(CMat::from_rows(d, rows.into_iter().flatten().collect()))
}

#[pyclass(name = "Circuit", module = "srbb_py", skip_from_py_object)]
#[derive(Clone)]
struct PyCircuit {
    inner: circuit::Circuit,
}

#[pymethods]
impl PyCircuit {
    #[staticmethod]
    fn from_qasm(text: &str) -> PyResult<Self> {
        Ok(PyCircuit { inner: circuit::import_qasm(text).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    /// `(kind, qubits, angle)` per gate; CNOT qubits are `(control, target)`.
    fn gates(&self) -> Vec<(&'static str, Vec<usize>, Option<f64>)> {
        self.inner
            .gates
            .iter()
            .map(|g| match *g {
                Gate::Cnot { control, target } => ("cx", vec![control, target], None),
                Gate::Rz { qubit, angle } => ("rz", vec![qubit], Some(angle)),
                Gate::Ry { qubit, angle } => ("ry", vec![qubit], Some(angle)),
            })
            .collect()
    }

    /// `{"cx": .., "rz": .., "ry": ..}`
    fn counts(&self) -> std::collections::BTreeMap<&'static str, usize> {
        let k = self.inner.counts();
        [("cx", k.cnot), ("rz", k.rz), ("ry", k.ry)].into_iter().collect()
    }

    fn qasm(&self) -> String {
        circuit::export_qasm(&self.inner)
    }

    fn unitary(&self) -> PyResult<Vec<Vec<Complex64>>> {
        Ok(to_rows(&srbb::simulator::circuit_to_unitary(&self.inner).map_err(err)?))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        let k = self.inner.counts();
        format!("Circuit(n={}, cx={}, rz={}, ry={})", self.inner.n, k.cnot, k.rz, k.ry)
    }
}

#[pyclass(name = "LayerParams", module = "srbb_py", skip_from_py_object)]
#[derive(Clone)]
struct PyLayerParams {
    inner: synthesis::LayerParams,
}

#[pymethods]
impl PyLayerParams {
    #[new]
    fn new(n: usize, theta: Vec<f64>) -> PyResult<Self> {
        Ok(PyLayerParams { inner: synthesis::LayerParams::from_flat(n, &theta).map_err(err)? })
    }

    #[staticmethod]
    fn zeros(n: usize) -> Self {
        PyLayerParams { inner: synthesis::LayerParams::zeros(n) }
    }

    #[staticmethod]
    fn count(n: usize) -> usize {
        synthesis::layer_param_count(n)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    fn flat(&self) -> Vec<f64> {
        self.inner.to_flat()
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        to_rows(&synthesis::assemble_layer(&self.inner))
    }

    fn circuit(&self) -> PyResult<PyCircuit> {
        Ok(PyCircuit { inner: circuit::layer_circuit(&self.inner).map_err(err)? })
    }

    /// Circuit on `n + 1` qubits; `resolve` supplies the new angles, otherwise they are zero.
    #[pyo3(signature = (resolve=None))]
    fn lift(&self, resolve: Option<PyRef<'_, PyLayerParams>>) -> PyResult<PyCircuit> {
        let blocks = circuit::layer_blocks(&self.inner).map_err(err)?;
        let mode = match &resolve {
            Some(r) => LiftMode::Resolve(&r.inner),
            None => LiftMode::ZeroPad,
        };
        let c = lift_layer(&blocks, mode).map_err(err)?.circuit();
        Ok(PyCircuit { inner: circuit::simplify(&c) })
    }
}

#[pyclass(name = "Approximation", module = "srbb_py", get_all)]
struct PyApproximation {
    error: f64,
    error_phase_invariant: f64,
    global_phase: f64,
    layer_errors: Vec<f64>,
    layers: Vec<PyLayerParams>,
    matrix: Vec<Vec<Complex64>>,
}

#[pymethods]
impl PyApproximation {
    fn circuit(&self) -> PyResult<PyCircuit> {
        let ls: Vec<_> = self.layers.iter().map(|l| l.inner.clone()).collect();
        Ok(PyCircuit { inner: circuit::layers_circuit(&ls).map_err(err)? })
    }
}

/// Dense SRBB element `j` on `n` qubits.
#[pyfunction]
fn srbb_element(n: usize, j: usize) -> PyResult<Vec<Vec<Complex64>>> {
    if n == 0 || j == 0 || j > 1 << (2 * n) {
        return Err(PyValueError::new_err(format!("no element {j} for n = {n}")));
    }
    Ok(to_rows(&srbb::basis::srbb_element(n, j).dense()))
}

#[pyfunction]
fn named_target(name: &str) -> PyResult<Vec<Vec<Complex64>>> {
    Ok(to_rows(&srbb::targets::named_target(name).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (d, seed=0))]
fn haar(d: usize, seed: u64) -> Vec<Vec<Complex64>> {
    use rand::SeedableRng;
    to_rows(&srbb::targets::haar_unitary(d, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed)))
}

/// Layered approximation on `n` qubits (sparse subset first, then the full layer).
#[pyfunction]
#[pyo3(signature = (target, layers=1, restarts=32, seed=0, eps=5e-12))]
fn approximate(
    py: Python<'_>,
    target: Vec<Vec<Complex64>>,
    layers: usize,
    restarts: usize,
    seed: u64,
    eps: f64,
) -> PyResult<PyApproximation> {
    let u = from_rows(target)?;
    let d = u.dim();
    if !d.is_power_of_two() || d < 2 {
        return Err(PyValueError::new_err(format!("dimension {d} is not a power of two")));
    }
    let n = d.trailing_zeros() as usize;
    let cfg = OptimizerConfig { restarts, seed, ..OptimizerConfig::default() };
    let a = py.detach(|| optimizer::approximate_auto(&u, n, &cfg, layers, eps)).map_err(err)?;
    Ok(PyApproximation {
        error: a.report.error_frobenius,
        error_phase_invariant: a.report.error_phase_invariant,
        global_phase: a.params.global_phase,
        layer_errors: a.report.layer_errors,
        layers: a.params.layers.into_iter().map(|inner| PyLayerParams { inner }).collect(),
        matrix: to_rows(&a.matrix),
    })
}

#[pyfunction]
fn frobenius_distance(a: Vec<Vec<Complex64>>, b: Vec<Vec<Complex64>>) -> PyResult<f64> {
    srbb::simulator::frobenius_distance(&from_rows(a)?, &from_rows(b)?).map_err(err)
}

#[pyfunction]
fn phase_invariant_distance(a: Vec<Vec<Complex64>>, b: Vec<Vec<Complex64>>) -> PyResult<f64> {
    srbb::simulator::phase_invariant_distance(&from_rows(a)?, &from_rows(b)?).map_err(err)
}

#[pymodule]
fn srbb_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCircuit>()?;
    m.add_class::<PyLayerParams>()?;
    m.add_class::<PyApproximation>()?;
    m.add_function(wrap_pyfunction!(srbb_element, m)?)?;
    m.add_function(wrap_pyfunction!(named_target, m)?)?;
    m.add_function(wrap_pyfunction!(haar, m)?)?;
    m.add_function(wrap_pyfunction!(approximate, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_distance, m)?)?;
    m.add_function(wrap_pyfunction!(phase_invariant_distance, m)?)?;
    Ok(())
}
