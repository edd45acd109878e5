use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use engine::forest::{pretty, to_dot};
use engine::{gfp_calc, oracle, search, Error};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::Context(_) => PyValueError::new_err(e.to_string()),
        Error::Synthesis(gfp_calc::SynthesisError::NotHorn) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn err(e: impl Into<Error>) -> PyErr {
    to_py(e.into())
}

#[pyclass(name = "Sequent", frozen, from_py_object)]
#[derive(Clone)]
struct PySequent(engine::Sequent);

#[pymethods]
impl PySequent {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        engine::parse_sequent(text).map(PySequent).map_err(err)
    }

    #[getter]
    fn goal(&self) -> String {
        self.0.goal.to_string()
    }

    #[getter]
    fn context(&self) -> Vec<(String, String)> {
        self.0
            .context
            .iter()
            .map(|(v, f)| (v.to_string(), f.to_string()))
            .collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Sequent({:?})", self.0.to_string())
    }
}

#[pyclass(name = "Term", frozen, from_py_object)]
#[derive(Clone)]
struct PyTerm(engine::LambdaBarTerm);

#[pymethods]
impl PyTerm {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        engine::parse_term(text).map(PyTerm).map_err(err)
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    fn alpha_eq(&self, other: &PyTerm) -> bool {
        self.0.alpha_eq(&other.0)
    }

    fn __eq__(&self, other: &PyTerm) -> bool {
        self.0.alpha_eq(&other.0)
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.alpha_key().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Term({:?})", self.0.to_string())
    }
}

#[pyclass(name = "FinTerm", frozen, from_py_object)]
#[derive(Clone)]
struct PyFinTerm(engine::FinTerm);

#[pymethods]
impl PyFinTerm {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        engine::parse_finterm(text).map(PyFinTerm).map_err(err)
    }

    fn node_count(&self) -> usize {
        self.0.node_count()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    fn expand(&self, depth: usize) -> PyResult<Forest> {
        engine::interp_unfold(&self.0, depth, &engine::Environment::new())
            .map(Forest)
            .map_err(err)
    }

    fn has_any_member(&self) -> bool {
        search::has_any_member(&self.0)
    }

    fn prune(&self) -> PyFinTerm {
        PyFinTerm(search::prune(&self.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FinTerm({:?})", self.0.to_string())
    }
}

#[pyclass(frozen)]
struct Forest(engine::ForestApprox);

#[pymethods]
impl Forest {
    fn pretty(&self) -> String {
        pretty(&self.0)
    }

    fn to_dot(&self) -> String {
        to_dot(&self.0)
    }

    fn node_count(&self) -> usize {
        self.0.node_count()
    }

    fn __eq__(&self, other: &Forest) -> bool {
        engine::approx_equal(&self.0, &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

fn seq(text: &str) -> PyResult<engine::Sequent> {
    engine::parse_sequent(text).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (sequent, horn = false))]
fn synthesize(sequent: &str, horn: bool) -> PyResult<PyFinTerm> {
    let s = seq(sequent)?;
    let t = if horn {
        engine::synthesize_horn(&s)
    } else {
        engine::synthesize(&s)
    };
    t.map(PyFinTerm).map_err(err)
}

#[pyfunction]
fn provable(sequent: &str) -> PyResult<bool> {
    search::provable(&seq(sequent)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (sequent, max_size, limit = None))]
fn enumerate(py: Python<'_>, sequent: &str, max_size: usize, limit: Option<usize>) -> PyResult<Vec<PyTerm>> {
    let s = seq(sequent)?;
    let ts = py
        .detach(|| search::enumerate(&s, max_size, limit))
        .map_err(err)?;
    Ok(ts.into_iter().map(PyTerm).collect())
}

#[pyfunction]
fn count_proofs(py: Python<'_>, sequent: &str, max_size: usize) -> PyResult<usize> {
    let s = seq(sequent)?;
    py.detach(|| search::count_proofs(&s, max_size)).map_err(err)
}

#[pyfunction]
fn member(sequent: &str, term: &PyTerm) -> PyResult<bool> {
    search::member_of(&seq(sequent)?, &term.0).map_err(err)
}

#[pyfunction]
fn typecheck(sequent: &str, term: &PyTerm) -> PyResult<Option<String>> {
    let s = seq(sequent)?;
    Ok(engine::typecheck(&s.context, &term.0).map(|f| f.to_string()))
}

#[pyfunction]
fn expand_solution(sequent: &str, depth: usize) -> PyResult<Forest> {
    Ok(Forest(engine::expand_solution(&seq(sequent)?, depth)))
}

#[pyfunction]
fn bfs_prove(py: Python<'_>, sequent: &str, max_size: usize) -> PyResult<Vec<PyTerm>> {
    let s = seq(sequent)?;
    let ts = py.detach(|| oracle::bfs_prove(&s, max_size)).map_err(err)?;
    Ok(ts.into_iter().map(PyTerm).collect())
}

#[pymodule]
fn coforest(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySequent>()?;
    m.add_class::<PyTerm>()?;
    m.add_class::<PyFinTerm>()?;
    m.add_class::<Forest>()?;
    m.add_function(wrap_pyfunction!(synthesize, m)?)?;
    m.add_function(wrap_pyfunction!(provable, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(count_proofs, m)?)?;
    m.add_function(wrap_pyfunction!(member, m)?)?;
    m.add_function(wrap_pyfunction!(typecheck, m)?)?;
    m.add_function(wrap_pyfunction!(expand_solution, m)?)?;
    m.add_function(wrap_pyfunction!(bfs_prove, m)?)?;
    Ok(())
}
