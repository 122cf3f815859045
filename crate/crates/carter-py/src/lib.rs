//! Python bindings for `carter`.

use carter::cli::{diagram_dot, DiagramDocument};
use carter::transition::{self, CaseId};
use carter::weyl::{self, ConjugacyMode, Matching};
use carter::{build_root_system, registry, CarterDiagram, CarterError, RootSystemType};
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

fn err(e: CarterError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen, module = "carter_py")]
struct Diagram {
    inner: CarterDiagram,
}

#[pymethods]
impl Diagram {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = DiagramDocument::parse(text).map_err(err)?;
        Ok(Diagram { inner: doc.to_diagram().map_err(err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn nodes(&self) -> Vec<String> {
        self.inner.nodes.clone()
    }

    /// (source, target, "solid" | "dotted")
    #[getter]
    fn edges(&self) -> Vec<(String, String, String)> {
        DiagramDocument::from_diagram(&self.inner)
            .edges
            .into_iter()
            .map(|e| (e.source, e.target, format!("{:?}", e.sign).to_lowercase()))
            .collect()
    }

    fn gram(&self) -> Vec<Vec<i64>> {
        self.inner.gram().to_rows()
    }

    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        let s = carter::spectrum(&self.inner.gram(), carter::cartan::DEFAULT_TOL).map_err(err)?;
        Ok(s.eigenvalues)
    }

    fn is_valid(&self) -> bool {
        self.inner.validate().ok()
    }

    /// Similarity: negate the root at node `i`.
    fn flip(&self, i: usize) -> PyResult<Self> {
        if i >= self.inner.nodes.len() {
            return Err(PyValueError::new_err(format!("node index {i} out of range")));
        }
        Ok(Diagram { inner: self.inner.flip(i) })
    }

    fn to_json(&self) -> String {
        DiagramDocument::from_diagram(&self.inner).to_json()
    }

    fn to_dot(&self) -> String {
        diagram_dot(&self.inner, &[])
    }

    fn __len__(&self) -> usize {
        self.inner.nodes.len()
    }

    fn __repr__(&self) -> String {
        format!("Diagram({:?}, {} nodes)", self.inner.name, self.inner.nodes.len())
    }
}

#[pyfunction]
fn diagram(name: &str) -> PyResult<Diagram> {
    registry()
        .get(name)
        .map(|d| Diagram { inner: d.clone() })
        .ok_or_else(|| PyKeyError::new_err(name.to_string()))
}

#[pyfunction]
fn names() -> Vec<String> {
    registry().names().into_iter().map(String::from).collect()
}

#[pyfunction]
fn root_count(ambient: &str) -> PyResult<usize> {
    let t = RootSystemType::parse(ambient).map_err(err)?;
    Ok(build_root_system(t).roots().len())
}

fn case_id(n: u8, l: Option<usize>, k: Option<usize>) -> CaseId {
    match (l, k) {
        (Some(l), Some(k)) => CaseId::d(l, k),
        _ => CaseId::new(n),
    }
}

/// (from_labels, to_labels, rows) of a catalog transition matrix.
#[pyfunction]
#[pyo3(signature = (n, l=None, k=None))]
fn transition_matrix(n: u8, l: Option<usize>, k: Option<usize>) -> PyResult<(Vec<String>, Vec<String>, Vec<Vec<i64>>)> {
    let c = transition::catalog(case_id(n, l, k)).map_err(err)?;
    Ok((c.from_labels().to_vec(), c.to_labels().to_vec(), c.matrix.matrix.to_rows()))
}

#[pyfunction]
#[pyo3(signature = (n, l=None, k=None))]
fn verify_case(n: u8, l: Option<usize>, k: Option<usize>) -> PyResult<bool> {
    let c = transition::catalog(case_id(n, l, k)).map_err(err)?;
    Ok(transition::verify_case(&c).map_err(err)?.ok())
}

/// (congruent, residual flip labels) for the E8(a8) → E8 chain.
#[pyfunction]
fn verify_chain() -> PyResult<(bool, Option<Vec<String>>)> {
    let r = transition::verify_chain().map_err(err)?;
    Ok((r.congruent, r.residual_flips))
}

/// (conjugate pairs, total pairs) over distinct realizations.
#[pyfunction]
#[pyo3(signature = (name, ambient, limit=20, ordered=false))]
fn conjugacy(name: &str, ambient: &str, limit: usize, ordered: bool) -> PyResult<(usize, usize)> {
    let d = registry().get(name).ok_or_else(|| PyKeyError::new_err(name.to_string()))?;
    let amb = build_root_system(RootSystemType::parse(ambient).map_err(err)?);
    let sets = weyl::distinct_realizations(d, &amb, limit);
    let matching = if ordered { Matching::Ordered } else { Matching::Unordered };
    let r = weyl::pairwise_conjugacy(&sets, &amb, ConjugacyMode::Solve, matching).map_err(err)?;
    Ok((r.conjugate, r.pairs))
}

#[pyfunction]
fn extra_node_count(ambient: &str) -> PyResult<usize> {
    carter::enhance::extra_node_count(RootSystemType::parse(ambient).map_err(err)?).map_err(err)
}

/// Runs the command-line interface; returns its exit code.
#[pyfunction]
fn cli(args: Vec<String>) -> i32 {
    carter::cli::run(std::iter::once("carter".to_string()).chain(args))
}

#[pymodule]
fn carter_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Diagram>()?;
    m.add_function(wrap_pyfunction!(diagram, m)?)?;
    m.add_function(wrap_pyfunction!(names, m)?)?;
    m.add_function(wrap_pyfunction!(root_count, m)?)?;
    m.add_function(wrap_pyfunction!(transition_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(verify_case, m)?)?;
    m.add_function(wrap_pyfunction!(verify_chain, m)?)?;
    m.add_function(wrap_pyfunction!(conjugacy, m)?)?;
    m.add_function(wrap_pyfunction!(extra_node_count, m)?)?;
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    Ok(())
}
