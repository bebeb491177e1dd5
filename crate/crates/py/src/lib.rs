//! Python bindings for bisetkit.

use std::sync::Arc;

use pyo3::exceptions::{PyAssertionError, PyValueError};
use pyo3::prelude::*;

use bisetkit::analysis::{self, Analysis};
use bisetkit::burnside::BisetCategory;
use bisetkit::error::Error;
use bisetkit::functor::nv_check;
use bisetkit::goursat::BisetBasis;
use bisetkit::groups::{parse_group, recognize, PermGroup, DEFAULT_BOUND};
use bisetkit::report::{self, Context};
use bisetkit::sigma::{Sigma, SimpleLabel};
use bisetkit::verify::acceptance::{run_all, Corpus};

fn err(e: Error) -> PyErr {
    match e {
        Error::Assertion(m) => PyAssertionError::new_err(m),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn to_python<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn group(text: &str, bound: usize) -> PyResult<Arc<PermGroup>> {
    parse_group(text, bound)
        .map(Arc::new)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// A finite permutation group given in the group grammar (e.g. "A5", "C2xC2").
#[pyclass(name = "Group", frozen)]
struct PyGroup {
    text: String,
    inner: Arc<PermGroup>,
}

#[pymethods]
impl PyGroup {
    #[new]
    #[pyo3(signature = (text, bound = DEFAULT_BOUND))]
    fn new(text: &str, bound: usize) -> PyResult<Self> {
        Ok(PyGroup {
            text: text.to_string(),
            inner: group(text, bound)?,
        })
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn name(&self) -> Option<String> {
        recognize(&self.inner)
    }

    /// Orders of the representatives of the conjugacy classes of subgroups.
    fn subgroup_classes(&self) -> Vec<usize> {
        let lat = self.inner.lattice();
        lat.classes.iter().map(|c| lat.subgroups[c.rep].order()).collect()
    }

    fn section_count(&self) -> usize {
        self.inner.lattice().sections.len()
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.text, self.inner.order())
    }
}

/// Label keys of the transitive bisets spanning B(G, H).
#[pyfunction]
#[pyo3(signature = (g, h, bound = DEFAULT_BOUND))]
fn basis(g: &str, h: &str, bound: usize) -> PyResult<Vec<String>> {
    let b = BisetBasis::new(group(g, bound)?, group(h, bound)?).map_err(err)?;
    Ok(b.labels.iter().map(|l| l.key.clone()).collect())
}

/// Basis element i of B(G, H) composed with basis element j of B(H, K), as
/// (label key, numerator, denominator) triples.
#[pyfunction]
#[pyo3(signature = (g, h, k, i, j, bound = DEFAULT_BOUND))]
fn compose(g: &str, h: &str, k: &str, i: usize, j: usize, bound: usize) -> PyResult<Vec<(String, String, String)>> {
    let cat = BisetCategory::new(vec![
        (g.into(), group(g, bound)?),
        (h.into(), group(h, bound)?),
        (k.into(), group(k, bound)?),
    ]);
    let (left, right, out) = (
        cat.basis(0, 1).map_err(err)?,
        cat.basis(1, 2).map_err(err)?,
        cat.basis(0, 2).map_err(err)?,
    );
    if i >= left.dim() || j >= right.dim() {
        return Err(PyValueError::new_err("basis index out of range"));
    }
    let c = cat
        .compose(&cat.basis_element(0, 1, i), &cat.basis_element(1, 2, j))
        .map_err(err)?;
    Ok(c.coeffs
        .iter()
        .map(|(&t, x)| (out.labels[t].key.clone(), x.numer().to_string(), x.denom().to_string()))
        .collect())
}

/// The double Burnside algebra kB(G, G) with its biset functor data.
#[pyclass(name = "Burnside", frozen)]
struct PyBurnside {
    sigma: Arc<Sigma>,
    analysis: std::sync::OnceLock<Arc<Analysis>>,
}

impl PyBurnside {
    fn analysis(&self) -> PyResult<Arc<Analysis>> {
        if let Some(a) = self.analysis.get() {
            return Ok(a.clone());
        }
        let a = Arc::new(analysis::analyze(&self.sigma).map_err(err)?);
        Ok(self.analysis.get_or_init(|| a).clone())
    }

    fn label(&self, h: &str, v: &str) -> PyResult<SimpleLabel> {
        self.sigma
            .label_by_names(h, v)
            .ok_or_else(|| PyValueError::new_err(format!("no label ({h}, {v})")))
    }
}

#[pymethods]
impl PyBurnside {
    #[new]
    #[pyo3(signature = (text, bound = DEFAULT_BOUND))]
    fn new(text: &str, bound: usize) -> PyResult<Self> {
        let sigma = Sigma::new(text, group(text, bound)?).map_err(err)?;
        Ok(PyBurnside {
            sigma: Arc::new(sigma),
            analysis: std::sync::OnceLock::new(),
        })
    }

    fn dim(&self) -> PyResult<usize> {
        Ok(self.sigma.algebra().map_err(err)?.dim())
    }

    fn radical_dim(&self) -> PyResult<usize> {
        Ok(self.sigma.radical().map_err(err)?.dim())
    }

    /// Names of the subquotient classes, smallest first.
    fn subquotients(&self) -> Vec<String> {
        self.sigma.classes.iter().map(|c| c.name.clone()).collect()
    }

    /// All labels (H, V) in canonical order.
    fn labels(&self) -> Vec<(String, String)> {
        self.sigma.labels().into_iter().map(|l| self.sigma.label_name(l)).collect()
    }

    /// The algebra table as a JSON-compatible dictionary.
    fn table<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &self.sigma.algebra().map_err(err)?.to_json())
    }

    fn hombar_dim(&self, h: &str, k: &str) -> PyResult<usize> {
        let find = |n: &str| {
            self.sigma
                .class_by_name(n)
                .ok_or_else(|| PyValueError::new_err(format!("{n} is not a subquotient")))
        };
        Ok(self.sigma.hombar(find(h)?, find(k)?).map_err(err)?.dim())
    }

    /// (dim Δ(G), dim S(G)) for a label.
    fn evaluation_dims(&self, h: &str, v: &str) -> PyResult<(usize, usize)> {
        let e = self.sigma.evaluation(self.label(h, v)?).map_err(err)?;
        Ok((e.delta.module.dim, e.simple.module.dim))
    }

    fn vanishing_table<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &report::vanishing_json(&self.sigma).map_err(err)?)
    }

    /// Whether no simple functor vanishes, with the offending labels.
    fn nv(&self) -> PyResult<(bool, Vec<(String, String)>)> {
        let (ok, offenders) = nv_check(&self.sigma).map_err(err)?;
        Ok((ok, offenders.into_iter().map(|l| self.sigma.label_name(l)).collect()))
    }

    fn decomposition_matrix(&self) -> PyResult<Vec<Vec<u64>>> {
        let a = self.analysis()?;
        Ok(analysis::decomposition_matrix(&self.sigma, &a).map_err(err)?.entries)
    }

    fn cartan_matrix(&self) -> PyResult<Vec<Vec<u64>>> {
        analysis::cartan_matrix(&*self.analysis()?).map_err(err)
    }

    /// (dimension, Loewy layer dimensions) of the projective cover of S_{H,V}(G).
    fn pim(&self, h: &str, v: &str) -> PyResult<(usize, Vec<usize>)> {
        let a = self.analysis()?;
        let p = a
            .pim(self.label(h, v)?)
            .ok_or_else(|| PyValueError::new_err("the simple module is zero"))?;
        Ok((p.dim(), p.loewy.clone()))
    }

    fn ext1(&self, h1: &str, v1: &str, h2: &str, v2: &str) -> PyResult<usize> {
        let a = self.analysis()?;
        analysis::ext1(&a, self.label(h1, v1)?, self.label(h2, v2)?).map_err(err)
    }

    /// The quasi-heredity certificate as a dictionary.
    fn qh<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let a = self.analysis()?;
        to_python(py, &analysis::qh_certificate(&self.sigma, &a).map_err(err)?)
    }

    /// The full group report as a dictionary.
    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &report::group_report(&self.sigma).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Burnside({:?})", self.sigma.group_name)
    }
}

/// The verification of the A5 example as a dictionary.
#[pyfunction]
fn a5_report(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    let context = |g: &str| -> PyResult<Context> {
        let sigma = Sigma::new(g, group(g, DEFAULT_BOUND)?).map_err(err)?;
        Context::new(Arc::new(sigma)).map_err(err)
    };
    let r = report::a5_report(&context("A4")?, &context("A5")?).map_err(err)?;
    to_python(py, &r)
}

/// Runs the acceptance criteria; returns (number, passed, detail) triples.
#[pyfunction]
fn selftest() -> Vec<(usize, bool, String)> {
    let corpus = Corpus::default();
    run_all(&corpus, |_| {})
        .into_iter()
        .map(|r| (r.number, r.passed, r.detail))
        .collect()
}

#[pymodule]
fn bisetkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyBurnside>()?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(a5_report, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
