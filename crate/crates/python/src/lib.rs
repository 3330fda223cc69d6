//! Python bindings: rings, radicals, predicates, the suite and hunting.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ringlab::construct::enumerate_unital_rings;
use ringlab::predicates::check_properties;
use ringlab::suite::resolve_corpus_spec;
use ringlab::{
    build, build_corpus, hunt_counterexample, parse_expr, run_theorem_suite, Error, FiniteRing, HuntQuery,
    Limits, Predicate, RingAnalysis,
};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::UnknownPredicate(_) | Error::UnknownCorpus(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite unital ring given by tables.
#[pyclass(name = "Ring", module = "ringlab_py", frozen)]
struct PyRing {
    ring: FiniteRing,
    limits: Limits,
    analysis: OnceLock<RingAnalysis>,
}

impl PyRing {
    fn wrap(ring: FiniteRing, limits: Limits) -> Self {
        PyRing {
            ring,
            limits,
            analysis: OnceLock::new(),
        }
    }

    fn analysis(&self) -> PyResult<&RingAnalysis> {
        if let Some(a) = self.analysis.get() {
            return Ok(a);
        }
        let a = RingAnalysis::new(self.ring.clone(), &self.limits).map_err(to_py)?;
        Ok(self.analysis.get_or_init(|| a))
    }

    fn check_index(&self, a: usize) -> PyResult<()> {
        if a < self.ring.order() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("element {a} out of range for order {}", self.ring.order())))
        }
    }
}

#[pymethods]
impl PyRing {
    /// Builds a ring from a construction expression such as `M(2,Zn(3))`.
    #[new]
    #[pyo3(signature = (expr, size_cap = None))]
    fn new(expr: &str, size_cap: Option<usize>) -> PyResult<Self> {
        let mut limits = Limits::default();
        if let Some(c) = size_cap {
            limits.size_cap = c;
        }
        let ring = build(&parse_expr(expr).map_err(to_py)?, &limits).map_err(to_py)?;
        Ok(PyRing::wrap(ring, limits))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let limits = Limits::default();
        Ok(PyRing::wrap(FiniteRing::from_json(text, &limits).map_err(to_py)?, limits))
    }

    fn to_json(&self) -> String {
        self.ring.to_json()
    }

    #[getter]
    fn name(&self) -> &str {
        self.ring.name()
    }

    #[getter]
    fn order(&self) -> usize {
        self.ring.order()
    }

    #[getter]
    fn zero(&self) -> usize {
        self.ring.zero()
    }

    #[getter]
    fn one(&self) -> usize {
        self.ring.one()
    }

    fn add(&self, a: usize, b: usize) -> PyResult<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.ring.add(a, b))
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.ring.mul(a, b))
    }

    fn is_commutative(&self) -> bool {
        self.ring.is_commutative()
    }

    /// Sorted elements of `jacobson`, `socle`, `delta` or `delta-sharp`.
    #[pyo3(signature = (which = "delta"))]
    fn radical(&self, which: &str) -> PyResult<Vec<usize>> {
        let a = self.analysis()?;
        Ok(match which {
            "jacobson" => a.jacobson().elems(),
            "socle" => a.socle().elems(),
            "delta" => a.delta().elems(),
            "delta-sharp" | "delta_sharp" => a.delta_sharp().elems(),
            other => return Err(PyValueError::new_err(format!("unknown radical `{other}`"))),
        })
    }

    /// Every computed characterization of delta(R), keyed by name.
    fn characterizations(&self) -> PyResult<BTreeMap<String, Vec<usize>>> {
        let a = self.analysis()?;
        let mut out = BTreeMap::new();
        out.insert("essential-maximal-intersection".into(), a.r1().to_vec());
        out.insert("socle-quotient-pullback".into(), a.socle_pullback().map_err(to_py)?.to_vec());
        out.insert("direct-summand".into(), a.r3_set().to_vec());
        out.insert("semisimple-complement".into(), a.r5_set().to_vec());
        if a.ring().order() <= self.limits.lattice_check_cap {
            out.insert("largest-delta-small".into(), a.r2().map_err(to_py)?.to_vec());
            out.insert("faithful-singular-simple".into(), a.r4().map_err(to_py)?.to_vec());
        }
        Ok(out)
    }

    fn idempotents(&self) -> PyResult<Vec<usize>> {
        Ok(self.analysis()?.idempotents().to_vec())
    }

    fn units(&self) -> PyResult<Vec<usize>> {
        Ok(self.analysis()?.units().to_vec())
    }

    /// Predicate name to `{"verdict", "witness"?, "method"}`.
    fn check<'py>(&self, py: Python<'py>, props: Vec<String>) -> PyResult<Bound<'py, PyAny>> {
        let preds: Vec<Predicate> = props
            .iter()
            .map(|p| p.parse().map_err(to_py))
            .collect::<PyResult<_>>()?;
        let rep = check_properties(self.analysis()?, &preds).map_err(to_py)?;
        let text = serde_json::to_string(&rep.results).expect("verdicts serialize");
        json_to_py(py, &text)
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?}, order={})", self.ring.name(), self.ring.order())
    }
}

#[pyfunction]
fn predicates() -> Vec<&'static str> {
    Predicate::ALL.iter().map(|p| p.name()).collect()
}

#[pyfunction]
#[pyo3(signature = (order, up_to_iso = true))]
fn enumerate(order: usize, up_to_iso: bool) -> PyResult<Vec<PyRing>> {
    let limits = Limits::default();
    let rings = enumerate_unital_rings(order, up_to_iso, &limits).map_err(to_py)?;
    Ok(rings.into_iter().map(|r| PyRing::wrap(r, limits)).collect())
}

/// Runs the theorem suite and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (corpus = None))]
fn run_suite<'py>(py: Python<'py>, corpus: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let limits = Limits::default();
    let spec = resolve_corpus_spec(corpus);
    let text = py
        .detach(|| {
            let c = build_corpus(&spec, &limits)?;
            run_theorem_suite(&c, &limits).map(|r| r.to_json())
        })
        .map_err(to_py)?;
    json_to_py(py, &text)
}

/// Searches the corpus for a counterexample to `antecedent => consequent`.
#[pyfunction]
#[pyo3(signature = (implies, corpus = None, all = false))]
fn hunt<'py>(py: Python<'py>, implies: &str, corpus: Option<&str>, all: bool) -> PyResult<Bound<'py, PyAny>> {
    let limits = Limits::default();
    let mut q: HuntQuery = implies.parse().map_err(to_py)?;
    q.stop_at_first = !all;
    let spec = resolve_corpus_spec(corpus);
    let text = py
        .detach(|| {
            let c = build_corpus(&spec, &limits)?;
            hunt_counterexample(&q, &c, &limits).map(|r| r.to_json())
        })
        .map_err(to_py)?;
    json_to_py(py, &text)
}

#[pymodule]
fn ringlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", ringlab::VERSION)?;
    m.add_class::<PyRing>()?;
    m.add_function(wrap_pyfunction!(predicates, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(hunt, m)?)?;
    Ok(())
}
