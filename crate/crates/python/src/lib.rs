//! Python bindings: Pimenov elements, the R-matrix, relation export, orbits
//! and the verification suites.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ckqw::classical::{orbit_sample, OrbitPlane};
use ckqw::config::RunConfig;
use ckqw::dual::{choose_convention, pairing_report};
use ckqw::frt::{rmatrix3, FrtData};
use ckqw::pimenov::{parse_element, pim_apply, Kernel};
use ckqw::suite::{run_suite, Suite};
use ckqw::{ParameterSignature, PimenovElement};

fn err(e: ckqw::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_sig(s: &str) -> PyResult<ParameterSignature> {
    s.parse().map_err(err)
}

fn json<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// An element of the Pimenov algebra with `tags` nilpotent generators.
#[pyclass(name = "Element", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Element(PimenovElement);

#[pymethods]
impl Element {
    #[new]
    #[pyo3(signature = (expr, tags = 2))]
    fn new(expr: &str, tags: usize) -> PyResult<Self> {
        parse_element(expr, tags).map(Element).map_err(err)
    }

    /// The generator `i_k`, counting from 1.
    #[staticmethod]
    fn tag(tags: usize, k: usize) -> PyResult<Self> {
        if k == 0 || k > tags {
            return Err(PyValueError::new_err(format!("tag i{k} outside 1..={tags}")));
        }
        Ok(Element(PimenovElement::tag(tags, k)))
    }

    #[getter]
    fn tags(&self) -> usize {
        self.0.n()
    }

    /// Coefficients indexed by the bitmask of the tag subset.
    fn coeffs(&self) -> Vec<Complex64> {
        self.0.coeffs().to_vec()
    }

    fn coeff(&self, mask: usize) -> PyResult<Complex64> {
        if mask >= 1 << self.0.n() {
            return Err(PyValueError::new_err(format!("mask {mask} out of range")));
        }
        Ok(self.0.coeff(mask))
    }

    /// Lifts `exp`, `sin`, `cos`, `sinh`, `cosh`, `log`, `sqrt` or `inv`.
    fn apply(&self, name: &str) -> PyResult<Element> {
        let k = Kernel::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown function `{name}`")))?;
        pim_apply(&k, &self.0).map(Element).map_err(err)
    }

    fn inv(&self) -> PyResult<Element> {
        self.0.inv().map(Element).map_err(err)
    }

    fn __add__(&self, other: &Element) -> PyResult<Element> {
        self.0.try_add(&other.0).map(Element).map_err(err)
    }

    fn __sub__(&self, other: &Element) -> PyResult<Element> {
        self.0.try_add(&-&other.0).map(Element).map_err(err)
    }

    fn __mul__(&self, other: &Element) -> PyResult<Element> {
        self.0.try_mul(&other.0).map(Element).map_err(err)
    }

    fn __neg__(&self) -> Element {
        Element(-&self.0)
    }

    fn __eq__(&self, other: &Element) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element('{}', tags={})", self.0, self.0.n())
    }
}

/// The 9×9 R-matrix as rows of elements.
#[pyfunction]
fn rmatrix(sig: &str, v: Complex64) -> PyResult<Vec<Vec<Element>>> {
    let r = rmatrix3(&parse_sig(sig)?, v).map_err(err)?;
    Ok((0..r.rows()).map(|i| (0..r.cols()).map(|j| Element(r.get(i, j).clone())).collect()).collect())
}

/// RTT and orthogonality relations in the relation JSON schema.
#[pyfunction]
fn relations<'py>(py: Python<'py>, sig: &str, v: Complex64) -> PyResult<Bound<'py, PyAny>> {
    let data = FrtData::new(&parse_sig(sig)?, v).map_err(err)?;
    json(py, &data.relation_set().to_json_string())
}

/// `(φ, x0, x1)` along the orbit of `(x0, x1)` in a Euclidean, Galilean or
/// Minkowskian plane.
#[pyfunction]
#[pyo3(signature = (plane, x0, x1, steps = 64))]
fn orbit(plane: &str, x0: f64, x1: f64, steps: usize) -> PyResult<Vec<(f64, f64, f64)>> {
    let p = OrbitPlane::parse(plane).map_err(err)?;
    orbit_sample(p, (x0, x1), steps).map_err(err)
}

/// Computed and listed pairings of the functionals with the generators.
#[pyfunction]
fn pairing_table<'py>(py: Python<'py>, sig: &str, v: Complex64) -> PyResult<Bound<'py, PyAny>> {
    let conv = choose_convention(v, 1e-10).map_err(err)?;
    let rep = pairing_report(&parse_sig(sig)?, v, conv, 1e-10).map_err(err)?;
    json(py, &serde_json::to_string(&rep).expect("plain data"))
}

/// Runs a suite and returns its reports as dicts.
#[pyfunction]
#[pyo3(signature = (suite = "all", sig = "1,1", v = None, seed = None, trunc = None))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    sig: &str,
    v: Option<Vec<Complex64>>,
    seed: Option<u64>,
    trunc: Option<usize>,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let mut cfg = RunConfig { signature: parse_sig(sig)?, ..RunConfig::default() };
    if let Some(v) = v {
        cfg.v = v;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(d) = trunc {
        if !(1..=16).contains(&d) {
            return Err(PyValueError::new_err(format!("truncation order {d} outside 1..=16")));
        }
        cfg.trunc_w = d;
        cfg.trunc_x = d;
    }
    let reports = py.detach(|| run_suite(&cfg, suite)).map_err(err)?;
    reports.iter().map(|r| json(py, &r.to_json_line())).collect()
}

#[pymodule]
fn pyckqw(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Element>()?;
    m.add_function(wrap_pyfunction!(rmatrix, m)?)?;
    m.add_function(wrap_pyfunction!(relations, m)?)?;
    m.add_function(wrap_pyfunction!(orbit, m)?)?;
    m.add_function(wrap_pyfunction!(pairing_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
