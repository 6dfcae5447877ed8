use std::sync::Arc;

use finhtop_core as core;
use core::io::{from_json, to_dot, to_json};
use core::verify::{self, CheckInput, TheoremId};
use core::{Budget, FinitePoset, PosetDiagram, PosetMap, SimplicialComplex};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn budget(states: Option<usize>) -> Budget {
    states.map(Budget::new).unwrap_or_default()
}

/// Homology as `(betti, torsion)` with torsion coefficients as integers.
type Homology = (Vec<u64>, Vec<Vec<String>>);

fn homology(h: core::HomologyProfile) -> Homology {
    let torsion = h.torsion.iter().map(|t| t.iter().map(|d| d.to_string()).collect()).collect();
    (h.betti, torsion)
}

#[pyclass(name = "Poset", module = "finhtop", frozen)]
struct PyPoset {
    inner: FinitePoset,
}

#[pymethods]
impl PyPoset {
    #[new]
    #[pyo3(signature = (elements, relations = Vec::new()))]
    fn new(elements: Vec<String>, relations: Vec<(String, String)>) -> PyResult<Self> {
        FinitePoset::new(&elements, &relations).map(|inner| PyPoset { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        from_json(text).map(|inner| PyPoset { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        to_json(&self.inner)
    }

    fn to_dot(&self) -> String {
        to_dot(&self.inner, "poset")
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Poset({} elements, {} covers)", self.inner.len(), self.inner.covers().len())
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.elements().to_vec()
    }

    #[getter]
    fn covers(&self) -> Vec<(String, String)> {
        self.inner.cover_names().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    fn leq(&self, x: &str, y: &str) -> PyResult<bool> {
        self.inner.leq(x, y).map_err(err)
    }

    fn opposite(&self) -> Self {
        PyPoset { inner: self.inner.opposite() }
    }

    /// The core and the names of the removed beat points.
    fn core(&self) -> PyResult<(Self, Vec<String>)> {
        let (c, seq) = core::reduction::core(&self.inner).map_err(err)?;
        Ok((PyPoset { inner: c }, seq.elements().map(str::to_string).collect()))
    }

    fn is_contractible(&self) -> PyResult<bool> {
        core::reduction::is_contractible(&self.inner).map_err(err)
    }

    fn is_beat_point(&self, x: &str) -> PyResult<bool> {
        core::reduction::is_beat_point(&self.inner, x).map_err(err)
    }

    fn is_weak_point(&self, x: &str) -> PyResult<bool> {
        core::reduction::is_weak_point(&self.inner, x).map_err(err)
    }

    /// Verdict of the homotopical triviality oracle, as JSON.
    #[pyo3(signature = (budget = None))]
    fn triviality(&self, budget: Option<usize>) -> String {
        to_json(&core::reduction::triviality_oracle(&self.inner, &self::budget(budget)))
    }

    fn homology(&self) -> PyResult<Homology> {
        core::homology::poset_homology(&self.inner).map(homology).map_err(err)
    }

    fn order_complex(&self) -> PyResult<PyComplex> {
        core::simplicial::order_complex(&self.inner).map(|inner| PyComplex { inner }).map_err(err)
    }
}

#[pyclass(name = "Complex", module = "finhtop", frozen)]
struct PyComplex {
    inner: SimplicialComplex,
}

#[pymethods]
impl PyComplex {
    #[new]
    fn new(vertices: Vec<String>, simplices: Vec<Vec<String>>) -> PyResult<Self> {
        SimplicialComplex::new(&vertices, &simplices).map(|inner| PyComplex { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        from_json(text).map(|inner| PyComplex { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Complex(f-vector {:?})", self.inner.f_vector())
    }

    #[getter]
    fn f_vector(&self) -> Vec<usize> {
        self.inner.f_vector()
    }

    fn euler_characteristic(&self) -> i64 {
        self.inner.euler_characteristic()
    }

    #[pyo3(signature = (op = false))]
    fn face_poset(&self, op: bool) -> PyResult<PyPoset> {
        let x = if op {
            core::simplicial::face_poset_op(&self.inner)
        } else {
            core::simplicial::face_poset(&self.inner)
        };
        x.map(|inner| PyPoset { inner }).map_err(err)
    }

    fn barycentric(&self) -> PyResult<Self> {
        core::simplicial::barycentric(&self.inner).map(|inner| PyComplex { inner }).map_err(err)
    }

    fn homology(&self) -> PyResult<Homology> {
        core::homology::homology_profile(&self.inner).map(homology).map_err(err)
    }
}

#[pyclass(name = "Diagram", module = "finhtop", frozen)]
struct PyDiagram {
    inner: PosetDiagram,
}

#[pymethods]
impl PyDiagram {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        from_json(text).map(|inner| PyDiagram { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        to_json(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Diagram(index of {} elements)", self.inner.index().len())
    }

    #[getter]
    fn index(&self) -> PyPoset {
        PyPoset { inner: self.inner.index().as_ref().clone() }
    }

    fn fiber(&self, p: &str) -> PyResult<PyPoset> {
        let f = self.inner.fiber_named(p).map_err(err)?;
        Ok(PyPoset { inner: f.as_ref().clone() })
    }

    fn hocolim(&self) -> PyPoset {
        PyPoset { inner: self.inner.hocolim() }
    }

    fn restrict(&self, keep: Vec<String>) -> PyResult<Self> {
        self.inner.restrict(&keep).map(|inner| PyDiagram { inner }).map_err(err)
    }
}

/// Mapping cylinder of the map `x ↦ assignment[x]` from `source` to `target`.
#[pyfunction]
fn mapping_cylinder(source: &PyPoset, target: &PyPoset, assignment: Vec<(String, String)>) -> PyResult<PyPoset> {
    let f = PosetMap::new(
        Arc::new(source.inner.clone()),
        Arc::new(target.inner.clone()),
        &assignment,
    )
    .map_err(err)?;
    Ok(PyPoset { inner: core::diagram::mapping_cylinder(&f) })
}

#[pyfunction]
fn random_poset(n: usize, density: f64, seed: u64) -> PyPoset {
    PyPoset { inner: verify::random_poset(n, density, seed) }
}

#[pyfunction]
fn random_diagram(index_size: usize, fiber_size: usize, seed: u64) -> PyDiagram {
    PyDiagram { inner: verify::random_diagram(index_size, fiber_size, seed) }
}

#[pyfunction]
fn w_poset() -> PyPoset {
    PyPoset { inner: core::models::w_poset() }
}

#[pyfunction]
fn sphere_pushout() -> PyDiagram {
    PyDiagram { inner: core::models::sphere_pushout() }
}

fn theorem(id: &str) -> PyResult<TheoremId> {
    id.parse().map_err(err)
}

/// Runs one checker on a JSON check input; returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (theorem_id, input, budget = None))]
fn check(py: Python<'_>, theorem_id: &str, input: &str, budget: Option<usize>) -> PyResult<String> {
    let t = theorem(theorem_id)?;
    let input: CheckInput = from_json(input).map_err(err)?;
    let b = self::budget(budget);
    let report = py.detach(|| verify::run_check(t, &input, &b)).map_err(err)?;
    Ok(to_json(&report))
}

/// Runs `n` seeded random instances; returns the reports as a JSON array.
#[pyfunction]
#[pyo3(signature = (theorem_id, n, seed = 0, budget = None))]
fn run_suite(py: Python<'_>, theorem_id: &str, n: usize, seed: u64, budget: Option<usize>) -> PyResult<String> {
    let t = theorem(theorem_id)?;
    let b = self::budget(budget);
    let reports = py.detach(|| verify::run_suite(t, n, seed, &b)).map_err(err)?;
    Ok(to_json(&reports))
}

#[pyfunction]
fn theorem_ids() -> Vec<&'static str> {
    TheoremId::ALL.iter().map(|t| t.as_str()).collect()
}

#[pymodule]
fn finhtop(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoset>()?;
    m.add_class::<PyComplex>()?;
    m.add_class::<PyDiagram>()?;
    m.add_function(wrap_pyfunction!(mapping_cylinder, m)?)?;
    m.add_function(wrap_pyfunction!(random_poset, m)?)?;
    m.add_function(wrap_pyfunction!(random_diagram, m)?)?;
    m.add_function(wrap_pyfunction!(w_poset, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_pushout, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_ids, m)?)?;
    Ok(())
}
