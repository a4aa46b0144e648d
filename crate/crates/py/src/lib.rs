//! Python bindings for `idealtetra`.
//!
//! Domain errors raise `ValueError`; numerical failures raise `ArithmeticError`.

use idealtetra::minkowski::{self, CLASSIFICATION_TOL};
use idealtetra::tetra::{self, LabelledTetrahedron};
use idealtetra::verify::{self, Suite};
use idealtetra::{seidel, Error, PointClass};
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    if e.is_domain() {
        PyValueError::new_err(e.to_string())
    } else {
        PyArithmeticError::new_err(e.to_string())
    }
}

/// A vector of R^{1,3} with the form diag(1, -1, -1, -1).
#[pyclass(name = "MinkowskiVector", frozen)]
struct MinkowskiVector(minkowski::MinkowskiVector);

#[pymethods]
impl MinkowskiVector {
    #[new]
    fn new(components: [f64; 4]) -> PyResult<Self> {
        minkowski::MinkowskiVector::new(components).map(Self).map_err(to_py)
    }

    #[getter]
    fn components(&self) -> [f64; 4] {
        self.0.components()
    }

    fn inner(&self, other: PyRef<'_, Self>) -> f64 {
        self.0.inner(&other.0)
    }

    /// "positive", "null" or "negative".
    #[pyo3(signature = (tol = CLASSIFICATION_TOL))]
    fn classify(&self, tol: f64) -> PyResult<&'static str> {
        Ok(match self.0.classify(tol).map_err(to_py)? {
            PointClass::Positive => "positive",
            PointClass::Null => "null",
            PointClass::Negative => "negative",
        })
    }

    fn __repr__(&self) -> String {
        let [a, b, c, d] = self.0.components();
        format!("MinkowskiVector([{a}, {b}, {c}, {d}])")
    }
}

/// Doubly stochastic coordinates (r, s, t) of an ideal tetrahedron.
#[pyclass(name = "TriangleCoords", frozen)]
struct TriangleCoords(tetra::TriangleCoords);

#[pymethods]
impl TriangleCoords {
    #[new]
    fn new(r: f64, s: f64, t: f64) -> PyResult<Self> {
        tetra::TriangleCoords::new(r, s, t).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn regular() -> Self {
        Self(tetra::TriangleCoords::regular())
    }

    #[getter]
    fn r(&self) -> f64 {
        self.0.r()
    }

    #[getter]
    fn s(&self) -> f64 {
        self.0.s()
    }

    #[getter]
    fn t(&self) -> f64 {
        self.0.t()
    }

    fn as_tuple(&self) -> (f64, f64, f64) {
        let [r, s, t] = self.0.as_array();
        (r, s, t)
    }

    fn is_vertex(&self) -> bool {
        self.0.is_vertex()
    }

    fn is_degenerate(&self) -> bool {
        self.0.is_degenerate()
    }

    fn gram_matrix(&self) -> [[f64; 4]; 4] {
        self.0.gram_matrix()
    }

    /// Reorder so that r <= s <= t.
    fn canonical(&self) -> Self {
        Self(tetra::canonicalize(&self.0))
    }

    fn to_plane(&self) -> PlaneCoords {
        PlaneCoords(tetra::delta_to_plane(&self.0))
    }

    /// Dihedral angles (theta1, theta2, theta3); fails at a vertex of the triangle.
    fn angles(&self) -> PyResult<(f64, f64, f64)> {
        let [a, b, c] = tetra::angles_from_coords(&self.0).map_err(to_py)?.as_array();
        Ok((a, b, c))
    }

    fn volume(&self) -> PyResult<f64> {
        seidel::volume_from_coords(&self.0).map_err(to_py)
    }

    /// Four ideal vertices realising these coordinates.
    fn synthesize(&self) -> PyResult<Vec<MinkowskiVector>> {
        let t = tetra::synthesize(&self.0).map_err(to_py)?;
        Ok(t.vertices().iter().map(|v| MinkowskiVector(*v)).collect())
    }

    fn __repr__(&self) -> String {
        format!("TriangleCoords({}, {}, {})", self.0.r(), self.0.s(), self.0.t())
    }
}

/// Planar chart (c, d) of the moduli triangle.
#[pyclass(name = "PlaneCoords", frozen)]
struct PlaneCoords(tetra::PlaneCoords);

#[pymethods]
impl PlaneCoords {
    #[new]
    fn new(c: f64, d: f64) -> PyResult<Self> {
        tetra::PlaneCoords::new(c, d).map(Self).map_err(to_py)
    }

    #[getter]
    fn c(&self) -> f64 {
        self.0.c()
    }

    #[getter]
    fn d(&self) -> f64 {
        self.0.d()
    }

    fn to_triangle(&self) -> TriangleCoords {
        TriangleCoords(tetra::plane_to_delta(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("PlaneCoords({}, {})", self.0.c(), self.0.d())
    }
}

/// Determinant/permanent coordinates (alpha, omega) in the region S.
#[pyclass(name = "SeidelCoords", frozen)]
struct SeidelCoords(seidel::SeidelCoords);

#[pymethods]
impl SeidelCoords {
    #[new]
    fn new(alpha: f64, omega: f64) -> PyResult<Self> {
        seidel::SeidelCoords::new(alpha, omega).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn regular() -> Self {
        Self(seidel::SeidelCoords::regular())
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha()
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.0.omega()
    }

    fn in_region(&self) -> bool {
        seidel::region_contains(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("SeidelCoords({}, {})", self.0.alpha(), self.0.omega())
    }
}

#[pyfunction]
fn lobachevsky(theta: f64) -> f64 {
    idealtetra::lobachevsky(theta)
}

#[pyfunction]
#[pyo3(signature = (theta, abs_tol = 1e-12))]
fn lobachevsky_quadrature(theta: f64, abs_tol: f64) -> PyResult<f64> {
    idealtetra::lobachevsky_quadrature(theta, abs_tol).map_err(to_py)
}

#[pyfunction]
fn forward(coords: PyRef<'_, TriangleCoords>) -> SeidelCoords {
    SeidelCoords(seidel::forward(&coords.0))
}

#[pyfunction]
fn invert(sc: PyRef<'_, SeidelCoords>) -> PyResult<PlaneCoords> {
    seidel::invert(&sc.0).map(PlaneCoords).map_err(to_py)
}

#[pyfunction]
fn invert_via_cubic(sc: PyRef<'_, SeidelCoords>) -> PyResult<TriangleCoords> {
    seidel::invert_via_cubic(&sc.0).map(TriangleCoords).map_err(to_py)
}

#[pyfunction]
fn volume(sc: PyRef<'_, SeidelCoords>) -> PyResult<f64> {
    seidel::volume(&sc.0).map_err(to_py)
}

/// (dV/dalpha, dV/domega) at an interior point of S.
#[pyfunction]
fn volume_derivatives(sc: PyRef<'_, SeidelCoords>) -> PyResult<(f64, f64)> {
    let d = seidel::volume_derivatives(&sc.0).map_err(to_py)?;
    Ok((d.d_alpha, d.d_omega))
}

#[pyfunction]
fn kprime(a: f64, b: f64) -> PyResult<f64> {
    seidel::kprime(a, b).map_err(to_py)
}

/// Coordinates of four ideal vertices, after sign normalisation.
#[pyfunction]
#[pyo3(signature = (vertices, tol = CLASSIFICATION_TOL))]
fn doubly_stochastic_coords(vertices: Vec<PyRef<'_, MinkowskiVector>>, tol: f64) -> PyResult<TriangleCoords> {
    let vs: [minkowski::MinkowskiVector; 4] = vertices
        .iter()
        .map(|v| v.0)
        .collect::<Vec<_>>()
        .try_into()
        .map_err(|_| PyValueError::new_err("expected exactly four vertices"))?;
    let t = LabelledTetrahedron::with_tolerance(vs, tol).map_err(to_py)?;
    tetra::doubly_stochastic_coords(&t).map(TriangleCoords).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (grid_n = 400))]
fn extremal_scan<'py>(py: Python<'py>, grid_n: usize) -> PyResult<Bound<'py, PyDict>> {
    let rec = seidel::extremal_scan(grid_n).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("argmin_per", TriangleCoords(rec.argmin_per))?;
    d.set_item("min_per", rec.min_per)?;
    d.set_item("argmin_det", TriangleCoords(rec.argmin_det))?;
    d.set_item("min_det", rec.min_det)?;
    d.set_item("min_det_outside_triangle", rec.min_det_outside_triangle)?;
    Ok(d)
}

/// Run a property suite; one dict per property.
#[pyfunction]
#[pyo3(signature = (suite = "all", seed = 42))]
fn run_suite<'py>(py: Python<'py>, suite: &str, seed: u64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let suite: Suite = suite.parse().map_err(PyValueError::new_err)?;
    verify::run(suite, seed)
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("suite", r.suite)?;
            d.set_item("property", r.property)?;
            d.set_item("passed", r.passed)?;
            d.set_item("samples", r.samples)?;
            d.set_item("metric", r.metric.name())?;
            d.set_item("value", r.value)?;
            d.set_item("threshold", r.threshold)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn idealtetra_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<MinkowskiVector>()?;
    m.add_class::<TriangleCoords>()?;
    m.add_class::<PlaneCoords>()?;
    m.add_class::<SeidelCoords>()?;
    m.add_function(wrap_pyfunction!(lobachevsky, m)?)?;
    m.add_function(wrap_pyfunction!(lobachevsky_quadrature, m)?)?;
    m.add_function(wrap_pyfunction!(forward, m)?)?;
    m.add_function(wrap_pyfunction!(invert, m)?)?;
    m.add_function(wrap_pyfunction!(invert_via_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(volume, m)?)?;
    m.add_function(wrap_pyfunction!(volume_derivatives, m)?)?;
    m.add_function(wrap_pyfunction!(kprime, m)?)?;
    m.add_function(wrap_pyfunction!(doubly_stochastic_coords, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_scan, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
