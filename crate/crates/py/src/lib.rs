//! Python bindings: `import jgeom_py`.
//!
//! Matrices cross the boundary as lists of rows of Python numbers (real or
//! complex) and come back as lists of rows of `complex`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use jgeom::jordan::{self, PeirceReflection};
use jgeom::manifold::{self, GeodesicBlock};
use jgeom::pair;
use jgeom::{CMat, Error, HermMat, PeirceIndex, Projection, TangentVec, Tolerances, C64};

create_exception!(jgeom_py, JGeomError, PyValueError, "Raised for invalid input or failed preconditions.");
create_exception!(jgeom_py, AntipodalPairError, JGeomError, "b lies in the antipodal set of a.");
create_exception!(jgeom_py, RankMismatchError, JGeomError, "The two projections have different ranks.");
create_exception!(jgeom_py, NumericalError, JGeomError, "A numerical kernel failed to converge.");

fn py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::AntipodalPair { .. } => AntipodalPairError::new_err(msg),
        Error::RankMismatch { .. } => RankMismatchError::new_err(msg),
        Error::NumericalFailure(_) => NumericalError::new_err(msg),
        _ => JGeomError::new_err(msg),
    }
}

type Rows = Vec<Vec<C64>>;

pub fn rows_to_cmat(rows: &Rows) -> Result<CMat, Error> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::ParseError("matrix rows have unequal lengths".into()));
    }
    CMat::from_vec(n, m, rows.iter().flatten().copied().collect())
}

pub fn cmat_to_rows(m: &CMat) -> Rows {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect()).collect()
}

fn herm(rows: &Rows, tol: &Tolerances) -> PyResult<HermMat> {
    HermMat::new(rows_to_cmat(rows).map_err(py_err)?, tol).map_err(py_err)
}

fn peirce_index(k: f64) -> PyResult<PeirceIndex> {
    PeirceIndex::ALL
        .into_iter()
        .find(|i| i.value() == k)
        .ok_or_else(|| JGeomError::new_err(format!("Peirce index must be 1, 0.5 or 0, got {k}")))
}

/// Numerical thresholds; every function takes an optional `tol`.
#[pyclass(name = "Tolerances", module = "jgeom_py", from_py_object)]
#[derive(Clone, Default)]
struct PyTolerances {
    inner: Tolerances,
}

#[pymethods]
impl PyTolerances {
    #[new]
    #[pyo3(signature = (tol_herm=None, tol_proj=None, tol_cluster=None, tol_invert=None, tol_eq=None))]
    fn new(
        tol_herm: Option<f64>,
        tol_proj: Option<f64>,
        tol_cluster: Option<f64>,
        tol_invert: Option<f64>,
        tol_eq: Option<f64>,
    ) -> PyResult<Self> {
        let d = Tolerances::default();
        let inner = Tolerances {
            tol_herm: tol_herm.unwrap_or(d.tol_herm),
            tol_proj: tol_proj.unwrap_or(d.tol_proj),
            tol_cluster: tol_cluster.unwrap_or(d.tol_cluster),
            tol_invert: tol_invert.unwrap_or(d.tol_invert),
            tol_eq: tol_eq.unwrap_or(d.tol_eq),
        };
        inner.validate().map_err(py_err)?;
        Ok(PyTolerances { inner })
    }

    #[getter]
    fn tol_herm(&self) -> f64 {
        self.inner.tol_herm
    }
    #[getter]
    fn tol_proj(&self) -> f64 {
        self.inner.tol_proj
    }
    #[getter]
    fn tol_cluster(&self) -> f64 {
        self.inner.tol_cluster
    }
    #[getter]
    fn tol_invert(&self) -> f64 {
        self.inner.tol_invert
    }
    #[getter]
    fn tol_eq(&self) -> f64 {
        self.inner.tol_eq
    }

    fn __repr__(&self) -> String {
        let t = &self.inner;
        format!(
            "Tolerances(tol_herm={:e}, tol_proj={:e}, tol_cluster={:e}, tol_invert={:e}, tol_eq={:e})",
            t.tol_herm, t.tol_proj, t.tol_cluster, t.tol_invert, t.tol_eq
        )
    }
}

fn tol_of(tol: Option<PyTolerances>) -> Tolerances {
    tol.unwrap_or_default().inner
}

/// Orthogonal projection `p = p* = p²`.
#[pyclass(name = "Projection", module = "jgeom_py", from_py_object)]
#[derive(Clone)]
struct PyProjection {
    inner: Projection,
}

#[pymethods]
impl PyProjection {
    #[new]
    #[pyo3(signature = (matrix, tol=None))]
    fn new(matrix: Rows, tol: Option<PyTolerances>) -> PyResult<Self> {
        let tol = tol_of(tol);
        let inner = Projection::new(herm(&matrix, &tol)?, &tol).map_err(py_err)?;
        Ok(PyProjection { inner })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn matrix(&self) -> Rows {
        cmat_to_rows(self.inner.cmat())
    }

    fn complement(&self) -> Self {
        PyProjection { inner: self.inner.complement() }
    }

    fn idempotency_residual(&self) -> f64 {
        self.inner.idempotency_residual()
    }

    fn __repr__(&self) -> String {
        format!("Projection(n={}, rank={})", self.inner.n(), self.inner.rank())
    }
}

/// Tangent vector `u` at a base projection `a`: `a∘u = u/2`.
#[pyclass(name = "TangentVec", module = "jgeom_py", from_py_object)]
#[derive(Clone)]
struct PyTangentVec {
    inner: TangentVec,
}

#[pymethods]
impl PyTangentVec {
    #[new]
    #[pyo3(signature = (base, matrix, tol=None))]
    fn new(base: PyProjection, matrix: Rows, tol: Option<PyTolerances>) -> PyResult<Self> {
        let tol = tol_of(tol);
        let u = herm(&matrix, &tol)?;
        Ok(PyTangentVec { inner: TangentVec::new(base.inner, u, &tol).map_err(py_err)? })
    }

    #[getter]
    fn base(&self) -> PyProjection {
        PyProjection { inner: self.inner.base().clone() }
    }

    fn matrix(&self) -> Rows {
        cmat_to_rows(self.inner.mat().mat())
    }

    fn scale(&self, s: f64) -> Self {
        PyTangentVec { inner: self.inner.scale(s) }
    }

    fn levi_norm(&self) -> f64 {
        manifold::levi_norm(&self.inner).value()
    }

    fn __repr__(&self) -> String {
        format!("TangentVec(n={}, levi_norm={})", self.inner.base().n(), self.levi_norm())
    }
}

/// Geodesic `t ↦ γ(t)` with `γ(0) = a`, `γ'(0) = u`.
#[pyclass(name = "Geodesic", module = "jgeom_py")]
struct PyGeodesic {
    inner: jgeom::Geodesic,
}

#[pymethods]
impl PyGeodesic {
    #[new]
    #[pyo3(signature = (velocity, tol=None))]
    fn new(velocity: PyTangentVec, tol: Option<PyTolerances>) -> PyResult<Self> {
        let inner = manifold::geodesic(&velocity.inner, &tol_of(tol)).map_err(py_err)?;
        Ok(PyGeodesic { inner })
    }

    fn eval(&self, t: f64) -> PyProjection {
        PyProjection { inner: self.inner.eval(t) }
    }

    fn eval_matrix(&self, t: f64) -> Rows {
        cmat_to_rows(self.inner.eval_matrix(t).mat())
    }

    /// `(ξ_k, rank_k)` for each spectral block of the velocity.
    fn blocks(&self) -> Vec<(f64, usize)> {
        self.inner.blocks().iter().map(|b: &GeodesicBlock| (b.xi, b.projection.rank())).collect()
    }

    fn __repr__(&self) -> String {
        format!("Geodesic(n={}, blocks={})", self.inner.base().n(), self.inner.blocks().len())
    }
}

#[pyfunction]
#[pyo3(signature = (x, y, tol=None))]
fn jprod(x: Rows, y: Rows, tol: Option<PyTolerances>) -> PyResult<Rows> {
    let tol = tol_of(tol);
    let z = jordan::jprod(&herm(&x, &tol)?, &herm(&y, &tol)?).map_err(py_err)?;
    Ok(cmat_to_rows(z.mat()))
}

#[pyfunction]
#[pyo3(signature = (x, y, tol=None))]
fn quad_p(x: Rows, y: Rows, tol: Option<PyTolerances>) -> PyResult<Rows> {
    let tol = tol_of(tol);
    let z = jordan::quad_p(&herm(&x, &tol)?, &herm(&y, &tol)?).map_err(py_err)?;
    Ok(cmat_to_rows(z.mat()))
}

#[pyfunction]
#[pyo3(signature = (a, b, c, tol=None))]
fn triple(a: Rows, b: Rows, c: Rows, tol: Option<PyTolerances>) -> PyResult<Rows> {
    let tol = tol_of(tol);
    let z = jordan::triple(&herm(&a, &tol)?, &herm(&b, &tol)?, &herm(&c, &tol)?).map_err(py_err)?;
    Ok(cmat_to_rows(z.mat()))
}

/// Peirce part of `x` for `a` with index `k ∈ {1, 0.5, 0}`.
#[pyfunction]
#[pyo3(signature = (a, k, x, tol=None))]
fn peirce(a: PyProjection, k: f64, x: Rows, tol: Option<PyTolerances>) -> PyResult<Rows> {
    let tol = tol_of(tol);
    let z = jordan::peirce(&a.inner, peirce_index(k)?, &herm(&x, &tol)?).map_err(py_err)?;
    Ok(cmat_to_rows(z.mat()))
}

#[pyfunction]
#[pyo3(signature = (p, x, tol=None))]
fn peirce_reflection(p: PyProjection, x: Rows, tol: Option<PyTolerances>) -> PyResult<Rows> {
    let tol = tol_of(tol);
    let z = jordan::peirce_reflection(&p.inner, &herm(&x, &tol)?).map_err(py_err)?;
    Ok(cmat_to_rows(z.mat()))
}

#[pyfunction]
#[pyo3(signature = (a, b, tol=None))]
fn log_map(a: PyProjection, b: PyProjection, tol: Option<PyTolerances>) -> PyResult<PyTangentVec> {
    let u = manifold::log_map(&a.inner, &b.inner, &tol_of(tol)).map_err(py_err)?;
    Ok(PyTangentVec { inner: u })
}

#[pyfunction]
#[pyo3(signature = (a, b, tol=None))]
fn chart_phi(a: PyProjection, b: PyProjection, tol: Option<PyTolerances>) -> PyResult<PyTangentVec> {
    let v = manifold::chart_phi(&a.inner, &b.inner, &tol_of(tol)).map_err(py_err)?;
    Ok(PyTangentVec { inner: v })
}

#[pyfunction]
#[pyo3(signature = (v, tol=None))]
fn chart_psi(v: PyTangentVec, tol: Option<PyTolerances>) -> PyResult<PyProjection> {
    let p = manifold::chart_psi(&v.inner, &tol_of(tol)).map_err(py_err)?;
    Ok(PyProjection { inner: p })
}

#[pyfunction]
#[pyo3(signature = (a, b, tol=None))]
fn distance(a: PyProjection, b: PyProjection, tol: Option<PyTolerances>) -> PyResult<f64> {
    manifold::distance(&a.inner, &b.inner, &tol_of(tol)).map_err(py_err)
}

/// Principal angles in ascending order, repeated by multiplicity.
#[pyfunction]
#[pyo3(signature = (a, b, tol=None))]
fn principal_angles(a: PyProjection, b: PyProjection, tol: Option<PyTolerances>) -> PyResult<Vec<f64>> {
    Ok(pair::principal_angles(&a.inner, &b.inner, &tol_of(tol)).map_err(py_err)?.expanded())
}

#[pyfunction]
#[pyo3(signature = (a, b, tol=None))]
fn is_antipodal(a: PyProjection, b: PyProjection, tol: Option<PyTolerances>) -> PyResult<bool> {
    pair::is_antipodal(&a.inner, &b.inner, &tol_of(tol)).map_err(py_err)
}

/// `(λ, μ)` with `P(a)b = λa`, `P(b)a = μb`.
#[pyfunction]
#[pyo3(signature = (a, b, tol=None))]
fn lambda_check(a: PyProjection, b: PyProjection, tol: Option<PyTolerances>) -> PyResult<(f64, f64)> {
    pair::lambda_check(&a.inner, &b.inner, &tol_of(tol)).map_err(py_err)
}

/// Dict with `a0`, `b0`, `shared` and `minimal = [(λ, a_k, b_k), ...]`.
#[pyfunction]
#[pyo3(signature = (a, b, tol=None))]
fn decompose_pair<'py>(
    py: Python<'py>,
    a: PyProjection,
    b: PyProjection,
    tol: Option<PyTolerances>,
) -> PyResult<Bound<'py, PyDict>> {
    let d = pair::decompose_pair(&a.inner, &b.inner, &tol_of(tol)).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("a0", PyProjection { inner: d.a0 })?;
    out.set_item("b0", PyProjection { inner: d.b0 })?;
    out.set_item("shared", PyProjection { inner: d.shared })?;
    let minimal = d
        .minimal
        .into_iter()
        .map(|m| (m.lambda, PyProjection { inner: m.a }, PyProjection { inner: m.b }))
        .collect::<Vec<_>>();
    out.set_item("minimal", minimal)?;
    Ok(out)
}

/// Geodesic midpoint `c` of `a` and `b`; `peirce_reflection(c, ·)` swaps them.
#[pyfunction]
#[pyo3(signature = (a, b, tol=None))]
fn midpoint(a: PyProjection, b: PyProjection, tol: Option<PyTolerances>) -> PyResult<PyProjection> {
    let (c, _): (Projection, PeirceReflection) =
        manifold::midpoint_symmetry(&a.inner, &b.inner, &tol_of(tol)).map_err(py_err)?;
    Ok(PyProjection { inner: c })
}

#[pymodule]
fn jgeom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyTolerances>()?;
    m.add_class::<PyProjection>()?;
    m.add_class::<PyTangentVec>()?;
    m.add_class::<PyGeodesic>()?;
    m.add("JGeomError", py.get_type::<JGeomError>())?;
    m.add("AntipodalPairError", py.get_type::<AntipodalPairError>())?;
    m.add("RankMismatchError", py.get_type::<RankMismatchError>())?;
    m.add("NumericalError", py.get_type::<NumericalError>())?;
    m.add_function(wrap_pyfunction!(jprod, m)?)?;
    m.add_function(wrap_pyfunction!(quad_p, m)?)?;
    m.add_function(wrap_pyfunction!(triple, m)?)?;
    m.add_function(wrap_pyfunction!(peirce, m)?)?;
    m.add_function(wrap_pyfunction!(peirce_reflection, m)?)?;
    m.add_function(wrap_pyfunction!(log_map, m)?)?;
    m.add_function(wrap_pyfunction!(chart_phi, m)?)?;
    m.add_function(wrap_pyfunction!(chart_psi, m)?)?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(principal_angles, m)?)?;
    m.add_function(wrap_pyfunction!(is_antipodal, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_check, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_pair, m)?)?;
    m.add_function(wrap_pyfunction!(midpoint, m)?)?;
    Ok(())
}
