//! Python bindings: expressions, vector fields, the symmetry solver, the Lie algebra tools,
//! the optimal-system classifier and characteristic invariants.

use approxsym::detsolve::{self, Ansatz};
use approxsym::invariants;
use approxsym::liealg::{self, LieAlgebraTable};
use approxsym::optimal::{parse_vector, Normalizer};
use approxsym::symbolic::{parse, rat::fmt_rat};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Expr", frozen, eq, skip_from_py_object, module = "approxsym_py")]
#[derive(Clone, PartialEq)]
pub struct PyExpr(pub approxsym::Expr);

#[pymethods]
impl PyExpr {
    #[new]
    fn new(src: &str) -> PyResult<Self> {
        parse(src).map(PyExpr).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Expr('{}')", self.0)
    }

    fn latex(&self) -> String {
        self.0.to_latex()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `(order0, order1)` of the expansion in eps.
    fn eps_truncate(&self) -> PyResult<(PyExpr, PyExpr)> {
        let t = self.0.eps_truncate().map_err(err)?;
        Ok((PyExpr(t.order0), PyExpr(t.order1)))
    }

    fn __add__(&self, other: &PyExpr) -> PyExpr {
        PyExpr(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &PyExpr) -> PyExpr {
        PyExpr(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &PyExpr) -> PyExpr {
        PyExpr(&self.0 * &other.0)
    }
}

#[pyclass(name = "VectorField", frozen, eq, from_py_object, module = "approxsym_py")]
#[derive(Clone, PartialEq)]
pub struct PyVectorField(pub approxsym::VectorField);

#[pymethods]
impl PyVectorField {
    /// `xi*d_x + tau*d_t + phi*d_u`.
    #[new]
    fn new(xi: &str, tau: &str, phi: &str) -> PyResult<Self> {
        let f = approxsym::VectorField::new(parse(xi).map_err(err)?, parse(tau).map_err(err)?, parse(phi).map_err(err)?);
        f.map(PyVectorField).map_err(err)
    }

    #[getter]
    fn xi(&self) -> PyExpr {
        PyExpr(self.0.xi.clone())
    }

    #[getter]
    fn tau(&self) -> PyExpr {
        PyExpr(self.0.tau.clone())
    }

    #[getter]
    fn phi(&self) -> PyExpr {
        PyExpr(self.0.phi.clone())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("VectorField('{}', '{}', '{}')", self.0.xi, self.0.tau, self.0.phi)
    }

    fn latex(&self) -> String {
        self.0.to_latex()
    }

    fn apply(&self, f: &PyExpr) -> PyExpr {
        PyExpr(self.0.apply(&f.0))
    }

    fn bracket(&self, other: &PyVectorField) -> PyVectorField {
        PyVectorField(self.0.bracket(&other.0))
    }

    /// Characteristic invariants `(I1, I2)` for fields in the catalog class.
    fn invariants(&self) -> PyResult<(PyExpr, PyExpr)> {
        let p = invariants::characteristic_invariants(&self.0).map_err(err)?;
        Ok((PyExpr(p.first), PyExpr(p.second)))
    }

    fn is_invariant(&self, i: &PyExpr) -> bool {
        invariants::verify_invariant(&self.0, &i.0)
    }
}

fn fields(v: Vec<approxsym::VectorField>) -> Vec<PyVectorField> {
    v.into_iter().map(PyVectorField).collect()
}

#[pyclass(name = "PerturbedPDE", frozen, module = "approxsym_py")]
pub struct PyPerturbedPDE(pub detsolve::PerturbedPDE);

fn ansatz(degree: Option<u32>) -> Ansatz {
    degree.map_or_else(Ansatz::default, Ansatz::with_degree)
}

#[pymethods]
impl PyPerturbedPDE {
    /// `F0 + eps*F1 = 0`, with `F0` linear in `u_t`.
    #[new]
    fn new(f0: &str, f1: &str) -> PyResult<Self> {
        detsolve::PerturbedPDE::parse(f0, f1).map(PyPerturbedPDE).map_err(err)
    }

    #[staticmethod]
    fn harry_dym() -> Self {
        PyPerturbedPDE(approxsym::harry_dym::pde())
    }

    fn __repr__(&self) -> String {
        format!("PerturbedPDE('{}', '{}')", self.0.f0, self.0.f1)
    }

    #[pyo3(signature = (degree=None))]
    fn exact_symmetries(&self, degree: Option<u32>) -> PyResult<Vec<PyVectorField>> {
        Ok(fields(detsolve::solve_exact(&self.0, &ansatz(degree)).map_err(err)?.fields()))
    }

    /// `(basis, stable)`: the approximate generators and the stability of each exact one.
    #[pyo3(signature = (degree=None))]
    fn approximate_symmetries(&self, degree: Option<u32>) -> PyResult<(Vec<PyVectorField>, Vec<bool>)> {
        let a = detsolve::approximate_symmetries(&self.0, &ansatz(degree)).map_err(err)?;
        Ok((fields(a.basis.into_iter().map(|g| g.field).collect()), a.stable))
    }

    fn exact_residual(&self, x: &PyVectorField) -> PyResult<PyExpr> {
        detsolve::exact_residual(&x.0, &self.0).map(PyExpr).map_err(err)
    }

    fn approximate_residual(&self, x: &PyVectorField) -> PyResult<(PyExpr, PyExpr)> {
        let r = detsolve::approximate_residual(&x.0, &self.0).map_err(err)?;
        Ok((PyExpr(r.order0), PyExpr(r.order1)))
    }

    fn auxiliary_h(&self, x0: &PyVectorField) -> PyResult<PyExpr> {
        detsolve::auxiliary_h(&x0.0, &self.0).map(PyExpr).map_err(err)
    }
}

#[pyclass(name = "LieAlgebra", frozen, module = "approxsym_py")]
pub struct PyLieAlgebra(pub LieAlgebraTable);

#[pymethods]
impl PyLieAlgebra {
    #[new]
    fn new(basis: Vec<PyVectorField>) -> PyResult<Self> {
        let b: Vec<_> = basis.into_iter().map(|f| f.0).collect();
        LieAlgebraTable::structure_constants(&b).map(PyLieAlgebra).map_err(err)
    }

    #[staticmethod]
    fn harry_dym() -> PyResult<Self> {
        LieAlgebraTable::structure_constants(&approxsym::harry_dym::algebra_basis()).map(PyLieAlgebra).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `[v_i, v_j]` with zero-based indices, written in the basis labels.
    fn bracket(&self, i: usize, j: usize) -> PyResult<String> {
        let n = self.0.dim();
        if i >= n || j >= n {
            return Err(err(approxsym::Error::Dimension { expected: n, got: i.max(j) + 1 }));
        }
        Ok(self.0.entry_string(i, j))
    }

    fn derived_series(&self) -> Vec<String> {
        liealg::derived_series(&self.0).iter().map(|s| s.describe(&self.0.labels)).collect()
    }

    fn radical(&self) -> PyResult<String> {
        Ok(liealg::radical(&self.0).map_err(err)?.describe(&self.0.labels))
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Classifies a vector on `v1..v10` into the one-dimensional optimal system.
/// Entries may be ints, `Fraction`s or strings like `"2/3"`.
#[pyfunction]
fn classify(vector: Vec<Bound<'_, PyAny>>) -> PyResult<(usize, Vec<String>, Vec<String>)> {
    let parts = vector.iter().map(|v| Ok(v.str()?.to_string())).collect::<PyResult<Vec<_>>>()?;
    let w = parse_vector(&parts.join(",")).map_err(err)?;
    let norm = Normalizer::harry_dym().map_err(err)?;
    let (rep, trace) = norm.normalize(&w).map_err(err)?;
    Ok((rep.family, rep.coords.iter().map(fmt_rat).collect(), trace.steps.iter().map(|s| s.to_string()).collect()))
}

#[pymodule]
fn approxsym_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExpr>()?;
    m.add_class::<PyVectorField>()?;
    m.add_class::<PyPerturbedPDE>()?;
    m.add_class::<PyLieAlgebra>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    Ok(())
}
