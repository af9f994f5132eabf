use approxsym_py::{PyExpr, PyLieAlgebra, PyVectorField};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "approxsym_py").unwrap();
        m.add_class::<PyExpr>().unwrap();
        m.add_class::<PyVectorField>().unwrap();
        m.add_class::<PyLieAlgebra>().unwrap();
        let globals = PyDict::new(py);
        globals.set_item("ap", m).unwrap();
        let src = std::ffi::CString::new(code).unwrap();
        py.run(&src, Some(&globals), None).unwrap_or_else(|e| panic!("{e}"));
    });
}

#[test]
fn expressions_and_fields() {
    run(r#"
e = ap.Expr("x + eps*x*t")
assert str(e) == "x + eps*x*t", str(e)
assert e.eps_truncate() == (ap.Expr("x"), ap.Expr("x*t"))
v = ap.VectorField("x^2", "0", "2*x*u")
w = ap.VectorField("1", "0", "0")
assert str(w.bracket(v)) == "2*x*d_x + 2*u*d_u"
assert v.apply(ap.Expr("u/x^2")).is_zero()
assert v.is_invariant(ap.Expr("u/x^2"))
"#);
}

#[test]
fn algebra_of_fields() {
    run(r#"
g = ap.LieAlgebra([ap.VectorField("1", "0", "0"), ap.VectorField("x", "0", "u"), ap.VectorField("x^2", "0", "2*x*u")])
assert g.dim == 3
assert g.bracket(0, 2) == "2*v2", g.bracket(0, 2)
assert g.radical() == "{0}", g.radical()
"#);
}
