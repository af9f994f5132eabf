"""Smoke test for the approxsym_py extension module."""

from fractions import Fraction

import approxsym_py as ap

pde = ap.PerturbedPDE.harry_dym()
exact = pde.exact_symmetries()
assert [str(f) for f in exact] == ["d_x", "d_t", "x*d_x + u*d_u", "3*t*d_t - u*d_u", "x^2*d_x + 2*x*u*d_u"]
assert all(pde.exact_residual(f).is_zero() for f in exact)

basis, stable = pde.approximate_symmetries()
assert len(basis) == 10 and all(stable)
for v in basis:
    r0, r1 = pde.approximate_residual(v)
    assert r0.is_zero() and r1.is_zero(), v

g = ap.LieAlgebra.harry_dym()
assert g.dim == 10
assert g.bracket(1, 3) == "3*v2"
assert g.radical() == "span{v2, v4, v6, v7, v8, v9, v10}"

family, rep, trace = ap.classify([0, 0, 0, 0, 0, 0, 0, 1, 0, 0])
assert family == 1 and rep[7] == "1", (family, rep)
family, _, _ = ap.classify([1, Fraction(2, 3), 0, 0, 0, 0, 0, "1/2", 0, 0])
assert 1 <= family <= 17

i1, i2 = ap.VectorField("x", "0", "u").invariants()
assert (str(i1), str(i2)) == ("t", "u/x")

try:
    ap.classify([0] * 10)
except ValueError as e:
    assert "zero vector" in str(e)
else:
    raise AssertionError("zero vector accepted")

print("smoke test ok")
