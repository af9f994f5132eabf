//! The perturbed Harry Dym equation `u_t + 1/2*u^3*u_xxx + eps*u_x = 0` and the tables
//! printed for it in the literature, transcribed verbatim for comparison.
//!
//! Printed entries are combinations of the basis symbols `v1..v10` written in the
//! expression grammar; see [`combination`] for how they are read back.

use crate::detsolve::{undeformed_basis, PerturbedPDE};
use crate::jet::VectorField;
use crate::symbolic::{parse, Expr, Rat, Symbol};
use crate::{Error, Result};

pub const F0: &str = "u_t + 1/2*u^3*u_xxx";
pub const F1: &str = "u_x";

pub fn pde() -> PerturbedPDE {
    PerturbedPDE::parse(F0, F1).expect("preset equation")
}

/// Residual-verified exact generators, in solver order.
pub fn exact_basis() -> Vec<VectorField> {
    vec![
        VectorField::parse("1", "0", "0"),
        VectorField::parse("0", "1", "0"),
        VectorField::parse("x", "0", "u"),
        VectorField::parse("0", "3*t", "-u"),
        VectorField::parse("x^2", "0", "2*x*u"),
    ]
}

/// `v1..v10`: the exact generators followed by their eps-multiples.
pub fn algebra_basis() -> Vec<VectorField> {
    undeformed_basis(&exact_basis())
}

/// Exact generators as printed, with the quadratic one reading `2x^2 d_x + xu d_u`.
pub fn printed_exact_basis() -> Vec<VectorField> {
    let mut b = exact_basis();
    b[4] = VectorField::parse("2*x^2", "0", "x*u");
    b
}

/// Printed general exact generator, with the `phi` coefficient read as `(A2 - A5/3 + A3*x)*u`
/// (the printed `1/(3A5)` is not linear in the constants).
pub const PRINTED_GENERIC_XI: &str = "A1 + A2*x + A3/2*x^2";
pub const PRINTED_GENERIC_TAU: &str = "A4 + 3*A5*t";
pub const PRINTED_GENERIC_PHI: &str = "(A2 - A5/3 + A3*x)*u";

/// Printed auxiliary function of the general exact generator.
pub const PRINTED_H: &str = "u_x*(A5 - A2) + A3*(u - x*u_x)";

/// Printed general deformation `(xi1, tau1, phi1)`.
pub const PRINTED_DEFORMATION: [&str; 3] = [
    "(A5 - A2)*t - A3*x*t + C4*x - C5 + C3/2*x^2",
    "C1*t + C2",
    "(-A3*t + C4 + C3*x + C1/3)*u",
];

/// Generic exact generator `A1 v1 + A4 v2 + A2 v3 + A5/3 v4 + A3/2 v5` in the derived basis.
pub fn generic_exact_generator() -> VectorField {
    let b = exact_basis();
    let c = ["A1", "A4", "A2", "A5/3", "A3/2"];
    b.iter().zip(c).fold(VectorField::zero(), |acc, (v, k)| acc.add(&v.scale(&crate::ex(k))))
}

/// Printed commutator table; entry `(i, j)` is `[v_i, v_j]`.
pub const PRINTED_COMMUTATORS: [[&str; 10]; 10] = [
    ["0", "0", "v1", "0", "2*v3", "0", "0", "v6", "0", "2*v8"],
    ["0", "0", "0", "12*v2", "0", "0", "0", "0", "3*v7", "0"],
    ["-v1", "0", "0", "0", "v5", "-v6", "0", "0", "0", "v10"],
    ["0", "-12*v2", "0", "0", "0", "0", "-3*v7", "0", "0", "0"],
    ["-2*v3", "0", "-v5", "0", "0", "-2*v8", "0", "-v10", "0", "0"],
    ["0", "0", "v6", "0", "2*v8", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "3*v7", "0", "0", "0", "0", "0", "0"],
    ["-v6", "0", "0", "0", "v10", "0", "0", "0", "0", "0"],
    ["0", "-3*v7", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["-2*v8", "0", "-v10", "0", "0", "0", "0", "0", "0", "0"],
];

/// Printed adjoint table; entry `(i, j)` is `Ad(exp(mu v_i)) v_j`.
pub const PRINTED_ADJOINT: [[&str; 10]; 10] = [
    ["v1", "v2", "v3 - mu*v1", "v4", "v5 - 2*mu*v3 + mu^2*v1", "v6", "v7", "v8 - mu*v6", "v9", "v10 - 2*mu*v8 + mu^2*v6"],
    ["v1", "v2", "v3", "v4 - 12*mu*v2", "v5", "v6", "v7", "v8", "v9 - 3*mu*v7", "v10"],
    ["exp(mu)*v1", "v2", "v3", "v4", "exp(-mu)*v5", "exp(mu)*v6", "v7", "v8", "v9", "exp(-mu)*v10"],
    ["v1", "exp(12*mu)*v2", "v3", "v4", "v5", "v6", "exp(3*mu)*v7", "v8", "v9", "v10"],
    ["v1 + 2*mu*v3 + mu^2*v5", "v2", "v3 + mu*v5", "v4", "v5", "v6 + 2*mu*v8 + mu^2*v10", "v7", "v8 + mu + v10", "v9", "v10"],
    ["v1", "v2", "v3 - mu*v6", "v4", "v5 - 2*mu*v8", "v6", "v7", "v8", "v9", "v10"],
    ["v1", "v2", "v3", "v4 - 3*mu*v7", "v5", "v6", "v7", "v8", "v9", "v10"],
    ["v1 + mu*v6", "v2", "v3", "v4", "v5 - mu*v10", "v6", "v7", "v8", "v9", "v10"],
    ["v1", "v2 + 3*mu*v7", "v3", "v4", "v5", "v6", "v7", "v8", "v9", "v10"],
    ["v1 + 2*mu*v8", "v2", "v3 + mu*v10", "v4", "v5", "v6", "v7", "v8", "v9", "v10"],
];

/// Printed one-dimensional optimal system, `v^1..v^16`.
pub const PRINTED_OPTIMAL: [&str; 16] = [
    "v8",
    "v7 + a*v8",
    "v6 + v8",
    "v6 - v7 + v8",
    "v6 + v7 + v8",
    "v2 + a*v8",
    "v2 - v6 + a*v8",
    "v2 + v6 + a*v8",
    "v1 + a*v2 + b*v7",
    "a*v1 + b*v2 + v5 + c*v6 + d*v7",
    "a*v1 + b*v2 + v3 + c*v5 + d*v7 + e*v8",
    "a*v1 + b*v3 + v4 + c*v5 + d*v6 + e*v8",
    "a*v1 + b*v3 + c*v4 + d*v5 + e*v6 + f*v8 + v9",
    "a*v1 - v2 + b*v3 + c*v4 + d*v5 + e*v6 + f*v8 + v9",
    "a*v1 + v2 + b*v3 + c*v4 + d*v5 + e*v6 + f*v8 + v9",
    "a*v1 + v2 + b*v3 + c*v4 + d*v5 + e*v6 + f*v8 + v9",
];

/// Printed invariant table: operator, first invariant, second invariant.
pub const PRINTED_INVARIANTS: [[&str; 3]; 14] = [
    ["v1", "t", "u"],
    ["v2", "x", "u"],
    ["v3", "t", "u/x"],
    ["v4", "x", "u*t^(1/3)"],
    ["v5", "t", "u/x^2"],
    ["v7 + a*v8", "-ln(x)/a + t", "u/x"],
    ["v6 + v8", "t", "u/(x + 1)"],
    ["v6 - v7 + v8", "ln(x + 1) + t", "u/(x + 1)"],
    ["v6 + v7 + v8", "-ln(x + 1) + t", "u/(x + 1)"],
    ["v2 + a*v8", "-ln(x)/(a*eps) + t", "u/x"],
    ["v2 - v6 + a*v8", "-ln(a*x - 1)/(a*eps) + t", "u/(a*x - 1)"],
    ["v2 + v6 + a*v8", "-ln(a*x + 1)/(a*eps) + t", "u/(a*x + 1)"],
    ["v1 + a*v2 + b*v7", "-b*eps*x - a*eps + t", "u"],
    [
        "a*v1 + b*v2 + v5 + c*v6 + d*v7",
        "(-d*eps - b)/sqrt(c*eps + a)*arctan(x/sqrt(c*eps + a)) + t",
        "u/(x^2 + c*eps + a)",
    ],
];

/// Printed invariant pair for `v7 + a*v8` given in the text.
pub const PRINTED_TEXT_PAIR: [&str; 3] = ["v7 + a*v8", "u/x", "(ln(x) - a*t)/a"];

/// Printed isomorphism `{v1, v3, v5} -> {w1, -w2, -w3}` onto the reference 3-dimensional algebra.
pub const PRINTED_S_MAP: [i64; 3] = [1, -1, -1];

/// Printed spans, as 1-based basis indices.
pub const PRINTED_DERIVED_1: [usize; 8] = [1, 2, 3, 5, 6, 7, 8, 10];
pub const PRINTED_DERIVED_2: [usize; 6] = [1, 3, 5, 6, 8, 10];
pub const PRINTED_RADICAL: [usize; 7] = [2, 4, 6, 7, 8, 9, 10];
pub const PRINTED_LEVI: [usize; 3] = [1, 3, 5];
pub const PRINTED_RADICAL_1: [usize; 7] = [2, 4, 6, 7, 8, 9, 10];
pub const PRINTED_RADICAL_2: [usize; 2] = [2, 7];

pub fn basis_symbol(i: usize) -> Symbol {
    Symbol::param(&format!("v{}", i + 1))
}

/// Reads `sum c_k v_k` into coefficients `c_k` (expressions free of `v`), plus the
/// leftover part not attached to any basis symbol.
pub fn combination(src: &str, n: usize) -> Result<(Vec<Expr>, Expr)> {
    let e = parse(src)?;
    let zero: std::collections::BTreeMap<Symbol, Expr> = (0..n).map(|i| (basis_symbol(i), Expr::zero())).collect();
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let c = e.diff(&basis_symbol(i));
        if (0..n).any(|j| c.depends_on(&basis_symbol(j))) {
            return Err(Error::Internal(format!("{src} is not linear in the basis")));
        }
        coeffs.push(c);
    }
    let rest = e.substitute(&zero)?;
    Ok((coeffs, rest))
}

/// Rational coordinates of a parameter-free combination.
pub fn rational_combination(src: &str, n: usize) -> Result<Vec<Rat>> {
    let (c, rest) = combination(src, n)?;
    if !rest.is_zero() {
        return Err(Error::Internal(format!("{src} has a term outside the basis")));
    }
    c.iter()
        .map(|e| e.as_rat().ok_or_else(|| Error::Internal(format!("{src} has a non-rational coefficient"))))
        .collect()
}

/// Field `sum c_k v_k` for symbolic coefficients.
pub fn field_of(coeffs: &[Expr], basis: &[VectorField]) -> VectorField {
    coeffs
        .iter()
        .zip(basis)
        .filter(|(c, _)| !c.is_zero())
        .fold(VectorField::zero(), |acc, (c, v)| acc.add(&v.scale(c)))
}

/// Field of a printed operator such as `v7 + a*v8` in the algebra basis.
pub fn operator(src: &str) -> Result<VectorField> {
    let basis = algebra_basis();
    let (c, rest) = combination(src, basis.len())?;
    if !rest.is_zero() {
        return Err(Error::Internal(format!("{src} has a term outside the basis")));
    }
    Ok(field_of(&c, &basis))
}
