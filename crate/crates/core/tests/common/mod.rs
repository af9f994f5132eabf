//! Randomized property suites shared by `properties` and `acceptance`.
#![allow(dead_code)]

use approxsym::jet::{apply_prolonged, prolong, VectorField};
use approxsym::symbolic::rat::frac;
use approxsym::symbolic::{normalize, parse, ExprTree, Symbol};
use approxsym::{ex, Expr};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 1000;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[0; 32]))
}

fn sym(name: &str) -> Symbol {
    ex(name).as_symbol().expect("symbol literal").clone()
}

fn num() -> impl Strategy<Value = ExprTree> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ExprTree::Num(frac(n, d)))
}

fn leaf(names: &'static [&'static str]) -> impl Strategy<Value = ExprTree> {
    prop_oneof![num(), proptest::sample::select(names).prop_map(|n| ExprTree::Sym(sym(n)))]
}

/// Rational-class trees: sums, products and integer powers.
fn rational_tree(names: &'static [&'static str], depth: u32, min_pow: i64) -> BoxedStrategy<ExprTree> {
    leaf(names)
        .boxed()
        .prop_recursive(depth, 24, 3, move |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..=3).prop_map(ExprTree::Sum),
                prop::collection::vec(inner.clone(), 2..=3).prop_map(ExprTree::Product),
                (inner, min_pow..=3).prop_map(|(b, k)| ExprTree::Pow(Box::new(b), frac(k, 1))),
            ]
        })
        .boxed()
}

/// Trees with opaque kernels and fractional powers.
fn kernel_tree() -> BoxedStrategy<ExprTree> {
    leaf(&["x", "t", "u", "a", "eps", "u_x"])
        .boxed()
        .prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..=3).prop_map(ExprTree::Sum),
                prop::collection::vec(inner.clone(), 2..=3).prop_map(ExprTree::Product),
                (inner.clone(), -2i64..=3, 1i64..=2).prop_map(|(b, n, d)| ExprTree::Pow(Box::new(b), frac(n, d))),
                inner.clone().prop_map(|a| ExprTree::Exp(Box::new(a))),
                inner.clone().prop_map(|a| ExprTree::Ln(Box::new(a))),
                inner.clone().prop_map(|a| ExprTree::Arctan(Box::new(a))),
                inner.prop_map(|a| ExprTree::Sqrt(Box::new(a))),
            ]
        })
        .boxed()
}

const PLAIN: &[&str] = &["x", "t", "u", "a", "u_x"];
const JET2: &[&str] = &["x", "t", "u", "u_x", "u_t", "u_xx", "u_xt", "u_tt"];

fn expr_from(tree: &ExprTree) -> Result<Expr, TestCaseError> {
    normalize(tree).map_err(|_| TestCaseError::reject("undefined"))
}

fn outcome(r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

pub fn normalize_idempotent(cases: u32) -> Result<(), String> {
    outcome(runner(cases).run(&kernel_tree(), |t| {
        let e = expr_from(&t)?;
        prop_assert_eq!(e.normalize(), e.clone());
        prop_assert_eq!(e.normalize().normalize(), e);
        Ok(())
    }))
}

pub fn parser_round_trip(cases: u32) -> Result<(), String> {
    outcome(runner(cases).run(&kernel_tree(), |t| {
        let e = expr_from(&t)?;
        let again = parse(&e.to_string()).map_err(|err| TestCaseError::fail(format!("{e}: {err}")))?;
        prop_assert_eq!(again, e);
        Ok(())
    }))
}

pub fn product_rule(cases: u32) -> Result<(), String> {
    let s = (rational_tree(PLAIN, 3, -2), rational_tree(PLAIN, 3, -2), proptest::sample::select(PLAIN));
    outcome(runner(cases).run(&s, |(a, b, v)| {
        let (a, b) = (expr_from(&a)?, expr_from(&b)?);
        let v = sym(v);
        let lhs = (&a * &b).diff(&v);
        let rhs = &(&a.diff(&v) * &b) + &(&a * &b.diff(&v));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))
}

/// `p0 + eps*p1 + eps^2*p2` with eps-free rational-class parts.
fn eps_poly() -> impl Strategy<Value = ExprTree> {
    prop::collection::vec(rational_tree(PLAIN, 2, -1), 3).prop_map(|p| {
        let eps = ExprTree::Sym(Symbol::eps());
        let terms = p
            .into_iter()
            .enumerate()
            .map(|(k, c)| ExprTree::Product(vec![c, ExprTree::Pow(Box::new(eps.clone()), frac(k as i64, 1))]))
            .collect();
        ExprTree::Sum(terms)
    })
}

pub fn truncation_homomorphism(cases: u32) -> Result<(), String> {
    outcome(runner(cases).run(&(eps_poly(), eps_poly()), |(a, b)| {
        let (a, b) = (expr_from(&a)?, expr_from(&b)?);
        let ta = a.eps_truncate().map_err(|e| TestCaseError::fail(e.to_string()))?;
        let tb = b.eps_truncate().map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!((&a * &b).eps_truncate().unwrap(), ta.mul(&tb));
        prop_assert_eq!((&a + &b).eps_truncate().unwrap(), ta.add(&tb));
        prop_assert!(!ta.order0.depends_on(&Symbol::eps()) && !ta.order1.depends_on(&Symbol::eps()));
        Ok(())
    }))
}

/// Polynomial of degree <= 2 in x, t, u with small integer coefficients.
fn quadratic() -> impl Strategy<Value = Expr> {
    const MONOMIALS: [&str; 10] = ["1", "x", "t", "u", "x^2", "x*t", "x*u", "t^2", "t*u", "u^2"];
    prop::collection::vec(-2i64..=2, 10).prop_map(|c| {
        c.iter().zip(MONOMIALS).fold(Expr::zero(), |acc, (k, m)| &acc + &(&Expr::int(*k) * &ex(m)))
    })
}

fn field() -> impl Strategy<Value = VectorField> {
    (quadratic(), quadratic(), quadratic()).prop_map(|(xi, tau, phi)| VectorField { xi, tau, phi })
}

pub fn bracket_compatibility(cases: u32) -> Result<(), String> {
    outcome(runner(cases).run(&(field(), field(), rational_tree(JET2, 2, -1)), |(x, y, f)| {
        let f = expr_from(&f)?;
        let run = |r: approxsym::Result<Expr>| r.map_err(|e| TestCaseError::fail(e.to_string()));
        // F has order <= 2, so one application raises it to at most 3
        let (px, py) = (prolong(&x, 3).unwrap(), prolong(&y, 3).unwrap());
        let lhs = run(apply_prolonged(&prolong(&x.bracket(&y), 2).unwrap(), &f))?;
        let xy = run(apply_prolonged(&px, &run(apply_prolonged(&py, &f))?))?;
        let yx = run(apply_prolonged(&py, &run(apply_prolonged(&px, &f))?))?;
        prop_assert_eq!(lhs, &xy - &yx);
        Ok(())
    }))
}



