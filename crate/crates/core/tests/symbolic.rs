use std::collections::BTreeMap;

use approxsym::symbolic::{ex, parse, probe_zero, Expr, Symbol, SymbolicError, ZeroProbe};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn s(name: &str) -> Symbol {
    Symbol::from_name(name)
}

#[test]
fn normalize_examples() {
    assert_eq!(ex("x + x"), ex("2*x"));
    assert_eq!(ex("x*(1/x)"), Expr::one());
    assert_eq!(ex("u + eps*u - u"), ex("eps*u"));
    assert_eq!(ex("(x^2 - 1)/(x - 1)"), ex("x + 1"));
    assert_eq!(ex("(a*x + a*y)/(b*x + b*y)"), ex("a/b"));
}

#[test]
fn diff_examples() {
    assert_eq!(ex("x^2*u").diff(&s("x")), ex("2*x*u"));
    assert_eq!(ex("ln(x)").diff(&s("x")), ex("1/x"));
    let e = ex("arctan(x/sqrt(c*eps + a))");
    let want = ex("(1/sqrt(c*eps + a))/(1 + x^2/(c*eps + a))");
    assert_eq!(e.diff(&s("x")), want);
    assert!(ex("u_x*u").diff(&s("u_xx")).is_zero());
}

#[test]
fn substitute_examples() {
    let on_shell = BTreeMap::from([(s("u_t"), ex("-1/2*u^3*u_xxx"))]);
    assert!(ex("u_t + 1/2*u^3*u_xxx").substitute(&on_shell).unwrap().is_zero());
    let zero_a = BTreeMap::from([(s("a"), Expr::zero())]);
    assert!(ex("x*a").substitute(&zero_a).unwrap().is_zero());
    let h = ex("u_x*(A5 - A2) + A3*(u - x*u_x)");
    let b = BTreeMap::from([(s("A3"), Expr::zero()), (s("A5"), ex("A2"))]);
    assert!(h.substitute(&b).unwrap().is_zero());
    let bad = ex("1/(x - 1)").substitute(&BTreeMap::from([(s("x"), Expr::one())]));
    assert_eq!(bad, Err(SymbolicError::DivisionByZero));
}

#[test]
fn truncation_examples() {
    let t = ex("u + eps*u_x + eps^2*u_xx").eps_truncate().unwrap();
    assert_eq!((t.order0, t.order1), (ex("u"), ex("u_x")));
    assert!(ex("eps*(eps*x)").eps_truncate().unwrap().is_zero());
    let t = ex("(1 + eps)*(1 - eps)").eps_truncate().unwrap();
    assert_eq!((t.order0, t.order1), (Expr::one(), Expr::zero()));
    assert!(matches!(ex("1/(1 + eps)").eps_truncate(), Err(SymbolicError::NotTruncatable(_))));
    assert!(matches!(ex("exp(eps*x)").eps_truncate(), Err(SymbolicError::NotTruncatable(_))));
}

#[test]
fn zero_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert!(ex("(x + 1)^2 - x^2 - 2*x - 1").is_zero());
    assert!((ex("exp(x)") - ex("exp(x)")).is_zero());
    match probe_zero(&ex("u_x*(A5 - A2)"), &mut rng, 20) {
        ZeroProbe::NonZero { witness, value } => {
            assert_eq!(ex("u_x*(A5 - A2)").eval(&witness).unwrap(), Some(value));
        }
        other => panic!("expected a witness, got {other:?}"),
    }
}

#[test]
fn powers_and_radicals() {
    assert_eq!(ex("(t^(1/3))^3"), ex("t"));
    assert_eq!(ex("sqrt(4)"), ex("2"));
    assert_eq!(ex("sqrt(x^2 + 1)^2"), ex("x^2 + 1"));
    assert_eq!(ex("sqrt(c*eps + a)*sqrt(c*eps + a)"), ex("c*eps + a"));
    assert_eq!(ex("u*t^(1/3)").diff(&s("t")), ex("1/3*u*t^(-2/3)"));
    assert_eq!(ex("sqrt(2)*sqrt(2)"), ex("2"));
    assert_eq!(ex("exp(0)"), Expr::one());
    assert_eq!(ex("ln(1)"), Expr::zero());
    assert!(parse("ln(0)").is_err());
}

#[test]
fn print_round_trip() {
    for src in [
        "x + x",
        "-x/(y + 1)",
        "3/2*u^3*u_xxx - eps*u_x",
        "u/(x^2 + c*eps + a)",
        "(x^2 + c*eps + a)^(-1/3)*exp(arctan(x/sqrt(a)))",
        "-ln(a*x - 1)/(a*eps) + t",
        "2^(1/3)*x",
        "(-2)^(1/3) - 1/(x*y)",
        "x^(5/3)",
    ] {
        let e = ex(src);
        let printed = e.to_string();
        assert_eq!(parse(&printed).unwrap(), e, "{src} printed as {printed}");
    }
}

#[test]
fn parse_errors_carry_position() {
    match parse("x +\n  * y") {
        Err(SymbolicError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse("foo(x)"), Err(SymbolicError::Parse { column: 1, .. })));
    assert!(parse("x $ y").is_err());
}
