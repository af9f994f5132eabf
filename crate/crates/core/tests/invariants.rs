use approxsym::harry_dym::{self, operator};
use approxsym::invariants::*;
use approxsym::{ex, Error};

#[test]
fn scaling_generator() {
    let v4 = operator("v4").unwrap();
    assert!(verify_invariant(&v4, &ex("u*t^(1/3)")));
    assert!(verify_invariant(&v4, &ex("x")));
    assert!(!verify_invariant(&v4, &ex("u*t")));
    let p = characteristic_invariants(&v4).unwrap();
    assert_eq!(p.first, ex("x"));
    assert_eq!(p.second, ex("u*t^(1/3)"));
}

#[test]
fn simple_rows() {
    let p = characteristic_invariants(&operator("v3").unwrap()).unwrap();
    assert_eq!((p.first, p.second), (ex("t"), ex("u/x")));
    let p = characteristic_invariants(&operator("v2 - v6 + a*v8").unwrap()).unwrap();
    assert_eq!(p.first, ex("t - ln(a*x - 1)/(a*eps)"));
    assert_eq!(p.second, ex("u/(a*x - 1)"));
}

#[test]
fn text_pair() {
    let [op, a, b] = harry_dym::PRINTED_TEXT_PAIR;
    let x = operator(op).unwrap();
    assert!(verify_invariant(&x, &ex(a)));
    assert!(verify_invariant(&x, &ex(b)));
    let p = characteristic_invariants(&x).unwrap();
    assert!(independent(&p.first, &p.second, 5, 0));
}

#[test]
fn arctan_row() {
    let x = operator("a*v1 + b*v2 + v5 + c*v6 + d*v7").unwrap();
    let p = characteristic_invariants(&x).unwrap();
    assert!(p.first.to_string().contains("arctan"), "{p:?}");
    assert!(verify_invariant(&x, &ex(harry_dym::PRINTED_INVARIANTS[13][1])));
    assert!(verify_invariant(&x, &ex(harry_dym::PRINTED_INVARIANTS[13][2])));
}

#[test]
fn printed_table() {
    let rows = harry_dym_table().unwrap();
    assert_eq!(rows.len(), 14);
    for (k, r) in rows.iter().enumerate() {
        assert!(r.derived_ok && r.derived_independent, "row {k}: {:?}", r.derived_error);
        assert_eq!(r.printed_pass(), k != 12, "row {k}");
    }
    // the time invariant of v1 + a v2 + b v7 is t - (a + b eps) x
    let x = operator("v1 + a*v2 + b*v7").unwrap();
    assert!(verify_invariant(&x, &ex("t - (a + b*eps)*x")));
    assert_eq!(rows[12].printed_ok, Some((false, true)));
    let text = table_text(&rows);
    assert_eq!(text.matches("FAIL").count(), 1);
    assert!(table_latex(&rows).starts_with("\\begin{tabular}"));
}

#[test]
fn dependent_pair_detected() {
    assert!(!independent(&ex("x*t"), &ex("x^2*t^2 + 1"), 5, 0));
    assert!(independent(&ex("x"), &ex("u*t"), 5, 0));
}

#[test]
fn relaxed_check() {
    let x = operator("v2 + a*v8").unwrap();
    // X(x - a*eps*x*t) = -a^2*eps^2*x*t
    let i = ex("x - a*eps*x*t");
    assert!(!verify_invariant(&x, &i));
    assert!(verify_invariant_truncated(&x, &i).unwrap());
    assert!(!verify_invariant_truncated(&x, &ex("x")).unwrap());
}

#[test]
fn outside_catalog() {
    let x = operator("v4 + v5").unwrap();
    assert!(matches!(characteristic_invariants(&x), Ok(_) | Err(Error::NotInCatalog(_))));
    let y = approxsym::jet::VectorField { xi: ex("u"), tau: ex("0"), phi: ex("0") };
    assert!(matches!(characteristic_invariants(&y), Err(Error::NotInCatalog(_))));
}

#[test]
fn rescaled_generator_has_the_same_invariants() {
    for row in harry_dym_table().unwrap() {
        let x = harry_dym::operator(&row.operator).unwrap();
        let pair = row.derived.expect("derived pair");
        for q in ["2", "-1/3", "7/5"] {
            let qx = x.scale(&ex(q));
            assert!(verify_invariant(&qx, &pair.first) && verify_invariant(&qx, &pair.second), "{q}*({})", row.operator);
        }
    }
}
