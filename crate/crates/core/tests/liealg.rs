use approxsym::harry_dym::{self, algebra_basis};
use approxsym::liealg::*;
use approxsym::linalg::Matrix;
use approxsym::symbolic::rat::rat;
use approxsym::{Error, Rat, VectorField};

fn hd() -> LieAlgebraTable {
    LieAlgebraTable::structure_constants(&algebra_basis()).unwrap()
}

fn units(idx: &[usize]) -> Subspace {
    Subspace::units(10, idx.iter().map(|i| i - 1))
}

fn dims(s: &[Subspace]) -> Vec<usize> {
    s.iter().map(|x| x.dim()).collect()
}

#[test]
fn commutator_examples() {
    let v = algebra_basis();
    assert_eq!(commutator(&v[0], &v[2]).unwrap(), v[0]);
    assert!(commutator(&v[5], &v[7]).unwrap().is_zero());
    assert_eq!(commutator(&v[1], &v[3]).unwrap(), v[1].scale(&approxsym::ex("3")));
    // eps^2 terms drop
    let a = VectorField::parse("eps*x", "0", "0");
    assert!(commutator(&a, &VectorField::parse("eps*x^2", "0", "0")).unwrap().is_zero());
}

#[test]
fn table_matches_printed_except_one_pair() {
    let g = hd();
    assert!(g.is_antisymmetric());
    assert!(g.satisfies_jacobi());
    let d = diff_table(&g, &harry_dym::PRINTED_COMMUTATORS).unwrap();
    let at: Vec<(usize, usize)> = d.iter().map(|e| (e.row, e.col)).collect();
    assert_eq!(at, vec![(1, 3), (3, 1)]);
    assert_eq!(d[0].derived, "3*v2");
    assert_eq!(d[0].printed, "12*v2");
}

#[test]
fn small_subalgebras() {
    let v = algebra_basis();
    let s = LieAlgebraTable::structure_constants(&[v[0].clone(), v[2].clone(), v[4].clone()]).unwrap();
    assert_eq!(s.entry_string(0, 1), "v1");
    assert_eq!(s.entry_string(0, 2), "2*v2");
    assert_eq!(s.entry_string(1, 2), "v3");
    assert_eq!(dims(&derived_series(&s)), vec![3, 3]);
    assert_ne!(s.killing_form().det(), rat(0));
    assert!(radical(&s).unwrap().is_zero());

    let t = LieAlgebraTable::structure_constants(&[v[1].clone(), v[3].clone()]).unwrap();
    assert_eq!(radical(&t).unwrap(), Subspace::full(2));
    assert_eq!(dims(&solvable_chain(&t, &Subspace::full(2)).unwrap()), vec![2, 1, 0]);
}

#[test]
fn derived_series_and_radical() {
    let g = hd();
    let s = derived_series(&g);
    assert_eq!(dims(&s), vec![10, 8, 6, 6]);
    assert_eq!(s[1], units(&harry_dym::PRINTED_DERIVED_1));
    assert_eq!(s[2], units(&harry_dym::PRINTED_DERIVED_2));
    let r = radical(&g).unwrap();
    assert_eq!(r, units(&harry_dym::PRINTED_RADICAL));
    assert!(is_ideal(&g, &r));

    let chain = solvable_chain(&g, &r).unwrap();
    // printed chain counts r itself as the first term
    assert_eq!(dims(&chain), vec![7, 2, 0]);
    assert_eq!(chain[0], units(&harry_dym::PRINTED_RADICAL_1));
    assert_eq!(chain[1], units(&harry_dym::PRINTED_RADICAL_2));
}

#[test]
fn killing_form_facts() {
    let g = hd();
    let k = g.killing_form();
    assert_eq!(k, k.transpose());
    assert!(k.row(6).iter().all(|x| *x == rat(0)));
    let levi = units(&harry_dym::PRINTED_LEVI);
    let rep = levi_check(&g, &levi).unwrap();
    assert!(rep.all(), "{rep:?}");
    assert_eq!(radical(&g).unwrap().dim() + levi.dim(), g.dim());

    let ab = levi_check(&g, &units(&[1, 2])).unwrap();
    assert!(ab.subalgebra && !ab.nondegenerate);
    let b = levi_check(&g, &units(&[1, 3])).unwrap();
    assert!(b.subalgebra && !b.nondegenerate);
    assert!(solvable_chain(&g, &units(&harry_dym::PRINTED_LEVI)) == Err(Error::NotSolvable));
}

#[test]
fn isomorphism_to_reference() {
    let g = hd();
    let s = g.restrict(&units(&harry_dym::PRINTED_LEVI)).unwrap();
    let a38 = builtin_algebra("A3,8").unwrap();
    assert!(check_homomorphism(&Matrix::identity(3), &s, &s));
    let printed: Vec<Rat> = harry_dym::PRINTED_S_MAP.iter().map(|&x| rat(x)).collect();
    assert!(!check_homomorphism(&diagonal(&printed), &s, &a38));
    let found = diagonal_search(&s, &a38, 2).unwrap();
    assert_eq!(found, vec![rat(1), rat(1), rat(-1)]);
    assert!(check_homomorphism(&diagonal(&found), &s, &a38));
    assert!(diagonal_search(&s, &builtin_algebra("so3").unwrap(), 2).is_none());
}

#[test]
fn abelian_maps_are_homomorphisms() {
    let b = vec![VectorField::parse("1", "0", "0"), VectorField::parse("0", "1", "0")];
    let g = LieAlgebraTable::structure_constants(&b).unwrap();
    let m = Matrix::from_rows(vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]]);
    assert!(check_homomorphism(&m, &g, &g));
    let sing = Matrix::from_rows(vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]]);
    assert!(!check_homomorphism(&sing, &g, &g));
}

#[test]
fn json_dump_is_stable() {
    let g = hd();
    let a = serde_json::to_string(&g.to_json()).unwrap();
    assert_eq!(a, serde_json::to_string(&hd().to_json()).unwrap());
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["basis"][0], "d_x");
    assert_eq!(v["c"][0][2], serde_json::json!([[0, "1"]]));
}

#[test]
fn empty_basis_is_an_error() {
    assert_eq!(LieAlgebraTable::structure_constants(&[]).unwrap_err(), Error::EmptyBasis);
}
