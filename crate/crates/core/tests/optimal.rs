use approxsym::harry_dym;
use approxsym::liealg::unit;
use approxsym::optimal::*;
use approxsym::symbolic::rat::{frac, rat};
use approxsym::{Error, Rat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn norm() -> Normalizer {
    Normalizer::harry_dym().unwrap()
}

fn vec_of(pairs: &[(usize, i64)]) -> Vec<Rat> {
    let mut v = vec![rat(0); 10];
    for &(k, c) in pairs {
        v[k - 1] = rat(c);
    }
    v
}

#[test]
fn unit_vectors() {
    let n = norm();
    let (r, t) = n.normalize(&unit(10, 7)).unwrap();
    assert_eq!(r.family, 1);
    assert!(t.steps.is_empty());
    assert_eq!(n.classify(&unit(10, 6)).unwrap(), 2);
    let (r, _) = n.normalize(&unit(10, 0)).unwrap();
    assert_eq!(r.family, 9);
    assert!(r.params.iter().all(|(_, v)| v.is_zero()));
    assert_eq!(n.normalize(&vec![rat(0); 10]).unwrap_err(), Error::ZeroVector);
}

#[test]
fn top_case_removes_v8() {
    let n = norm();
    let w = vec_of(&[(10, 1), (8, 6)]);
    let (r, t) = n.normalize(&w).unwrap();
    assert_eq!(r.family, 17);
    assert_eq!(r.coords[7], rat(0));
    assert_eq!(t.steps, vec![Step::Adjoint { generator: 0, mu: rat(3) }]);
}

#[test]
fn sign_normalization_by_dilation() {
    let n = norm();
    let w = vec_of(&[(2, 1), (6, 5), (8, 1)]);
    let (r, t) = n.normalize(&w).unwrap();
    assert_eq!(r.family, 8);
    assert_eq!(r.coords, vec_of(&[(2, 1), (6, 1), (8, 1)]));
    assert_eq!(t.steps, vec![Step::Dilate { generator: 2, factor: frac(1, 5) }]);
    assert_eq!(n.classify(&vec_of(&[(2, 2), (6, -4)])).unwrap(), 7);
    assert_eq!(n.classify(&vec_of(&[(9, 1), (2, -7), (7, 3)])).unwrap(), 14);
}

#[test]
fn printed_proof_parameters() {
    let n = norm();
    // a4 case: the v2 coefficient is removed with mu = a2/3
    let (_, t) = n.normalize(&vec_of(&[(4, 1), (2, 6)])).unwrap();
    assert_eq!(t.steps, vec![Step::Adjoint { generator: 1, mu: rat(2) }]);
    // a1 case: -a6 along v8, then -a8/2 along v10
    let (_, t) = n.normalize(&vec_of(&[(1, 1), (6, 4), (8, 2)])).unwrap();
    assert_eq!(
        t.steps,
        vec![Step::Adjoint { generator: 7, mu: rat(-4) }, Step::Adjoint { generator: 9, mu: rat(-1) }]
    );
}

#[test]
fn replay_and_scaling_equivariance() {
    let n = norm();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..300 {
        let w = random_vector(&mut rng, 10);
        let (r, t) = n.normalize(&w).unwrap();
        assert_eq!(n.replay(&t, &w).unwrap(), r.coords);
        assert_eq!(n.replay(&t.inverse(), &r.coords).unwrap(), w);
        assert_eq!(n.classify(&w.iter().map(|x| x * frac(-7, 3)).collect::<Vec<_>>()).unwrap(), r.family);
        let again = ReductionTrace::parse_script(&t.script()).unwrap();
        assert_eq!(again, t);
    }
}

#[test]
fn audit() {
    let n = norm();
    let a = audit_table(&n, &harry_dym::PRINTED_OPTIMAL, 0).unwrap();
    assert!(a.rows.iter().all(|r| r.fixed_point), "{:?}", a.rows);
    assert_eq!(a.identical, vec![(15, 16)]);
    assert_eq!(a.duplicates, vec![(15, 16)]);
    assert_eq!(a.unprinted, vec![17]);
    let diff: Vec<usize> = a.rows.iter().filter(|r| !r.same_pattern).map(|r| r.printed).collect();
    assert_eq!(diff, vec![3, 4, 5, 16]);
}
