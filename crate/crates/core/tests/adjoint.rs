use approxsym::adjoint::*;
use approxsym::harry_dym::{self, algebra_basis};
use approxsym::liealg::{default_labels, unit, LieAlgebraTable};
use approxsym::linalg::Matrix;
use approxsym::symbolic::rat::{frac, rat};
use approxsym::{ex, Expr, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn hd() -> LieAlgebraTable {
    LieAlgebraTable::structure_constants(&algebra_basis()).unwrap()
}

fn random_mu(rng: &mut ChaCha8Rng) -> Rat {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn numbers(v: &[Rat]) -> Vec<ExpNumber> {
    v.iter().map(|x| ExpNumber::rat(x.clone())).collect()
}

fn bracket_numbers(g: &LieAlgebraTable, x: &[ExpNumber], y: &[ExpNumber]) -> Vec<ExpNumber> {
    let n = g.dim();
    let mut out = vec![ExpNumber::zero(); n];
    for i in 0..n {
        for j in 0..n {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let f = x[i].mul(&y[j]);
            for k in 0..n {
                out[k] = out[k].add(&f.scale(&g.constants(i, j)[k]));
            }
        }
    }
    out
}

#[test]
fn ad_matrix_examples() {
    let g = hd();
    let a6 = ad_matrix(&g, 5);
    assert!(!a6.is_zero());
    assert!(a6.mul(&a6).is_zero());
    assert_eq!(ad_matrix(&g, 0).mul_vec(&unit(10, 2)), unit(10, 0));
    for i in 0..10 {
        assert!(ad_matrix(&g, i).mul_vec(&unit(10, i)).iter().all(|x| *x == rat(0)));
    }
}

#[test]
fn zero_matrix_exponential_is_identity() {
    let e = exact_exp(&Matrix::zeros(3, 3), -1).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(e[i][j], if i == j { ExpPoly::one() } else { ExpPoly::zero() });
        }
    }
}

#[test]
fn rotation_has_no_rational_spectrum() {
    let a = Matrix::from_rows(vec![vec![rat(0), rat(-1)], vec![rat(1), rat(0)]]);
    assert_eq!(exact_exp(&a, 1), Err(approxsym::Error::NonRationalSpectrum));
}

#[test]
fn spot_entries_verbatim() {
    let t = adjoint_table(&hd()).unwrap();
    let l = default_labels(10);
    assert_eq!(t[0].entry_string(4, &l), "v5 - 2*mu*v3 + mu^2*v1");
    assert_eq!(t[2].entry_string(0, &l), "exp(mu)*v1");
    assert_eq!(t[3].entry_string(1, &l), "exp(3*mu)*v2");
    assert_eq!(t[4].entry_string(7, &l), "v8 + mu*v10");
}

#[test]
fn table_two_diff() {
    let t = adjoint_table(&hd()).unwrap();
    let d = diff_table(&t, &harry_dym::PRINTED_ADJOINT).unwrap();
    let at: Vec<(usize, usize)> = d.iter().map(|e| (e.row, e.col)).collect();
    assert_eq!(at, vec![(1, 3), (3, 1), (4, 7)]);
    assert_eq!(d[0].derived, "v4 - 3*mu*v2");
    assert_eq!(d[1].derived, "exp(3*mu)*v2");
    assert_eq!(d[2].derived, "v8 + mu*v10");
}

#[test]
fn apply_examples() {
    let g = hd();
    let t = adjoint_table(&g).unwrap();
    let n = 10;
    let mu = Expr::symbol(mu_symbol());
    let w: Vec<Expr> = (0..n).map(|k| if k == 9 { Expr::one() } else { ex(&format!("a{}", k + 1)) }).collect();
    // the v8 coefficient of a generic vector with a10 = 1 is removed by v1, not by v8
    let killed = t[0].apply(&ex("a8/2"), &w);
    assert!(killed[7].is_zero());
    assert_eq!(t[7].apply(&ex("a8/2"), &w)[7], ex("a8"));
    assert_eq!(t[4].apply(&Expr::zero(), &w), w);
    let v2: Vec<Expr> = (0..n).map(|k| if k == 1 { Expr::one() } else { Expr::zero() }).collect();
    let out = t[3].apply(&mu, &v2);
    assert_eq!(out[1], ex("exp(3*mu)"));
    assert!(out.iter().enumerate().all(|(k, e)| k == 1 || e.is_zero()));
}

#[test]
fn group_properties_at_random_parameters() {
    let g = hd();
    let t = adjoint_table(&g).unwrap();
    let n = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..20 {
        let (m1, m2) = (random_mu(&mut rng), random_mu(&mut rng));
        for m in &t {
            for j in 0..n {
                let w = numbers(&unit(n, j));
                let lhs = m.apply_numbers(&m1, &m.apply_numbers(&m2, &w));
                assert_eq!(lhs, m.apply_numbers(&(&m1 + &m2), &w));
                assert_eq!(m.apply_numbers(&-&m1, &m.apply_numbers(&m1, &w)), w);
            }
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let (ea, eb) = (numbers(&unit(n, a)), numbers(&unit(n, b)));
            let lhs = bracket_numbers(&g, &m.apply_numbers(&m1, &ea), &m.apply_numbers(&m1, &eb));
            let rhs = m.apply_numbers(&m1, &numbers(g.constants(a, b)));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn derivative_at_zero_is_minus_bracket() {
    let g = hd();
    for (i, m) in adjoint_table(&g).unwrap().iter().enumerate() {
        for j in 0..10 {
            for k in 0..10 {
                assert_eq!(m.entries[j][k].derivative_at_zero(), -g.constants(i, j)[k].clone());
            }
        }
    }
}

#[test]
fn closed_form_matches_series() {
    let g = hd();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (i, m) in adjoint_table(&g).unwrap().iter().enumerate() {
        let a = ad_matrix(&g, i);
        if m.is_unipotent() {
            let mu = random_mu(&mut rng);
            let s = series_exp(&a, -1, &mu, 15);
            for j in 0..10 {
                for k in 0..10 {
                    assert_eq!(m.entries[j][k].eval_rational(&mu).unwrap(), s[(k, j)]);
                }
            }
        }
        let mut p = Matrix::identity(10);
        let mut fact = rat(1);
        for d in 0..15 {
            for j in 0..10 {
                for k in 0..10 {
                    assert_eq!(m.entries[j][k].taylor(d), &p[(k, j)] / &fact);
                }
            }
            p = p.mul(&a.scale(&rat(-1)));
            fact *= rat(d as i64 + 1);
        }
    }
}

#[test]
fn latex_layout() {
    let t = adjoint_table(&hd()).unwrap();
    let s = table_latex(&t, &default_labels(10));
    assert_eq!(s.matches("\\begin{tabular}{c|ccccc}").count(), 2);
    assert!(s.contains("e^{\\mu}v_{1}"));
}
