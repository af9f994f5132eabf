//! Invariants `I(x, t, u)` of a point generator: `X(I) = 0`.
//!
//! Here eps is an ordinary nonzero parameter, not truncated: invariants such as
//! `ln(x)/(a*eps)` have no meaning modulo eps^2. [`verify_invariant_truncated`] is the
//! relaxed check `X(I) = o(eps)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::harry_dym;
use crate::jet::{ser_expr, VectorField};
use crate::symbolic::rat::{frac, is_integer, Rat};
use crate::symbolic::{parse, Atom, Expr, Monomial, Symbol};
use crate::{Error, Result};

/// Exact check: `xi*I_x + tau*I_t + phi*I_u` normalizes to 0.
pub fn verify_invariant(x: &VectorField, i: &Expr) -> bool {
    x.apply(i).is_zero()
}

/// Relaxed check: `X(I)` vanishes modulo eps^2. Errors when `X(I)` cannot be truncated.
pub fn verify_invariant_truncated(x: &VectorField, i: &Expr) -> Result<bool> {
    Ok(x.apply(i).eps_truncate()?.is_zero())
}

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct InvariantPair {
    #[serde(serialize_with = "ser_expr")]
    pub first: Expr,
    #[serde(serialize_with = "ser_expr")]
    pub second: Expr,
}

impl fmt::Debug for InvariantPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// Coefficients of `e` as a polynomial in `s` (index = power); `None` unless `e` is polynomial
/// in `s` with coefficients free of x, t and u.
fn poly_in(e: &Expr, s: &Symbol) -> Option<Vec<Expr>> {
    let map = e.coefficients_in(&|v| v == s).ok()?;
    let mut out = Vec::new();
    for (m, c) in map {
        let k = m.exponent(&Atom::Sym(s.clone()));
        if !is_integer(&k) || k.is_negative() || [Symbol::x(), Symbol::t(), Symbol::u()].iter().any(|v| c.depends_on(v)) {
            return None;
        }
        let k = k.to_integer().try_into().ok()?;
        if out.len() <= k {
            out.resize(k + 1, Expr::zero());
        }
        out[k] = c;
    }
    Some(out)
}

fn coeff(p: &[Expr], k: usize) -> Expr {
    p.get(k).cloned().unwrap_or_else(Expr::zero)
}

/// Largest monomial dividing every term of the numerators of `es`.
fn monomial_content(es: &[&Expr]) -> Expr {
    let mut mins: Option<BTreeMap<Atom, Rat>> = None;
    for e in es.iter().filter(|e| !e.is_zero()) {
        for (m, _) in e.numer().terms() {
            let here: BTreeMap<Atom, Rat> = m.factors().iter().cloned().collect();
            mins = Some(match mins {
                None => here,
                Some(prev) => prev
                    .into_iter()
                    .filter_map(|(a, x)| here.get(&a).map(|y| (a, if *y < x { y.clone() } else { x })))
                    .collect(),
            });
        }
    }
    let m = Monomial(mins.unwrap_or_default().into_iter().filter(|(_, e)| e.is_positive()).collect());
    Expr::from_monomial(m, Rat::one())
}

/// `base^e`: a power for rational `e`, otherwise `exp(e*ln(base))`.
fn power(base: &Expr, e: &Expr) -> Result<Expr> {
    match e.as_rat() {
        Some(r) => Ok(base.pow_rat(&r)?),
        None => Ok((e * &base.ln()?).exp()),
    }
}

/// Primitive of `1/xi` and `exp(integral c/xi)` for `xi` of degree <= 2 in x and `c`
/// linear in x.
struct Quadrature {
    primitive: Expr,
    weight: Expr,
}

fn quadrature(xi: &[Expr], c: &[Expr]) -> Result<Quadrature> {
    let x = Expr::x();
    let (p, q, s) = (coeff(xi, 0), coeff(xi, 1), coeff(xi, 2));
    let (alpha, beta) = (coeff(c, 0), coeff(c, 1));
    if !s.is_zero() {
        // xi = s*Q, Q = x^2 + qq*x + pp = (x + h)^2 + A
        let qq = &q / &s;
        let pp = &p / &s;
        let h = &qq / &Expr::int(2);
        let a = &pp - &(&h * &h);
        let shifted = &x + &h;
        let fq = if a.is_zero() {
            -&shifted.recip()?
        } else if let Some(r) = a.as_rat().filter(|r| r.is_negative()).and_then(|r| crate::symbolic::rat::pow_rat_exact(&-r, &frac(1, 2))) {
            // rational roots -h -+ r
            let rr = Expr::rat(r.clone());
            (&(&shifted - &rr) / &(&shifted + &rr)).ln()? / Expr::rat(r * Rat::from_integer(2.into()))
        } else {
            let root = a.sqrt()?;
            &(&shifted / &root).arctan() / &root
        };
        let primitive = &fq / &s;
        let log_part = &beta / &(&s * &Expr::int(2));
        let arc_part = &(&alpha - &(&beta * &h)) / &s;
        // monic up to a constant factor, kept free of denominators
        let plain = &(&(&(&s * &x) * &x) + &(&(&q * &x) + &p)) / &monomial_content(&[&p, &q, &s]);
        let weight = &power(&plain, &log_part)? * &(&arc_part * &fq).exp();
        return Ok(Quadrature { primitive, weight });
    }
    if !q.is_zero() {
        // xi = q*(x - r); logarithms taken of xi with its monomial content removed
        let arg = &(&(&q * &x) + &p) / &monomial_content(&[&p, &q]);
        let primitive = &arg.ln()? / &q;
        let r = -&(&p / &q);
        let e = &(&alpha + &(&beta * &r)) / &q;
        let weight = &(&(&beta * &x) / &q).exp() * &power(&arg, &e)?;
        return Ok(Quadrature { primitive, weight });
    }
    if p.is_zero() {
        return Err(Error::Internal("quadrature of a zero coefficient".into()));
    }
    let primitive = &x / &p;
    let weight = (&(&(&alpha * &x) + &(&(&beta * &x) * &x / Expr::int(2))) / &p).exp();
    Ok(Quadrature { primitive, weight })
}

/// Invariants for the catalog class: `xi` polynomial of degree <= 2 in x, `tau` constant
/// (or `k*t` when `xi = 0`), `phi = (alpha + beta*x)*u`, all coefficients free of t and u
/// except as stated. The pair is verified before it is returned.
pub fn characteristic_invariants(x: &VectorField) -> Result<InvariantPair> {
    let outside = |why: &str| Error::NotInCatalog(format!("{x}: {why}"));
    let (xs, ts, us) = (Symbol::x(), Symbol::t(), Symbol::u());
    if x.xi.depends_on(&ts) || x.xi.depends_on(&us) {
        return Err(outside("xi depends on t or u"));
    }
    let xi = poly_in(&x.xi, &xs).filter(|p| p.len() <= 3).ok_or_else(|| outside("xi is not a polynomial of degree <= 2 in x"))?;
    let c_expr = &x.phi / &Expr::u();
    if c_expr.depends_on(&us) || c_expr.depends_on(&ts) {
        return Err(outside("phi is not linear homogeneous in u"));
    }
    let c = poly_in(&c_expr, &xs).filter(|p| p.len() <= 2).ok_or_else(|| outside("phi/u is not linear in x"))?;
    if x.tau.depends_on(&xs) || x.tau.depends_on(&us) {
        return Err(outside("tau depends on x or u"));
    }
    let tau = poly_in(&x.tau, &ts).filter(|p| p.len() <= 2).ok_or_else(|| outside("tau is not affine in t"))?;
    let (tau0, tau1) = (coeff(&tau, 0), coeff(&tau, 1));

    let pair = if xi.iter().all(|e| e.is_zero()) {
        let cx = coeff(&c, 1).is_zero();
        match (tau0.is_zero(), tau1.is_zero()) {
            (true, true) if c_expr.is_zero() => return Err(outside("zero generator")),
            (true, true) => InvariantPair { first: Expr::x(), second: Expr::t() },
            (false, true) => {
                let second = &Expr::u() * &(&(&-&c_expr * &Expr::t()) / &tau0).exp();
                InvariantPair { first: Expr::x(), second }
            }
            (true, false) if cx => {
                let e = -&(&coeff(&c, 0) / &tau1);
                InvariantPair { first: Expr::x(), second: &Expr::u() * &power(&Expr::t(), &e)? }
            }
            _ => return Err(outside("mixed t-dependence")),
        }
    } else {
        if !tau1.is_zero() {
            return Err(outside("tau depends on t while xi is nonzero"));
        }
        let qd = quadrature(&xi, &c)?;
        let first = if tau0.is_zero() { Expr::t() } else { &Expr::t() - &(&tau0 * &qd.primitive) };
        InvariantPair { first, second: &Expr::u() / &qd.weight }
    };
    if !verify_invariant(x, &pair.first) || !verify_invariant(x, &pair.second) {
        return Err(Error::Internal(format!("catalog invariants {pair:?} fail for {x}")));
    }
    Ok(pair)
}

/// Symbols other than x, t, u that a random point must assign.
fn parameters(es: &[&Expr]) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = es.iter().flat_map(|e| e.free_symbols()).collect();
    out.sort();
    out.dedup();
    out
}

/// Whether the Jacobian of `(f, g)` in (x, t, u) has rank 2 at `points` random rational
/// points; points where a minor is undefined are resampled.
pub fn independent(f: &Expr, g: &Expr, points: usize, seed: u64) -> bool {
    let vars = [Symbol::x(), Symbol::t(), Symbol::u()];
    let df: Vec<Expr> = vars.iter().map(|v| f.diff(v)).collect();
    let dg: Vec<Expr> = vars.iter().map(|v| g.diff(v)).collect();
    let minors: Vec<Expr> =
        [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| &(&df[i] * &dg[j]) - &(&df[j] * &dg[i])).collect();
    let refs: Vec<&Expr> = minors.iter().collect();
    let syms = parameters(&refs);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = 0;
    for _ in 0..points * 20 {
        if ok == points {
            break;
        }
        let bind: BTreeMap<Symbol, Expr> = syms
            .iter()
            .map(|s| {
                let mut n = 0;
                while n == 0 {
                    n = rng.gen_range(-9..=9);
                }
                (s.clone(), Expr::rat(frac(n, rng.gen_range(1..=4))))
            })
            .collect();
        let vals: Option<Vec<Expr>> = minors.iter().map(|m| m.substitute(&bind).ok()).collect();
        let Some(vals) = vals else { continue };
        if vals.iter().any(|v| !v.is_zero()) {
            ok += 1;
        } else {
            return false;
        }
    }
    ok == points
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantRow {
    pub operator: String,
    #[serde(serialize_with = "ser_expr")]
    pub xi: Expr,
    #[serde(serialize_with = "ser_expr")]
    pub tau: Expr,
    #[serde(serialize_with = "ser_expr")]
    pub phi: Expr,
    pub printed: Option<(String, String)>,
    /// Each printed invariant annihilated.
    pub printed_ok: Option<(bool, bool)>,
    pub derived: Option<InvariantPair>,
    pub derived_error: Option<String>,
    pub derived_ok: bool,
    pub derived_independent: bool,
}

impl InvariantRow {
    pub fn printed_pass(&self) -> bool {
        self.printed_ok.is_some_and(|(a, b)| a && b)
    }
}

/// One row per operator given as a combination of `v1..v10`, with optional printed invariants.
pub fn invariant_table(rows: &[(&str, Option<(&str, &str)>)]) -> Result<Vec<InvariantRow>> {
    let mut out = Vec::new();
    for (k, (op, printed)) in rows.iter().enumerate() {
        let field = harry_dym::operator(op)?;
        let printed_ok = match printed {
            Some((a, b)) => Some((verify_invariant(&field, &parse(a)?), verify_invariant(&field, &parse(b)?))),
            None => None,
        };
        let (derived, derived_error) = match characteristic_invariants(&field) {
            Ok(p) => (Some(p), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let derived_ok = derived.as_ref().is_some_and(|p| verify_invariant(&field, &p.first) && verify_invariant(&field, &p.second));
        let derived_independent = derived.as_ref().is_some_and(|p| independent(&p.first, &p.second, 5, k as u64));
        out.push(InvariantRow {
            operator: op.to_string(),
            xi: field.xi,
            tau: field.tau,
            phi: field.phi,
            printed: printed.map(|(a, b)| (a.to_string(), b.to_string())),
            printed_ok,
            derived,
            derived_error,
            derived_ok,
            derived_independent,
        });
    }
    Ok(out)
}

/// The fourteen printed rows.
pub fn harry_dym_table() -> Result<Vec<InvariantRow>> {
    let rows: Vec<(&str, Option<(&str, &str)>)> =
        harry_dym::PRINTED_INVARIANTS.iter().map(|r| (r[0], Some((r[1], r[2])))).collect();
    invariant_table(&rows)
}

fn status(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn table_text(rows: &[InvariantRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!("{}\n", r.operator));
        if let (Some((a, b)), Some((sa, sb))) = (&r.printed, r.printed_ok) {
            out.push_str(&format!("  printed: {a} [{}], {b} [{}]\n", status(sa), status(sb)));
        }
        match (&r.derived, &r.derived_error) {
            (Some(p), _) => out.push_str(&format!(
                "  derived: {}, {} [{}{}]\n",
                p.first,
                p.second,
                status(r.derived_ok),
                if r.derived_independent { "" } else { ", dependent" }
            )),
            (None, Some(e)) => out.push_str(&format!("  derived: {e}\n")),
            _ => {}
        }
    }
    out
}

pub fn table_latex(rows: &[InvariantRow]) -> String {
    let mut out = String::from("\\begin{tabular}{llll}\nOperator & Invariant 1 & Invariant 2 & Status \\\\\n\\hline\n");
    for r in rows {
        let op = parse(&r.operator).map(|e| e.to_latex()).unwrap_or_else(|_| r.operator.clone());
        if let Some(p) = &r.derived {
            out.push_str(&format!(
                "${op}$ & ${}$ & ${}$ & {} \\\\\n",
                p.first.to_latex(),
                p.second.to_latex(),
                status(r.derived_ok && r.derived_independent)
            ));
        }
        if let (Some((a, b)), Some((sa, sb))) = (&r.printed, r.printed_ok) {
            let tex = |s: &str| parse(s).map(|e| e.to_latex()).unwrap_or_else(|_| s.to_string());
            out.push_str(&format!("(printed) & ${}$ & ${}$ & {} \\\\\n", tex(a), tex(b), status(sa && sb)));
        }
    }
    out.push_str("\\end{tabular}\n");
    out
}
