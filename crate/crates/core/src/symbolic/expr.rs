use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mpoly::{self, MPoly};
use super::poly::{Atom, Func, Monomial, Poly};
use super::rat::{self, Rat};
use super::symbol::Symbol;
use super::SymbolicError;

/// Immutable symbolic expression in canonical form.
///
/// Every `Expr` is a reduced quotient `num / den` of polynomials over atoms:
/// exponents are non-negative, `gcd(num, den) = 1`, and `den` has leading
/// coefficient one. Two rational-class expressions are equal iff their canonical
/// forms are identical, so `==` is an exact equality test on that class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Expr(Arc<Inner>);

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Inner {
    num: Poly,
    den: Poly,
}

type Result<T> = std::result::Result<T, SymbolicError>;

fn exps_in_range(p: &Poly) -> bool {
    p.terms().all(|(m, _)| {
        m.factors().iter().all(|(a, e)| match a {
            Atom::Root(_) => e.is_positive() && *e < Rat::one(),
            _ => e.is_positive(),
        })
    })
}

/// Multiplies out whole powers of radical atoms.
fn reduce_roots(mut p: Poly) -> Poly {
    loop {
        let needs = p.terms().any(|(m, _)| {
            m.factors().iter().any(|(a, e)| matches!(a, Atom::Root(_)) && *e >= Rat::one())
        });
        if !needs {
            return p;
        }
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let mut factor = Poly::constant(c.clone());
            let mut rest = m.clone();
            for (a, e) in m.factors() {
                if let Atom::Root(base) = a {
                    if *e >= Rat::one() {
                        let k = rat::floor(e);
                        rest = rest.shift(a, &-Rat::from_integer(k.clone()));
                        factor = factor.mul(&base.pow(k.to_u32().expect("radical power fits u32")));
                    }
                }
            }
            out = out.add(&factor.mul_monomial(&rest));
        }
        p = out;
    }
}

/// Per-atom minimum exponent over all terms of the given polynomials (absent = 0).
fn min_exponents(polys: &[&Poly]) -> BTreeMap<Atom, Rat> {
    let atoms: BTreeSet<Atom> = polys.iter().flat_map(|p| p.atoms()).collect();
    let mut out = BTreeMap::new();
    for a in atoms {
        let mut min: Option<Rat> = None;
        for p in polys {
            for (m, _) in p.terms() {
                let e = m.exponent(&a);
                min = Some(match min {
                    Some(x) if x <= e => x,
                    _ => e,
                });
            }
        }
        if let Some(m) = min {
            out.insert(a, m);
        }
    }
    out
}

struct AtomIndex {
    atoms: Vec<Atom>,
    scale: Vec<BigInt>,
}

impl AtomIndex {
    fn new(polys: &[&Poly]) -> AtomIndex {
        let set: BTreeSet<Atom> = polys.iter().flat_map(|p| p.atoms()).collect();
        let atoms: Vec<Atom> = set.into_iter().collect();
        let scale = atoms
            .iter()
            .map(|a| {
                let mut l = BigInt::one();
                for p in polys {
                    for (m, _) in p.terms() {
                        l = l.lcm(m.exponent(a).denom());
                    }
                }
                l
            })
            .collect();
        AtomIndex { atoms, scale }
    }

    fn to_mpoly(&self, p: &Poly) -> MPoly {
        let n = self.atoms.len();
        MPoly::from_terms(
            n,
            p.terms().map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (a, x) in m.factors() {
                    let i = self.atoms.binary_search(a).expect("indexed atom");
                    let scaled = x * Rat::from_integer(self.scale[i].clone());
                    e[i] = scaled.to_integer().to_u32().expect("non-negative exponent");
                }
                (e, c.clone())
            }),
        )
    }

    fn from_mpoly(&self, p: &MPoly) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in p.terms() {
            let factors: Vec<(Atom, Rat)> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| (self.atoms[i].clone(), Rat::new(BigInt::from(k), self.scale[i].clone())))
                .collect();
            out.add_term(Monomial(factors), c.clone());
        }
        out
    }
}

impl Expr {
    fn raw(num: Poly, den: Poly) -> Expr {
        Expr(Arc::new(Inner { num, den }))
    }

    /// Builds the canonical form of `num / den`.
    pub(crate) fn from_parts(num: Poly, den: Poly) -> Result<Expr> {
        if den.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Expr::zero());
        }
        if den.is_one() && exps_in_range(&num) {
            return Ok(Expr::raw(num, den));
        }
        let mut num = reduce_roots(num);
        let mut den = reduce_roots(den);
        if den.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Expr::zero());
        }

        // fold negative exponents into the other side, then strip common monomial content
        let mins = min_exponents(&[&num, &den]);
        let lift = Monomial(
            mins.iter()
                .filter(|(_, e)| e.is_negative())
                .map(|(a, e)| (a.clone(), -e.clone()))
                .collect(),
        );
        if !lift.is_one() {
            num = reduce_roots(num.mul_monomial(&lift));
            den = reduce_roots(den.mul_monomial(&lift));
        }
        // rationalize radical content of the denominator
        loop {
            let lift = Monomial(
                min_exponents(&[&den])
                    .into_iter()
                    .filter(|(a, e)| matches!(a, Atom::Root(_)) && e.is_positive())
                    .map(|(a, e)| (a, Rat::one() - e))
                    .collect(),
            );
            if lift.is_one() {
                break;
            }
            num = reduce_roots(num.mul_monomial(&lift));
            den = reduce_roots(den.mul_monomial(&lift));
        }
        let mins = min_exponents(&[&num, &den]);
        let common = Monomial(
            mins.into_iter()
                .filter(|(_, e)| e.is_positive())
                .map(|(a, e)| (a, -e))
                .collect(),
        );
        if !common.is_one() {
            num = num.mul_monomial(&common);
            den = den.mul_monomial(&common);
        }

        if let Some(c) = den.as_constant() {
            return Ok(Expr::raw(num.scale(&c.recip()), Poly::one()));
        }

        let idx = AtomIndex::new(&[&num, &den]);
        let (n, d) = (idx.to_mpoly(&num), idx.to_mpoly(&den));
        let g = mpoly::gcd(&n, &d);
        if !g.is_constant() {
            num = idx.from_mpoly(&n.div_exact(&g).expect("gcd divides numerator"));
            den = idx.from_mpoly(&d.div_exact(&g).expect("gcd divides denominator"));
        }
        let lead = den.leading().expect("nonzero denominator").1.recip();
        let num = num.scale(&lead);
        let den = den.scale(&lead);
        if den.is_one() {
            return Ok(Expr::raw(num, Poly::one()));
        }
        Ok(Expr::raw(num, den))
    }

    pub fn from_poly(p: Poly) -> Expr {
        Expr::from_parts(p, Poly::one()).expect("unit denominator")
    }

    pub fn from_monomial(m: Monomial, c: Rat) -> Expr {
        Expr::from_poly(Poly::term(m, c))
    }

    pub fn zero() -> Expr {
        Expr::raw(Poly::zero(), Poly::one())
    }

    pub fn one() -> Expr {
        Expr::raw(Poly::one(), Poly::one())
    }

    pub fn rat(r: Rat) -> Expr {
        Expr::raw(Poly::constant(r), Poly::one())
    }

    pub fn int(n: i64) -> Expr {
        Expr::rat(rat::rat(n))
    }

    pub fn frac(n: i64, d: i64) -> Expr {
        Expr::rat(rat::frac(n, d))
    }

    pub fn symbol(s: Symbol) -> Expr {
        Expr::raw(Poly::term(Monomial::atom(Atom::Sym(s), Rat::one()), Rat::one()), Poly::one())
    }

    /// Symbol by name, resolved with [`Symbol::from_name`].
    pub fn var(name: &str) -> Expr {
        Expr::symbol(Symbol::from_name(name))
    }

    pub fn x() -> Expr {
        Expr::symbol(Symbol::x())
    }

    pub fn t() -> Expr {
        Expr::symbol(Symbol::t())
    }

    pub fn u() -> Expr {
        Expr::symbol(Symbol::u())
    }

    pub fn eps() -> Expr {
        Expr::symbol(Symbol::eps())
    }

    pub fn numer(&self) -> &Poly {
        &self.0.num
    }

    pub fn denom(&self) -> &Poly {
        &self.0.den
    }

    pub fn numer_expr(&self) -> Expr {
        Expr::raw(self.0.num.clone(), Poly::one())
    }

    pub fn denom_expr(&self) -> Expr {
        Expr::raw(self.0.den.clone(), Poly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.num.is_one() && self.0.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.den.is_one()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.0.den.is_one() {
            self.0.num.as_constant()
        } else {
            None
        }
    }

    pub fn as_symbol(&self) -> Option<&Symbol> {
        if !self.0.den.is_one() {
            return None;
        }
        match self.0.num.as_monomial() {
            Some((m, c)) if c.is_one() && m.factors().len() == 1 => match &m.factors()[0] {
                (Atom::Sym(s), e) if e.is_one() => Some(s),
                _ => None,
            },
            _ => None,
        }
    }

    /// True when no exp/ln/arctan kernel or radical appears and every exponent is an integer.
    pub fn is_rational_class(&self) -> bool {
        [&self.0.num, &self.0.den].iter().all(|p| {
            p.terms().all(|(m, _)| m.factors().iter().all(|(a, e)| !a.is_opaque() && rat::is_integer(e)))
        })
    }

    pub fn depends_on(&self, s: &Symbol) -> bool {
        self.0.num.depends_on(s) || self.0.den.depends_on(s)
    }

    pub(crate) fn contains_symbol_where(&self, pred: &dyn Fn(&Symbol) -> bool) -> bool {
        self.0.num.contains_symbol_where(pred) || self.0.den.contains_symbol_where(pred)
    }

    pub fn free_symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        fn walk(p: &Poly, out: &mut BTreeSet<Symbol>) {
            for (m, _) in p.terms() {
                for (a, _) in m.factors() {
                    match a {
                        Atom::Sym(s) => {
                            out.insert(s.clone());
                        }
                        Atom::Fn(_, e) => {
                            walk(e.numer(), out);
                            walk(e.denom(), out);
                        }
                        Atom::Root(b) => walk(b, out),
                    }
                }
            }
        }
        walk(&self.0.num, &mut out);
        walk(&self.0.den, &mut out);
        out
    }

    pub fn checked_add(&self, other: &Expr) -> Expr {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let r = if self.0.den == other.0.den {
            Expr::from_parts(self.0.num.add(&other.0.num), self.0.den.clone())
        } else {
            Expr::from_parts(
                self.0.num.mul(&other.0.den).add(&other.0.num.mul(&self.0.den)),
                self.0.den.mul(&other.0.den),
            )
        };
        r.expect("product of nonzero denominators")
    }

    pub fn neg(&self) -> Expr {
        Expr::raw(self.0.num.neg(), self.0.den.clone())
    }

    pub fn checked_mul(&self, other: &Expr) -> Expr {
        if self.is_zero() || other.is_zero() {
            return Expr::zero();
        }
        if let Some(c) = other.as_rat() {
            return Expr::raw(self.0.num.scale(&c), self.0.den.clone());
        }
        if let Some(c) = self.as_rat() {
            return Expr::raw(other.0.num.scale(&c), other.0.den.clone());
        }
        Expr::from_parts(self.0.num.mul(&other.0.num), self.0.den.mul(&other.0.den))
            .expect("product of nonzero denominators")
    }

    pub fn checked_div(&self, other: &Expr) -> Result<Expr> {
        if other.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        Expr::from_parts(self.0.num.mul(&other.0.den), self.0.den.mul(&other.0.num))
    }

    pub fn recip(&self) -> Result<Expr> {
        Expr::one().checked_div(self)
    }

    pub fn scale(&self, c: &Rat) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr::raw(self.0.num.scale(c), self.0.den.clone())
    }

    pub fn pow_int(&self, n: i64) -> Result<Expr> {
        if n < 0 {
            return self.recip()?.pow_int(-n);
        }
        let n = n as u32;
        Expr::from_parts(self.0.num.pow(n), self.0.den.pow(n))
    }

    /// `self^r` for a rational exponent. Fractional powers of non-monomial polynomials
    /// become radical atoms; numeric radicals that are exact collapse to rationals.
    pub fn pow_rat(&self, r: &Rat) -> Result<Expr> {
        if rat::is_integer(r) {
            let n = r.to_integer().to_i64().ok_or_else(|| SymbolicError::Domain("exponent too large".into()))?;
            return self.pow_int(n);
        }
        if self.is_zero() {
            return if r.is_positive() {
                Ok(Expr::zero())
            } else {
                Err(SymbolicError::DivisionByZero)
            };
        }
        let num = poly_power(&self.0.num, r)?;
        let den = poly_power(&self.0.den, r)?;
        num.checked_div(&den)
    }

    pub fn sqrt(&self) -> Result<Expr> {
        self.pow_rat(&rat::frac(1, 2))
    }

    pub fn exp(&self) -> Expr {
        if self.is_zero() {
            return Expr::one();
        }
        Expr::from_monomial(Monomial::atom(Atom::Fn(Func::Exp, self.clone()), Rat::one()), Rat::one())
    }

    pub fn ln(&self) -> Result<Expr> {
        if self.is_zero() {
            return Err(SymbolicError::Domain("ln(0)".into()));
        }
        if self.is_one() {
            return Ok(Expr::zero());
        }
        Ok(Expr::from_monomial(Monomial::atom(Atom::Fn(Func::Ln, self.clone()), Rat::one()), Rat::one()))
    }

    pub fn arctan(&self) -> Expr {
        if self.is_zero() {
            return Expr::zero();
        }
        Expr::from_monomial(Monomial::atom(Atom::Fn(Func::Arctan, self.clone()), Rat::one()), Rat::one())
    }

    pub(crate) fn apply_func(f: Func, arg: &Expr) -> Result<Expr> {
        match f {
            Func::Exp => Ok(arg.exp()),
            Func::Ln => arg.ln(),
            Func::Arctan => Ok(arg.arctan()),
        }
    }

    /// Partial derivative treating every other symbol, jet coordinates included, as independent.
    pub fn diff(&self, s: &Symbol) -> Expr {
        let dn = poly_diff(&self.0.num, s);
        if self.0.den.is_one() {
            return dn;
        }
        let dd = poly_diff(&self.0.den, s);
        if dn.is_zero() && dd.is_zero() {
            return Expr::zero();
        }
        let n = self.numer_expr();
        let d = self.denom_expr();
        (&(&dn * &d) - &(&n * &dd))
            .checked_div(&(&d * &d))
            .expect("nonzero denominator")
    }

    /// Simultaneous substitution of symbols, followed by normalization.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, Expr>) -> Result<Expr> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let mut cache = BTreeMap::new();
        let n = poly_subst(&self.0.num, bindings, &mut cache)?;
        if self.0.den.is_one() {
            return Ok(n);
        }
        let d = poly_subst(&self.0.den, bindings, &mut cache)?;
        n.checked_div(&d)
    }

    pub fn subs1(&self, s: &Symbol, value: &Expr) -> Result<Expr> {
        let mut b = BTreeMap::new();
        b.insert(s.clone(), value.clone());
        self.substitute(&b)
    }

    /// Exact value at a rational point, when every free symbol is bound and the result is rational.
    pub fn eval(&self, point: &BTreeMap<Symbol, Rat>) -> Result<Option<Rat>> {
        let b: BTreeMap<Symbol, Expr> = point.iter().map(|(s, r)| (s.clone(), Expr::rat(r.clone()))).collect();
        Ok(self.substitute(&b)?.as_rat())
    }

    /// Splits `self = order0 + eps*order1 + O(eps^2)`.
    pub fn eps_truncate(&self) -> Result<EpsTruncated> {
        let eps = Symbol::eps();
        if self.0.den.depends_on(&eps) {
            return Err(SymbolicError::NotTruncatable("eps in a denominator".into()));
        }
        let eps_atom = Atom::Sym(eps.clone());
        let mut parts = [Poly::zero(), Poly::zero()];
        for (m, c) in self.0.num.terms() {
            for (a, e) in m.factors() {
                if *a == eps_atom {
                    if !rat::is_integer(e) {
                        return Err(SymbolicError::NotTruncatable("fractional power of eps".into()));
                    }
                } else if a.depends_on(&eps) {
                    return Err(SymbolicError::NotTruncatable("eps inside an opaque kernel".into()));
                }
            }
            let k = m.exponent(&eps_atom);
            if k.is_zero() {
                parts[0].add_term(m.clone(), c.clone());
            } else if k.is_one() {
                parts[1].add_term(m.without(&eps_atom), c.clone());
            }
        }
        let [p0, p1] = parts;
        Ok(EpsTruncated {
            order0: Expr::from_parts(p0, self.0.den.clone())?,
            order1: Expr::from_parts(p1, self.0.den.clone())?,
        })
    }

    /// Coefficients of a polynomial expression grouped by the monomial in the selected symbols.
    ///
    /// Fails when the denominator involves a selected symbol or a selected symbol
    /// appears inside a kernel or with a fractional exponent.
    pub fn coefficients_in(&self, pred: &dyn Fn(&Symbol) -> bool) -> Result<BTreeMap<Monomial, Expr>> {
        if self.0.den.contains_symbol_where(pred) {
            return Err(SymbolicError::Domain("selected symbol in a denominator".into()));
        }
        let mut groups: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in self.0.num.terms() {
            let mut key = Vec::new();
            let mut rest = Vec::new();
            for (a, e) in m.factors() {
                match a {
                    Atom::Sym(s) if pred(s) => {
                        if !rat::is_integer(e) {
                            return Err(SymbolicError::Domain(format!("fractional power of {s}")));
                        }
                        key.push((a.clone(), e.clone()));
                    }
                    _ if a.contains_symbol_where(pred) => {
                        return Err(SymbolicError::Domain("selected symbol inside a kernel".into()));
                    }
                    _ => rest.push((a.clone(), e.clone())),
                }
            }
            groups.entry(Monomial(key)).or_default().add_term(Monomial(rest), c.clone());
        }
        groups
            .into_iter()
            .map(|(k, p)| Ok((k, Expr::from_parts(p, self.0.den.clone())?)))
            .collect()
    }
}

/// `p^r` for a nonzero polynomial and fractional `r`.
fn poly_power(p: &Poly, r: &Rat) -> Result<Expr> {
    if let Some(c) = p.as_constant() {
        return Ok(number_power(&c, r));
    }
    if let Some((m, c)) = p.as_monomial() {
        return Ok(&number_power(c, r) * &Expr::from_monomial(m.pow(r), Rat::one()));
    }
    let mins = min_exponents(&[p]);
    let content = Monomial(mins.into_iter().filter(|(_, e)| !e.is_zero()).collect());
    let stripped = p.mul_monomial(&content.pow(&-Rat::one()));
    let lead = stripped.leading().expect("nonzero").1.clone();
    let base = stripped.scale(&lead.recip());
    let radical = Expr::from_monomial(Monomial::atom(Atom::Root(base), r.clone()), Rat::one());
    Ok(&(&number_power(&lead, r) * &Expr::from_monomial(content.pow(r), Rat::one())) * &radical)
}

fn number_power(c: &Rat, r: &Rat) -> Expr {
    if let Some(v) = rat::pow_rat_exact(c, r) {
        return Expr::rat(v);
    }
    Expr::from_monomial(Monomial::atom(Atom::Root(Poly::constant(c.clone())), r.clone()), Rat::one())
}

fn atom_diff(a: &Atom, s: &Symbol) -> Expr {
    match a {
        Atom::Sym(x) => {
            if x == s {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Atom::Fn(f, arg) => {
            let da = arg.diff(s);
            if da.is_zero() {
                return Expr::zero();
            }
            match f {
                Func::Exp => &arg.exp() * &da,
                Func::Ln => da.checked_div(arg).expect("ln argument is nonzero"),
                Func::Arctan => da
                    .checked_div(&(&Expr::one() + &(arg * arg)))
                    .expect("1 + a^2 is nonzero"),
            }
        }
        Atom::Root(p) => poly_diff(p, s),
    }
}

fn poly_diff(p: &Poly, s: &Symbol) -> Expr {
    let mut laurent = Poly::zero();
    let mut extra = Expr::zero();
    let mut atom_cache: BTreeMap<Atom, Expr> = BTreeMap::new();
    for (m, c) in p.terms() {
        for (a, e) in m.factors() {
            if !a.depends_on(s) {
                continue;
            }
            let da = atom_cache.entry(a.clone()).or_insert_with(|| atom_diff(a, s)).clone();
            if da.is_zero() {
                continue;
            }
            let rest = m.shift(a, &-Rat::one());
            let coef = c * e;
            if da.is_polynomial() {
                for (dm, dc) in da.numer().terms() {
                    laurent.add_term(dm.mul(&rest), dc * &coef);
                }
            } else {
                extra = &extra + &(&Expr::from_parts(Poly::term(rest, coef), Poly::one()).expect("unit") * &da);
            }
        }
    }
    &Expr::from_parts(laurent, Poly::one()).expect("unit denominator") + &extra
}

fn poly_subst(
    p: &Poly,
    bindings: &BTreeMap<Symbol, Expr>,
    cache: &mut BTreeMap<(Atom, Rat), Expr>,
) -> Result<Expr> {
    let touched = |a: &Atom| match a {
        Atom::Sym(s) => bindings.contains_key(s),
        _ => bindings.keys().any(|s| a.depends_on(s)),
    };
    let mut untouched = Poly::zero();
    let mut acc = Expr::zero();
    for (m, c) in p.terms() {
        if !m.factors().iter().any(|(a, _)| touched(a)) {
            untouched.add_term(m.clone(), c.clone());
            continue;
        }
        let mut keep = Vec::new();
        let mut term = Expr::rat(c.clone());
        for (a, e) in m.factors() {
            if !touched(a) {
                keep.push((a.clone(), e.clone()));
                continue;
            }
            let key = (a.clone(), e.clone());
            let v = match cache.get(&key) {
                Some(v) => v.clone(),
                None => {
                    let base = match a {
                        Atom::Sym(s) => bindings[s].clone(),
                        Atom::Fn(f, arg) => Expr::apply_func(*f, &arg.substitute(bindings)?)?,
                        Atom::Root(b) => poly_subst(b, bindings, cache)?,
                    };
                    let v = base.pow_rat(e)?;
                    cache.insert(key, v.clone());
                    v
                }
            };
            term = &term * &v;
            if term.is_zero() {
                break;
            }
        }
        if !term.is_zero() {
            acc = &acc + &(&term * &Expr::from_parts(Poly::term(Monomial(keep), Rat::one()), Poly::one())?);
        }
    }
    Ok(&Expr::from_parts(untouched, Poly::one())? + &acc)
}

/// Element `order0 + eps*order1` of the quotient ring by `eps^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsTruncated {
    pub order0: Expr,
    pub order1: Expr,
}

impl EpsTruncated {
    pub fn to_expr(&self) -> Expr {
        &self.order0 + &(&Expr::eps() * &self.order1)
    }

    pub fn is_zero(&self) -> bool {
        self.order0.is_zero() && self.order1.is_zero()
    }

    pub fn add(&self, other: &EpsTruncated) -> EpsTruncated {
        EpsTruncated { order0: &self.order0 + &other.order0, order1: &self.order1 + &other.order1 }
    }

    pub fn mul(&self, other: &EpsTruncated) -> EpsTruncated {
        EpsTruncated {
            order0: &self.order0 * &other.order0,
            order1: &(&self.order0 * &other.order1) + &(&self.order1 * &other.order0),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl std::ops::$trait<&Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                let f: fn(&Expr, &Expr) -> Expr = $body;
                f(self, rhs)
            }
        }
        impl std::ops::$trait<Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Expr> for Expr {
            type Output = Expr;
            fn $method(self, rhs: &Expr) -> Expr {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<Expr> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.checked_add(b));
binop!(Sub, sub, |a, b| a.checked_add(&b.neg()));
binop!(Mul, mul, |a, b| a.checked_mul(b));
// Panics on a zero divisor, like integer division; use `checked_div` to handle it.
binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

impl std::ops::Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(&self)
    }
}

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |a, b| &a + &b)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

impl From<Rat> for Expr {
    fn from(r: Rat) -> Expr {
        Expr::rat(r)
    }
}

impl From<Symbol> for Expr {
    fn from(s: Symbol) -> Expr {
        Expr::symbol(s)
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
