//! Sparse polynomials over "atoms": symbols, opaque kernels and radicals of polynomials.
//!
//! Exponents are rationals so that `t^(1/3)` is a monomial. Canonical expressions keep
//! them non-negative; intermediate results may carry negative exponents until
//! [`super::expr::Expr`] folds them into a denominator.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::expr::Expr;
use super::rat::Rat;
use super::symbol::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Exp,
    Ln,
    Arctan,
}

impl Func {
    pub fn name(&self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Arctan => "arctan",
        }
    }
}

/// Indeterminate of a polynomial.
///
/// `Root(p)` stands for the polynomial `p` itself, raised only to fractional exponents in
/// `(0, 1)`; whole powers are multiplied out. `p` is monic and not a monomial, or a
/// numeric constant other than 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Sym(Symbol),
    Fn(Func, Expr),
    Root(Poly),
}

impl Atom {
    pub fn depends_on(&self, s: &Symbol) -> bool {
        match self {
            Atom::Sym(x) => x == s,
            Atom::Fn(_, a) => a.depends_on(s),
            Atom::Root(p) => p.depends_on(s),
        }
    }

    pub fn contains_symbol_where(&self, pred: &dyn Fn(&Symbol) -> bool) -> bool {
        match self {
            Atom::Sym(x) => pred(x),
            Atom::Fn(_, a) => a.contains_symbol_where(pred),
            Atom::Root(p) => p.contains_symbol_where(pred),
        }
    }

    pub fn is_opaque(&self) -> bool {
        !matches!(self, Atom::Sym(_))
    }
}

/// Product of atoms with nonzero rational exponents, sorted by atom.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub(crate) Vec<(Atom, Rat)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn atom(a: Atom, e: Rat) -> Monomial {
        if e.is_zero() {
            Monomial::one()
        } else {
            Monomial(vec![(a, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Atom, Rat)] {
        &self.0
    }

    pub fn exponent(&self, a: &Atom) -> Rat {
        self.0
            .iter()
            .find(|(b, _)| b == a)
            .map(|(_, e)| e.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = &self.0[i].1 + &other.0[j].1;
                    if !e.is_zero() {
                        out.push((self.0[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn pow(&self, r: &Rat) -> Monomial {
        if r.is_zero() {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(a, e)| (a.clone(), e * r)).collect())
    }

    /// Monomial with the exponent of `a` shifted by `delta`.
    pub fn shift(&self, a: &Atom, delta: &Rat) -> Monomial {
        self.mul(&Monomial::atom(a.clone(), delta.clone()))
    }

    pub fn without(&self, a: &Atom) -> Monomial {
        Monomial(self.0.iter().filter(|(b, _)| b != a).cloned().collect())
    }

    /// Total degree over the atoms selected by `pred`.
    pub fn degree_where(&self, pred: impl Fn(&Atom) -> bool) -> Rat {
        self.0.iter().filter(|(a, _)| pred(a)).map(|(_, e)| e.clone()).sum()
    }
}

/// Polynomial over atoms with rational coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly(pub(crate) BTreeMap<Monomial, Rat>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(BTreeMap::new())
    }

    pub fn constant(c: Rat) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Poly {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.0.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.0.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &Rat)> {
        if self.0.len() == 1 {
            self.0.iter().next()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut big, small) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &small.0 {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c.clone())).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|(m, x)| (m.clone(), x * c)).collect())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (a, c) in &self.0 {
            out.add_term(a.mul(m), c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn depends_on(&self, s: &Symbol) -> bool {
        self.0.keys().any(|m| m.0.iter().any(|(a, _)| a.depends_on(s)))
    }

    pub fn contains_symbol_where(&self, pred: &dyn Fn(&Symbol) -> bool) -> bool {
        self.0.keys().any(|m| m.0.iter().any(|(a, _)| a.contains_symbol_where(pred)))
    }

    pub fn atoms(&self) -> std::collections::BTreeSet<Atom> {
        self.0.keys().flat_map(|m| m.0.iter().map(|(a, _)| a.clone())).collect()
    }

    /// Lex-greatest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.0.iter().next_back()
    }
}
