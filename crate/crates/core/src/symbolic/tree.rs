use num_traits::One;

use super::expr::Expr;
use super::poly::{Atom, Func, Monomial, Poly};
use super::rat::{self, Rat};
use super::symbol::Symbol;
use super::SymbolicError;

/// Un-normalized expression tree, as produced by the parser or by [`Expr::to_tree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprTree {
    Num(Rat),
    Sym(Symbol),
    Sum(Vec<ExprTree>),
    Product(Vec<ExprTree>),
    Pow(Box<ExprTree>, Rat),
    Exp(Box<ExprTree>),
    Ln(Box<ExprTree>),
    Arctan(Box<ExprTree>),
    Sqrt(Box<ExprTree>),
}

impl ExprTree {
    pub fn neg(self) -> ExprTree {
        ExprTree::Product(vec![ExprTree::Num(-Rat::one()), self])
    }

    pub fn recip(self) -> ExprTree {
        ExprTree::Pow(Box::new(self), -Rat::one())
    }

    pub fn size(&self) -> usize {
        match self {
            ExprTree::Num(_) | ExprTree::Sym(_) => 1,
            ExprTree::Sum(v) | ExprTree::Product(v) => 1 + v.iter().map(|t| t.size()).sum::<usize>(),
            ExprTree::Pow(b, _) => 1 + b.size(),
            ExprTree::Exp(a) | ExprTree::Ln(a) | ExprTree::Arctan(a) | ExprTree::Sqrt(a) => 1 + a.size(),
        }
    }
}

/// Canonical form of a tree. Fails only on a literal division by zero or `ln(0)`.
pub fn normalize(tree: &ExprTree) -> Result<Expr, SymbolicError> {
    Ok(match tree {
        ExprTree::Num(r) => Expr::rat(r.clone()),
        ExprTree::Sym(s) => Expr::symbol(s.clone()),
        ExprTree::Sum(v) => {
            let mut acc = Expr::zero();
            for t in v {
                acc = &acc + &normalize(t)?;
            }
            acc
        }
        ExprTree::Product(v) => {
            let mut acc = Expr::one();
            for t in v {
                acc = &acc * &normalize(t)?;
            }
            acc
        }
        ExprTree::Pow(b, e) => normalize(b)?.pow_rat(e)?,
        ExprTree::Exp(a) => normalize(a)?.exp(),
        ExprTree::Ln(a) => normalize(a)?.ln()?,
        ExprTree::Arctan(a) => normalize(a)?.arctan(),
        ExprTree::Sqrt(a) => normalize(a)?.sqrt()?,
    })
}

fn atom_tree(a: &Atom) -> ExprTree {
    match a {
        Atom::Sym(s) => ExprTree::Sym(s.clone()),
        Atom::Fn(f, arg) => {
            let arg = Box::new(arg.to_tree());
            match f {
                Func::Exp => ExprTree::Exp(arg),
                Func::Ln => ExprTree::Ln(arg),
                Func::Arctan => ExprTree::Arctan(arg),
            }
        }
        Atom::Root(p) => poly_tree(p),
    }
}

fn monomial_tree(m: &Monomial, c: &Rat) -> ExprTree {
    let mut factors = Vec::new();
    if !c.is_one() || m.is_one() {
        factors.push(ExprTree::Num(c.clone()));
    }
    for (a, e) in m.factors() {
        let base = atom_tree(a);
        if e.is_one() {
            factors.push(base);
        } else if *e == rat::frac(1, 2) {
            factors.push(ExprTree::Sqrt(Box::new(base)));
        } else {
            factors.push(ExprTree::Pow(Box::new(base), e.clone()));
        }
    }
    if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        ExprTree::Product(factors)
    }
}

fn poly_tree(p: &Poly) -> ExprTree {
    let mut terms: Vec<ExprTree> = p.terms().rev().map(|(m, c)| monomial_tree(m, c)).collect();
    match terms.len() {
        0 => ExprTree::Num(Rat::from_integer(0.into())),
        1 => terms.pop().unwrap(),
        _ => ExprTree::Sum(terms),
    }
}

impl Expr {
    /// Tree view of the canonical form; `normalize(&e.to_tree()) == e`.
    pub fn to_tree(&self) -> ExprTree {
        let n = poly_tree(self.numer());
        if self.denom().is_one() {
            return n;
        }
        let d = poly_tree(self.denom());
        ExprTree::Product(vec![n, d.recip()])
    }

    pub fn normalize(&self) -> Expr {
        normalize(&self.to_tree()).expect("canonical trees normalize")
    }
}
