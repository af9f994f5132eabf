//! Text and LaTeX printers. The text form is accepted by [`super::parse`].

use std::fmt;

use num_traits::{One, Signed};

use super::expr::Expr;
use super::rat::{self, Rat};
use super::symbol::{Symbol, SymbolKind};
use super::tree::ExprTree;

// binding strength of the printed form: sum < negation < product < power < atom
const SUM: u8 = 1;
const NEG: u8 = 2;
const PRODUCT: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

fn num_prec(r: &Rat) -> u8 {
    if r.is_negative() {
        NEG
    } else if !rat::is_integer(r) {
        PRODUCT
    } else {
        ATOM
    }
}

fn prec(t: &ExprTree) -> u8 {
    match t {
        ExprTree::Num(r) => num_prec(r),
        ExprTree::Sym(_) | ExprTree::Exp(_) | ExprTree::Ln(_) | ExprTree::Arctan(_) | ExprTree::Sqrt(_) => ATOM,
        ExprTree::Sum(v) if v.len() > 1 => SUM,
        ExprTree::Sum(v) | ExprTree::Product(v) if v.len() == 1 => prec(&v[0]),
        ExprTree::Sum(_) => ATOM,
        ExprTree::Product(v) if v.is_empty() => ATOM,
        ExprTree::Product(v) => match &v[0] {
            ExprTree::Num(r) if r.is_negative() => NEG,
            _ => PRODUCT,
        },
        ExprTree::Pow(_, e) if e.is_negative() => PRODUCT,
        ExprTree::Pow(_, _) => POW,
    }
}

fn wrap(t: &ExprTree, min: u8) -> String {
    let s = text(t);
    if prec(t) < min {
        format!("({s})")
    } else {
        s
    }
}

fn exponent_text(e: &Rat) -> String {
    if rat::is_integer(e) && !e.is_negative() {
        rat::fmt_rat(e)
    } else {
        format!("({})", rat::fmt_rat(e))
    }
}

/// Text form of a tree in the expression grammar.
pub fn text(t: &ExprTree) -> String {
    match t {
        ExprTree::Num(r) => rat::fmt_rat(r),
        ExprTree::Sym(s) => s.name().to_string(),
        ExprTree::Sum(v) => {
            if v.is_empty() {
                return "0".into();
            }
            let mut out = String::new();
            for (i, term) in v.iter().enumerate() {
                let s = wrap(term, NEG);
                if i == 0 {
                    out.push_str(&s);
                } else if let Some(rest) = s.strip_prefix('-') {
                    out.push_str(" - ");
                    out.push_str(rest);
                } else {
                    out.push_str(" + ");
                    out.push_str(&s);
                }
            }
            out
        }
        ExprTree::Product(v) => product_text(v),
        ExprTree::Pow(b, e) => {
            if e.is_negative() {
                let inv = ExprTree::Pow(b.clone(), -e.clone());
                let base = if (-e).is_one() { b.as_ref() } else { &inv };
                return format!("1/{}", wrap(base, ATOM));
            }
            format!("{}^{}", wrap(b, ATOM), exponent_text(e))
        }
        ExprTree::Exp(a) => format!("exp({})", text(a)),
        ExprTree::Ln(a) => format!("ln({})", text(a)),
        ExprTree::Arctan(a) => format!("arctan({})", text(a)),
        ExprTree::Sqrt(a) => format!("sqrt({})", text(a)),
    }
}

fn product_text(v: &[ExprTree]) -> String {
    let mut sign = "";
    let mut numer: Vec<String> = Vec::new();
    let mut denom: Vec<ExprTree> = Vec::new();
    for (i, f) in v.iter().enumerate() {
        match f {
            ExprTree::Num(r) if i == 0 => {
                if r.is_negative() {
                    sign = "-";
                }
                if !r.abs().is_one() {
                    numer.push(rat::fmt_rat(&r.abs()));
                }
            }
            ExprTree::Pow(b, e) if e.is_negative() => {
                if (-e).is_one() {
                    denom.push((**b).clone());
                } else {
                    denom.push(ExprTree::Pow(b.clone(), -e.clone()));
                }
            }
            _ => numer.push(wrap(f, POW)),
        }
    }
    let n = if numer.is_empty() { "1".to_string() } else { numer.join("*") };
    match denom.len() {
        0 => format!("{sign}{n}"),
        1 => format!("{sign}{n}/{}", wrap(&denom[0], POW)),
        _ => format!("{sign}{n}/{}", wrap(&ExprTree::Product(denom), POW)),
    }
}

/// LaTeX form of a tree.
pub fn latex(t: &ExprTree) -> String {
    match t {
        ExprTree::Num(r) => latex_rat(r),
        ExprTree::Sym(s) => latex_symbol(s),
        ExprTree::Sum(v) => {
            let mut out = String::new();
            for (i, term) in v.iter().enumerate() {
                let s = latex_wrap(term, NEG);
                if i == 0 {
                    out.push_str(&s);
                } else if let Some(rest) = s.strip_prefix('-') {
                    out.push_str(" - ");
                    out.push_str(rest);
                } else {
                    out.push_str(" + ");
                    out.push_str(&s);
                }
            }
            out
        }
        ExprTree::Product(v) => {
            let mut sign = "";
            let mut numer = Vec::new();
            let mut denom = Vec::new();
            for (i, f) in v.iter().enumerate() {
                match f {
                    ExprTree::Num(r) if i == 0 => {
                        if r.is_negative() {
                            sign = "-";
                        }
                        let a = r.abs();
                        if !a.numer().is_one() || v.len() == 1 {
                            numer.push(a.numer().to_string());
                        }
                        if !a.denom().is_one() {
                            denom.push(a.denom().to_string());
                        }
                    }
                    ExprTree::Pow(b, e) if e.is_negative() => {
                        let p = ExprTree::Pow(b.clone(), -e.clone());
                        denom.push(if (-e).is_one() { latex(b) } else { latex(&p) });
                    }
                    _ => numer.push(latex_wrap(f, POW)),
                }
            }
            let n = if numer.is_empty() { "1".to_string() } else { numer.join(" ") };
            if denom.is_empty() {
                format!("{sign}{n}")
            } else {
                format!("{sign}\\frac{{{n}}}{{{}}}", denom.join(" "))
            }
        }
        ExprTree::Pow(b, e) => {
            if e.is_negative() {
                return latex(&ExprTree::Product(vec![ExprTree::Num(Rat::one()), t.clone()]));
            }
            format!("{}^{{{}}}", latex_wrap(b, ATOM), rat::fmt_rat(e))
        }
        ExprTree::Exp(a) => format!("e^{{{}}}", latex(a)),
        ExprTree::Ln(a) => format!("\\ln\\left({}\\right)", latex(a)),
        ExprTree::Arctan(a) => format!("\\arctan\\left({}\\right)", latex(a)),
        ExprTree::Sqrt(a) => format!("\\sqrt{{{}}}", latex(a)),
    }
}

fn latex_wrap(t: &ExprTree, min: u8) -> String {
    let s = latex(t);
    if prec(t) < min {
        format!("\\left({s}\\right)")
    } else {
        s
    }
}

fn latex_rat(r: &Rat) -> String {
    if rat::is_integer(r) {
        r.numer().to_string()
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
    }
}

pub fn latex_symbol(s: &Symbol) -> String {
    match s.kind() {
        SymbolKind::Perturbation => "\\varepsilon".into(),
        SymbolKind::Jet(j) => format!("u_{{{}}}", j.label()),
        _ => {
            let name = s.name();
            match name {
                "mu" => "\\mu".into(),
                _ => match name.split_once('_') {
                    Some((head, tail)) if !tail.is_empty() => format!("{head}_{{{tail}}}"),
                    _ => {
                        // A5 -> A_{5}
                        let idx = name.find(|c: char| c.is_ascii_digit());
                        match idx {
                            Some(i) if i > 0 => format!("{}_{{{}}}", &name[..i], &name[i..]),
                            _ => name.to_string(),
                        }
                    }
                },
            }
        }
    }
}

impl Expr {
    pub fn to_latex(&self) -> String {
        latex(&self.to_tree())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text(&self.to_tree()))
    }
}

impl fmt::Display for ExprTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text(self))
    }
}
