//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | factor
//! factor := base ('^' exponent)?
//! base   := number | symbol | '(' expr ')' | func '(' expr ')'
//! exponent := integer | '-' integer | '(' '-'? integer ('/' integer)? ')'
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::expr::Expr;
use super::rat::Rat;
use super::symbol::Symbol;
use super::tree::{normalize, ExprTree};
use super::SymbolicError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, SymbolicError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Spanned { tok: Tok::Int(s.parse().expect("digits")), line: l0, column: c0 });
            continue;
        }
        if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Spanned { tok: Tok::Ident(s), line: l0, column: c0 });
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push(Spanned { tok: Tok::Op(c), line: l0, column: c0 });
            column += 1;
            i += 1;
            continue;
        }
        return Err(SymbolicError::Parse { line, column, message: format!("unexpected character '{c}'") });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SymbolicError> {
        let t = &self.toks[self.pos];
        Err(SymbolicError::Parse { line: t.line, column: t.column, message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Op(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SymbolicError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<ExprTree, SymbolicError> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat('+') {
                terms.push(self.term()?);
            } else if self.eat('-') {
                terms.push(self.term()?.neg());
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { ExprTree::Sum(terms) })
    }

    fn term(&mut self) -> Result<ExprTree, SymbolicError> {
        let mut factors = vec![self.unary()?];
        loop {
            if self.eat('*') {
                factors.push(self.unary()?);
            } else if self.eat('/') {
                factors.push(self.unary()?.recip());
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { ExprTree::Product(factors) })
    }

    fn unary(&mut self) -> Result<ExprTree, SymbolicError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<ExprTree, SymbolicError> {
        let base = self.base()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return Ok(ExprTree::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, SymbolicError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.error("expected an integer"),
        }
    }

    fn exponent(&mut self) -> Result<Rat, SymbolicError> {
        if self.eat('(') {
            let neg = self.eat('-');
            let n = self.integer()?;
            let d = if self.eat('/') { self.integer()? } else { BigInt::one() };
            if d.is_zero() {
                return self.error("zero denominator in exponent");
            }
            self.expect(')')?;
            let r = Rat::new(n, d);
            return Ok(if neg { -r } else { r });
        }
        let neg = self.eat('-');
        let n = Rat::from_integer(self.integer()?);
        Ok(if neg { -n } else { n })
    }

    fn base(&mut self) -> Result<ExprTree, SymbolicError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(ExprTree::Num(Rat::from_integer(n)))
            }
            Tok::Ident(name) => {
                let start = self.pos;
                self.pos += 1;
                if self.eat('(') {
                    let arg = Box::new(self.expr()?);
                    self.expect(')')?;
                    return match name.as_str() {
                        "exp" => Ok(ExprTree::Exp(arg)),
                        "ln" => Ok(ExprTree::Ln(arg)),
                        "arctan" => Ok(ExprTree::Arctan(arg)),
                        "sqrt" => Ok(ExprTree::Sqrt(arg)),
                        _ => {
                            self.pos = start;
                            self.error(format!("unknown function '{name}'"))
                        }
                    };
                }
                if matches!(name.as_str(), "exp" | "ln" | "arctan" | "sqrt") {
                    return self.error(format!("expected '(' after '{name}'"));
                }
                Ok(ExprTree::Sym(Symbol::from_name(&name)))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => self.error("unexpected end of input"),
            Tok::Op(c) => self.error(format!("unexpected '{c}'")),
        }
    }
}

/// Parses text into an un-normalized tree.
pub fn parse_tree(src: &str) -> Result<ExprTree, SymbolicError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

/// Parses and normalizes.
pub fn parse(src: &str) -> Result<Expr, SymbolicError> {
    normalize(&parse_tree(src)?)
}

impl std::str::FromStr for Expr {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Expr, SymbolicError> {
        parse(s)
    }
}
