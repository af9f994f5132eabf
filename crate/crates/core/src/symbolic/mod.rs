//! Exact symbolic expressions over the rationals.

mod expr;
mod mpoly;
mod parse;
mod poly;
mod print;
mod probe;
pub mod rat;
mod symbol;
mod tree;

pub use expr::{EpsTruncated, Expr};
pub use parse::{parse, parse_tree};
pub use poly::{Atom, Func, Monomial, Poly};
pub use print::{latex, latex_symbol, text};
pub use probe::{probe_zero, ZeroProbe};
pub use rat::Rat;
pub use symbol::{Direction, JetIndex, Symbol, SymbolKind};
pub use tree::{normalize, ExprTree};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SymbolicError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not truncatable: {0}")]
    NotTruncatable(String),
    #[error("{0}")]
    Domain(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

/// Parses a known-good literal; panics on malformed input.
pub fn ex(src: &str) -> Expr {
    parse(src).unwrap_or_else(|e| panic!("bad expression literal {src:?}: {e}"))
}
