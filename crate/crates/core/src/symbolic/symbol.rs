use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Multi-index of a jet coordinate over the independent variables `x` and `t`.
///
/// Stored as derivative counts; the canonical string lists every `x` before every `t`,
/// so `u_tx` and `u_xt` name the same coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct JetIndex {
    pub nx: u32,
    pub nt: u32,
}

impl JetIndex {
    pub const fn new(nx: u32, nt: u32) -> Self {
        JetIndex { nx, nt }
    }

    pub fn order(&self) -> u32 {
        self.nx + self.nt
    }

    pub fn bump(&self, dir: Direction) -> JetIndex {
        match dir {
            Direction::X => JetIndex::new(self.nx + 1, self.nt),
            Direction::T => JetIndex::new(self.nx, self.nt + 1),
        }
    }

    pub fn label(&self) -> String {
        let mut s = "x".repeat(self.nx as usize);
        s.push_str(&"t".repeat(self.nt as usize));
        s
    }

    /// All multi-indices of order `1..=k`, ordered by order then label.
    pub fn all_up_to(k: u32) -> Vec<JetIndex> {
        let mut out = Vec::new();
        for ord in 1..=k {
            for nt in 0..=ord {
                out.push(JetIndex::new(ord - nt, nt));
            }
        }
        out.sort();
        out
    }

    pub fn parse(label: &str) -> Option<JetIndex> {
        if label.is_empty() {
            return None;
        }
        let mut idx = JetIndex::new(0, 0);
        for c in label.chars() {
            match c {
                'x' => idx.nx += 1,
                't' => idx.nt += 1,
                _ => return None,
            }
        }
        Some(idx)
    }
}

impl Ord for JetIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.label().cmp(&other.label()))
    }
}

impl PartialOrd for JetIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    X,
    T,
}

/// Role of a symbol. The declaration order is the monomial order used for output.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Perturbation,
    Parameter,
    IndependentX,
    IndependentT,
    Dependent,
    Jet(JetIndex),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    kind: SymbolKind,
    name: Arc<str>,
}

impl Symbol {
    pub fn x() -> Symbol {
        Symbol { kind: SymbolKind::IndependentX, name: "x".into() }
    }

    pub fn t() -> Symbol {
        Symbol { kind: SymbolKind::IndependentT, name: "t".into() }
    }

    pub fn u() -> Symbol {
        Symbol { kind: SymbolKind::Dependent, name: "u".into() }
    }

    pub fn eps() -> Symbol {
        Symbol { kind: SymbolKind::Perturbation, name: "eps".into() }
    }

    pub fn jet(idx: JetIndex) -> Symbol {
        assert!(idx.order() > 0, "order-zero jet is the dependent variable");
        Symbol { kind: SymbolKind::Jet(idx), name: format!("u_{}", idx.label()).into() }
    }

    pub fn param(name: &str) -> Symbol {
        Symbol::from_name(name)
    }

    /// Resolves a textual name to its symbol: `x`, `t`, `u`, `eps`, `u_<x|t>+`, anything else is a parameter.
    pub fn from_name(name: &str) -> Symbol {
        match name {
            "x" => Symbol::x(),
            "t" => Symbol::t(),
            "u" => Symbol::u(),
            "eps" | "ε" => Symbol::eps(),
            _ => {
                if let Some(idx) = name.strip_prefix("u_").and_then(JetIndex::parse) {
                    Symbol::jet(idx)
                } else {
                    Symbol { kind: SymbolKind::Parameter, name: name.into() }
                }
            }
        }
    }

    /// Independent variable `dir` as a symbol.
    pub fn independent(dir: Direction) -> Symbol {
        match dir {
            Direction::X => Symbol::x(),
            Direction::T => Symbol::t(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &SymbolKind {
        &self.kind
    }

    /// Jet multi-index; `u` itself has the empty index.
    pub fn jet_index(&self) -> Option<JetIndex> {
        match self.kind {
            SymbolKind::Dependent => Some(JetIndex::new(0, 0)),
            SymbolKind::Jet(j) => Some(j),
            _ => None,
        }
    }

    pub fn is_parameter(&self) -> bool {
        matches!(self.kind, SymbolKind::Parameter | SymbolKind::Perturbation)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_names_are_canonical() {
        assert_eq!(Symbol::from_name("u_tx"), Symbol::from_name("u_xt"));
        assert_eq!(Symbol::from_name("u_tx").name(), "u_xt");
        assert_eq!(Symbol::from_name("u_q").kind(), &SymbolKind::Parameter);
    }

    #[test]
    fn monomial_order() {
        let mut v = vec![
            Symbol::from_name("u_xx"),
            Symbol::u(),
            Symbol::from_name("u_t"),
            Symbol::t(),
            Symbol::x(),
            Symbol::param("a"),
            Symbol::eps(),
            Symbol::from_name("u_x"),
        ];
        v.sort();
        let names: Vec<_> = v.iter().map(|s| s.name().to_string()).collect();
        assert_eq!(names, ["eps", "a", "x", "t", "u", "u_t", "u_x", "u_xx"]);
    }

    #[test]
    fn multi_indices() {
        let all = JetIndex::all_up_to(2);
        let labels: Vec<_> = all.iter().map(|j| j.label()).collect();
        assert_eq!(labels, ["t", "x", "tt", "xt", "xx"]);
    }
}
