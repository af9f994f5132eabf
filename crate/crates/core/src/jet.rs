//! Point vector fields on (x, t, u), total derivatives and prolongation.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::symbolic::{Direction, EpsTruncated, Expr, JetIndex, Symbol};
use crate::{Error, Result};

/// `xi*d/dx + tau*d/dt + phi*d/du` with coefficients in x, t, u, eps and parameters.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VectorField {
    #[serde(serialize_with = "ser_expr")]
    pub xi: Expr,
    #[serde(serialize_with = "ser_expr")]
    pub tau: Expr,
    #[serde(serialize_with = "ser_expr")]
    pub phi: Expr,
}

pub(crate) fn ser_expr<S: serde::Serializer>(e: &Expr, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

fn is_jet(s: &Symbol) -> bool {
    matches!(s.jet_index(), Some(j) if j.order() > 0)
}

impl VectorField {
    pub fn new(xi: Expr, tau: Expr, phi: Expr) -> Result<VectorField> {
        for c in [&xi, &tau, &phi] {
            if let Some(s) = c.free_symbols().into_iter().find(is_jet) {
                return Err(Error::JetInCoefficient(s.to_string()));
            }
        }
        Ok(VectorField { xi, tau, phi })
    }

    /// Parses the three coefficients; panics on bad input (for literals).
    pub fn parse(xi: &str, tau: &str, phi: &str) -> VectorField {
        VectorField::new(crate::ex(xi), crate::ex(tau), crate::ex(phi)).expect("point field literal")
    }

    pub fn zero() -> VectorField {
        VectorField { xi: Expr::zero(), tau: Expr::zero(), phi: Expr::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.xi.is_zero() && self.tau.is_zero() && self.phi.is_zero()
    }

    pub fn components(&self) -> [&Expr; 3] {
        [&self.xi, &self.tau, &self.phi]
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField { xi: &self.xi + &other.xi, tau: &self.tau + &other.tau, phi: &self.phi + &other.phi }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField { xi: &self.xi - &other.xi, tau: &self.tau - &other.tau, phi: &self.phi - &other.phi }
    }

    pub fn scale(&self, c: &Expr) -> VectorField {
        VectorField { xi: &self.xi * c, tau: &self.tau * c, phi: &self.phi * c }
    }

    /// `X(f) = xi*f_x + tau*f_t + phi*f_u` for `f` on (x, t, u).
    pub fn apply(&self, f: &Expr) -> Expr {
        &(&(&self.xi * &f.diff(&Symbol::x())) + &(&self.tau * &f.diff(&Symbol::t()))) + &(&self.phi * &f.diff(&Symbol::u()))
    }

    /// Lie bracket `[X, Y]` without any truncation in eps.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        VectorField {
            xi: &self.apply(&other.xi) - &other.apply(&self.xi),
            tau: &self.apply(&other.tau) - &other.apply(&self.tau),
            phi: &self.apply(&other.phi) - &other.apply(&self.phi),
        }
    }

    pub fn substitute(&self, b: &BTreeMap<Symbol, Expr>) -> Result<VectorField> {
        Ok(VectorField { xi: self.xi.substitute(b)?, tau: self.tau.substitute(b)?, phi: self.phi.substitute(b)? })
    }

    /// Coefficient-wise split into `(X0, X1)` with `X = X0 + eps*X1 mod eps^2`.
    pub fn eps_split(&self) -> Result<(VectorField, VectorField)> {
        let parts: Vec<EpsTruncated> = self.components().iter().map(|c| c.eps_truncate()).collect::<std::result::Result<_, _>>()?;
        Ok((
            VectorField { xi: parts[0].order0.clone(), tau: parts[1].order0.clone(), phi: parts[2].order0.clone() },
            VectorField { xi: parts[0].order1.clone(), tau: parts[1].order1.clone(), phi: parts[2].order1.clone() },
        ))
    }

    /// `X0 + eps*X1` with eps^2 terms dropped.
    pub fn eps_truncated(&self) -> Result<VectorField> {
        let (a, b) = self.eps_split()?;
        Ok(a.add(&b.scale(&Expr::eps())))
    }

    pub fn is_eps_free(&self) -> bool {
        !self.components().iter().any(|c| c.depends_on(&Symbol::eps()))
    }

    pub fn to_latex(&self) -> String {
        let mut parts = Vec::new();
        for (c, d) in [(&self.xi, "x"), (&self.tau, "t"), (&self.phi, "u")] {
            if c.is_zero() {
                continue;
            }
            let op = format!("\\partial_{d}");
            let s = if c.is_one() {
                op
            } else if *c == -Expr::one() {
                format!("-{op}")
            } else if c.numer().len() > 1 {
                format!("\\left({}\\right){op}", c.to_latex())
            } else {
                format!("{}{op}", c.to_latex())
            };
            parts.push(s);
        }
        join_signed(parts, "0")
    }
}

pub(crate) fn join_signed(parts: Vec<String>, empty: &str) -> String {
    if parts.is_empty() {
        return empty.to_string();
    }
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, d) in [(&self.xi, "d_x"), (&self.tau, "d_t"), (&self.phi, "d_u")] {
            if c.is_zero() {
                continue;
            }
            let s = if c.is_one() {
                d.to_string()
            } else if *c == -Expr::one() {
                format!("-{d}")
            } else if c.numer().len() > 1 || !c.is_polynomial() {
                format!("({c})*{d}")
            } else {
                format!("{c}*{d}")
            };
            parts.push(s);
        }
        f.write_str(&join_signed(parts, "0"))
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Highest jet order among the symbols of `e` (0 when only u or no jet appears).
pub fn jet_order(e: &Expr) -> u32 {
    e.free_symbols().iter().filter_map(|s| s.jet_index()).map(|j| j.order()).max().unwrap_or(0)
}

/// Total derivative `D_x` or `D_t` on the jet space truncated at `max_order`.
pub fn total_derivative(e: &Expr, dir: Direction, max_order: u32) -> Result<Expr> {
    let mut out = e.diff(&Symbol::independent(dir));
    for s in e.free_symbols() {
        let Some(j) = s.jet_index() else { continue };
        let up = j.bump(dir);
        if up.order() > max_order {
            return Err(Error::JetOverflow { order: up.order(), max: max_order });
        }
        let d = e.diff(&s);
        if !d.is_zero() {
            out = &out + &(&Expr::symbol(Symbol::jet(up)) * &d);
        }
    }
    Ok(out)
}

pub fn jet_symbol(j: JetIndex) -> Expr {
    if j.order() == 0 {
        Expr::u()
    } else {
        Expr::symbol(Symbol::jet(j))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongedField {
    pub base: VectorField,
    pub order: u32,
    pub coeffs: BTreeMap<JetIndex, Expr>,
}

/// `k`-th prolongation in characteristic form:
/// `phi^J = D_J(phi - xi*u_x - tau*u_t) + xi*u_{Jx} + tau*u_{Jt}`.
pub fn prolong(x: &VectorField, k: u32) -> Result<ProlongedField> {
    assert!(k >= 1, "prolongation order must be at least 1");
    let ux = jet_symbol(JetIndex::new(1, 0));
    let ut = jet_symbol(JetIndex::new(0, 1));
    let q = &(&x.phi - &(&x.xi * &ux)) - &(&x.tau * &ut);
    let mut dq: BTreeMap<JetIndex, Expr> = BTreeMap::new();
    dq.insert(JetIndex::new(0, 0), q);
    let mut coeffs = BTreeMap::new();
    for j in JetIndex::all_up_to(k) {
        // x-derivatives first, so D_J = D_x^nx D_t^nt
        let (parent, dir) = if j.nx > 0 {
            (JetIndex::new(j.nx - 1, j.nt), Direction::X)
        } else {
            (JetIndex::new(0, j.nt - 1), Direction::T)
        };
        let d = total_derivative(&dq[&parent], dir, k + 1)?;
        let c = &(&d + &(&x.xi * &jet_symbol(j.bump(Direction::X)))) + &(&x.tau * &jet_symbol(j.bump(Direction::T)));
        dq.insert(j, d);
        coeffs.insert(j, c);
    }
    Ok(ProlongedField { base: x.clone(), order: k, coeffs })
}

/// `pr X (F)`.
pub fn apply_prolonged(px: &ProlongedField, f: &Expr) -> Result<Expr> {
    let ord = jet_order(f);
    if ord > px.order {
        return Err(Error::JetOverflow { order: ord, max: px.order });
    }
    let mut out = px.base.apply(f);
    for s in f.free_symbols() {
        let Some(j) = s.jet_index() else { continue };
        if j.order() == 0 {
            continue;
        }
        let d = f.diff(&s);
        if !d.is_zero() {
            out = &out + &(&px.coeffs[&j] * &d);
        }
    }
    Ok(out)
}
