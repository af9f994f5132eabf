//! Determining equations for exact and first-order approximate point symmetries.
//!
//! The unknown generator is expanded over a finite polynomial ansatz. Its residual is linear
//! in the ansatz coefficients, so the determining equations become a rational linear system
//! whose rows are the distinct monomials of the residual.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::jet::{self, apply_prolonged, prolong, total_derivative, VectorField};
use crate::linalg::{span_basis, Matrix};
use crate::symbolic::rat::{fmt_rat, primitive_integer};
use crate::symbolic::{Direction, EpsTruncated, Expr, JetIndex, Monomial, Poly, Rat, Symbol};
use crate::{Error, Result};

/// `F0 + eps*F1 = 0`, solved for `u_t` on the equation manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbedPDE {
    pub f0: Expr,
    pub f1: Expr,
    pub jet_order: u32,
    rhs0: Expr,
    rhs_eps: Expr,
}

fn has_t_jet(e: &Expr) -> bool {
    e.free_symbols().iter().any(|s| matches!(s.jet_index(), Some(j) if j.nt > 0))
}

impl PerturbedPDE {
    pub fn new(f0: Expr, f1: Expr) -> Result<PerturbedPDE> {
        let eps = Symbol::eps();
        if f0.depends_on(&eps) || f1.depends_on(&eps) {
            return Err(Error::NotEvolution("F0 and F1 must be eps-free".into()));
        }
        let ut = Symbol::jet(JetIndex::new(0, 1));
        let c = f0.diff(&ut);
        if c.is_zero() || has_t_jet(&c) {
            return Err(Error::NotEvolution("F0 must be linear in u_t".into()));
        }
        let rest = &f0 - &(&c * &Expr::symbol(ut));
        if has_t_jet(&rest) || has_t_jet(&f1) {
            return Err(Error::NotEvolution("t-derivatives other than u_t".into()));
        }
        let rhs0 = (-&rest).checked_div(&c)?;
        let rhs_eps = (-&(&rest + &(&Expr::eps() * &f1))).checked_div(&c)?;
        let jet_order = jet::jet_order(&f0).max(jet::jet_order(&f1)).max(1);
        Ok(PerturbedPDE { f0, f1, jet_order, rhs0, rhs_eps })
    }

    pub fn parse(f0: &str, f1: &str) -> Result<PerturbedPDE> {
        PerturbedPDE::new(crate::symbolic::parse(f0)?, crate::symbolic::parse(f1)?)
    }

    /// `u_t` on the unperturbed manifold `F0 = 0`.
    pub fn evolution_rhs(&self) -> &Expr {
        &self.rhs0
    }

    pub fn full(&self) -> Expr {
        &self.f0 + &(&Expr::eps() * &self.f1)
    }
}

/// Eliminates every t-derivative through total derivatives of `u_t = rhs`.
pub(crate) struct OnShell {
    rhs: Expr,
    cache: BTreeMap<JetIndex, Expr>,
}

impl OnShell {
    pub(crate) fn new(rhs: &Expr) -> OnShell {
        OnShell { rhs: rhs.clone(), cache: BTreeMap::new() }
    }

    fn value(&mut self, j: JetIndex) -> Result<Expr> {
        if let Some(v) = self.cache.get(&j) {
            return Ok(v.clone());
        }
        let v = if j.nt == 1 && j.nx == 0 {
            self.rhs.clone()
        } else if j.nx > 0 {
            let prev = self.value(JetIndex::new(j.nx - 1, j.nt))?;
            total_derivative(&prev, Direction::X, u32::MAX)?
        } else {
            let prev = self.value(JetIndex::new(0, j.nt - 1))?;
            let d = total_derivative(&prev, Direction::T, u32::MAX)?;
            self.apply(&d)?
        };
        self.cache.insert(j, v.clone());
        Ok(v)
    }

    pub(crate) fn apply(&mut self, e: &Expr) -> Result<Expr> {
        let mut b = BTreeMap::new();
        for s in e.free_symbols() {
            if let Some(j) = s.jet_index() {
                if j.nt > 0 {
                    b.insert(s, self.value(j)?);
                }
            }
        }
        if b.is_empty() {
            return Ok(e.clone());
        }
        Ok(e.substitute(&b)?)
    }
}

/// `pr X (F0)` restricted to `F0 = 0`, for an eps-free field.
pub fn exact_residual(x: &VectorField, pde: &PerturbedPDE) -> Result<Expr> {
    let px = prolong(x, pde.jet_order)?;
    let r = apply_prolonged(&px, &pde.f0)?;
    OnShell::new(&pde.rhs0).apply(&r)
}

/// `pr X (F0 + eps*F1)` on the perturbed manifold, truncated at eps^2.
pub fn approximate_residual(x: &VectorField, pde: &PerturbedPDE) -> Result<EpsTruncated> {
    let px = prolong(&x.eps_truncated()?, pde.jet_order)?;
    let r = apply_prolonged(&px, &pde.full())?;
    let r = OnShell::new(&pde.rhs_eps).apply(&r)?;
    Ok(r.eps_truncate()?)
}

/// The order-eps defect `H` of an exact symmetry on the perturbed equation.
pub fn auxiliary_h(x0: &VectorField, pde: &PerturbedPDE) -> Result<Expr> {
    if !x0.is_eps_free() {
        return Err(Error::NotExactSymmetry);
    }
    let r = approximate_residual(x0, pde)?;
    if !r.order0.is_zero() {
        return Err(Error::NotExactSymmetry);
    }
    Ok(r.order1)
}

/// Polynomial ansatz for `xi`, `tau` (shared bounds) and `phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ansatz {
    pub xt_deg_xi_tau: u32,
    pub u_deg_xi_tau: u32,
    pub xt_deg_phi: u32,
    pub u_deg_phi: u32,
}

impl Default for Ansatz {
    fn default() -> Self {
        Ansatz { xt_deg_xi_tau: 3, u_deg_xi_tau: 0, xt_deg_phi: 2, u_deg_phi: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Component {
    Xi,
    Tau,
    Phi,
}

impl Component {
    fn name(&self) -> &'static str {
        match self {
            Component::Xi => "xi",
            Component::Tau => "tau",
            Component::Phi => "phi",
        }
    }
}

/// One ansatz coefficient: `x^i t^j u^k` in the given component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Unknown {
    pub component: Component,
    pub powers: [u32; 3],
}

impl Unknown {
    pub fn name(&self) -> String {
        let [i, j, k] = self.powers;
        format!("{}_{i}_{j}_{k}", self.component.name())
    }

    fn monomial(&self) -> Expr {
        let [i, j, k] = self.powers;
        let p = |e: Expr, n: u32| e.pow_int(n as i64).expect("nonnegative power");
        &(&p(Expr::x(), i) * &p(Expr::t(), j)) * &p(Expr::u(), k)
    }

    pub fn field(&self) -> VectorField {
        let m = self.monomial();
        let z = Expr::zero;
        match self.component {
            Component::Xi => VectorField { xi: m, tau: z(), phi: z() },
            Component::Tau => VectorField { xi: z(), tau: m, phi: z() },
            Component::Phi => VectorField { xi: z(), tau: z(), phi: m },
        }
    }

    fn degree(&self) -> u32 {
        self.powers.iter().sum()
    }
}

impl Ansatz {
    /// `xi`, `tau` of degree `n` in (x, t); `phi` affine in u with (x, t)-degree `n - 1`.
    pub fn with_degree(n: u32) -> Ansatz {
        Ansatz { xt_deg_xi_tau: n, u_deg_xi_tau: 0, xt_deg_phi: n.saturating_sub(1), u_deg_phi: u32::from(n > 0) }
    }

    pub fn enlarged(&self) -> Ansatz {
        Ansatz {
            xt_deg_xi_tau: self.xt_deg_xi_tau + 1,
            u_deg_xi_tau: self.u_deg_xi_tau + 1,
            xt_deg_phi: self.xt_deg_phi + 1,
            u_deg_phi: self.u_deg_phi + 1,
        }
    }

    /// Unknowns grouped by component, then by total degree, then exponents.
    pub fn unknowns(&self) -> Vec<Unknown> {
        let mut out = Vec::new();
        for (component, xt, ud) in [
            (Component::Xi, self.xt_deg_xi_tau, self.u_deg_xi_tau),
            (Component::Tau, self.xt_deg_xi_tau, self.u_deg_xi_tau),
            (Component::Phi, self.xt_deg_phi, self.u_deg_phi),
        ] {
            let mut group = Vec::new();
            for k in 0..=ud {
                for i in 0..=xt {
                    for j in 0..=(xt - i) {
                        group.push(Unknown { component, powers: [i, j, k] });
                    }
                }
            }
            group.sort_by_key(|u| (u.degree(), std::cmp::Reverse(u.powers)));
            out.extend(group);
        }
        out
    }
}

/// Coefficient matrix of the determining equations, one row per residual monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub unknowns: Vec<Unknown>,
    pub rows: Vec<Monomial>,
    pub matrix: Matrix,
    pub rhs: Option<Vec<Rat>>,
}

/// Numerators of `exprs` over a common denominator, as `monomial -> coefficient` maps.
fn common_numerators(exprs: &[Expr]) -> Vec<BTreeMap<Monomial, Rat>> {
    let mut dens: Vec<Poly> = Vec::new();
    for e in exprs {
        if !e.denom().is_one() && !dens.contains(e.denom()) {
            dens.push(e.denom().clone());
        }
    }
    let l = dens.iter().fold(Expr::one(), |acc, d| &acc * &Expr::from_poly(d.clone()));
    exprs
        .iter()
        .map(|e| {
            let scaled = e * &l;
            debug_assert!(scaled.is_polynomial());
            scaled.numer().terms().map(|(m, c)| (m.clone(), c.clone())).collect()
        })
        .collect()
}

impl LinearSystem {
    fn assemble(unknowns: Vec<Unknown>, residuals: &[Expr], rhs: Option<&Expr>) -> LinearSystem {
        let mut all: Vec<Expr> = residuals.to_vec();
        if let Some(h) = rhs {
            all.push(h.clone());
        }
        let nums = common_numerators(&all);
        let mut rows: Vec<Monomial> = nums.iter().flat_map(|m| m.keys().cloned()).collect();
        rows.sort();
        rows.dedup();
        let index: BTreeMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut matrix = Matrix::zeros(rows.len(), unknowns.len());
        for (k, num) in nums.iter().take(unknowns.len()).enumerate() {
            for (m, c) in num {
                matrix[(index[m], k)] = c.clone();
            }
        }
        let rhs = rhs.map(|_| {
            let mut b = vec![Rat::zero(); rows.len()];
            for (m, c) in &nums[unknowns.len()] {
                b[index[m]] = c.clone();
            }
            b
        });
        LinearSystem { unknowns, rows, matrix, rhs }
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.rows.iter().enumerate() {
            let mono = Expr::from_monomial(m.clone(), Rat::one());
            let mut terms = Vec::new();
            for (k, u) in self.unknowns.iter().enumerate() {
                let c = &self.matrix[(i, k)];
                if !c.is_zero() {
                    terms.push(format!("{}*{}", fmt_rat(c), u.name()));
                }
            }
            let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ").replace("+ -", "- ") };
            match &self.rhs {
                Some(b) => writeln!(f, "{mono} : {lhs} = {}", fmt_rat(&-b[i].clone()))?,
                None => writeln!(f, "{mono} : {lhs}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GeneratorOrder {
    /// exact symmetry, or its deformation `X0 + eps*X1`
    Order0,
    /// eps times an exact symmetry
    Order1,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub field: VectorField,
    pub order: GeneratorOrder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorBasis {
    pub generators: Vec<Generator>,
    /// ansatz coordinates of each order-0 generator
    pub coords: Vec<Vec<Rat>>,
    pub system: LinearSystem,
}

impl GeneratorBasis {
    pub fn fields(&self) -> Vec<VectorField> {
        self.generators.iter().map(|g| g.field.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

fn field_from_coords(unknowns: &[Unknown], v: &[Rat]) -> VectorField {
    let mut x = VectorField::zero();
    for (u, c) in unknowns.iter().zip(v) {
        if !c.is_zero() {
            x = x.add(&u.field().scale(&Expr::rat(c.clone())));
        }
    }
    x
}

fn residual_system(pde: &PerturbedPDE, ansatz: &Ansatz, rhs: Option<&Expr>) -> Result<LinearSystem> {
    let unknowns = ansatz.unknowns();
    let residuals: Vec<Expr> = unknowns.iter().map(|u| exact_residual(&u.field(), pde)).collect::<Result<_>>()?;
    Ok(LinearSystem::assemble(unknowns, &residuals, rhs))
}

fn basis_key(unknowns: &[Unknown], v: &[Rat]) -> (usize, u32, Vec<usize>) {
    let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    let deg = support.iter().map(|&i| unknowns[i].degree()).max().unwrap_or(0);
    (support.len(), deg, support)
}

/// Exact point symmetries of `F0 = 0` within the ansatz.
pub fn solve_exact(pde: &PerturbedPDE, ansatz: &Ansatz) -> Result<GeneratorBasis> {
    let system = residual_system(pde, ansatz, None)?;
    let ns = system.matrix.nullspace();
    let mut coords: Vec<Vec<Rat>> = span_basis(&ns, system.unknowns.len()).iter().map(|v| primitive_integer(v)).collect();
    coords.sort_by_key(|v| basis_key(&system.unknowns, v));
    let generators = coords
        .iter()
        .map(|v| Generator { field: field_from_coords(&system.unknowns, v), order: GeneratorOrder::Order0 })
        .collect();
    Ok(GeneratorBasis { generators, coords, system })
}

/// Particular deformation plus the homogeneous part (the exact-symmetry space).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub h: Expr,
    pub particular: VectorField,
    pub particular_coords: Vec<Rat>,
    pub homogeneous: Vec<Vec<Rat>>,
    pub unknowns: Vec<Unknown>,
}

impl AffineSolution {
    pub fn homogeneous_fields(&self) -> Vec<VectorField> {
        self.homogeneous.iter().map(|v| field_from_coords(&self.unknowns, v)).collect()
    }

    /// Whether `x1` solves the deformation equation, i.e. differs from the particular solution by an exact symmetry.
    pub fn contains(&self, x1: &VectorField, pde: &PerturbedPDE) -> Result<bool> {
        Ok((&exact_residual(x1, pde)? + &self.h).is_zero())
    }
}

/// Solves `pr X1 (F0)|_{F0=0} + H = 0` for the deformation `X1`.
pub fn solve_deformation(x0: &VectorField, pde: &PerturbedPDE, ansatz: &Ansatz) -> Result<AffineSolution> {
    if !exact_residual(x0, pde)?.is_zero() {
        return Err(Error::NotExactSymmetry);
    }
    let h = auxiliary_h(x0, pde)?;
    let system = residual_system(pde, ansatz, Some(&h))?;
    let b: Vec<Rat> = system.rhs.as_ref().expect("inhomogeneous").iter().map(|c| -c.clone()).collect();
    let mut x = system.matrix.solve(&b).ok_or_else(|| Error::UnstableSymmetry(x0.to_string()))?;
    let homogeneous = span_basis(&system.matrix.nullspace(), system.unknowns.len());
    // reduce modulo the homogeneous space: zero on its pivot columns
    for row in &homogeneous {
        let p = row.iter().position(|c| !c.is_zero()).expect("nonzero basis row");
        if !x[p].is_zero() {
            let f = x[p].clone() / &row[p];
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi -= &f * ri;
            }
        }
    }
    let particular = field_from_coords(&system.unknowns, &x);
    if !(&exact_residual(&particular, pde)? + &h).is_zero() {
        return Err(Error::Internal("deformation fails its residual check".into()));
    }
    let homogeneous = homogeneous.iter().map(|v| primitive_integer(v)).collect();
    Ok(AffineSolution { h, particular, particular_coords: x, homogeneous, unknowns: system.unknowns })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximateSymmetries {
    pub exact: GeneratorBasis,
    /// `None` for an unstable exact generator
    pub deformations: Vec<Option<AffineSolution>>,
    /// `X0^i + eps*X1^i` for each stable exact generator, then `eps*X0^i` for all of them
    pub basis: Vec<Generator>,
    pub stable: Vec<bool>,
}

impl ApproximateSymmetries {
    /// Stable `X0^i`, then every `eps*X0^i`: the undeformed basis on which the commutator table is computed.
    pub fn algebra_basis(&self) -> Vec<VectorField> {
        let eps = Expr::eps();
        let exact = self.exact.fields();
        let stable = exact.iter().zip(&self.stable).filter(|(_, s)| **s).map(|(x, _)| x.clone());
        stable.chain(exact.iter().map(|x| x.scale(&eps))).collect()
    }

    pub fn all_stable(&self) -> bool {
        self.stable.iter().all(|&s| s)
    }
}

pub fn undeformed_basis(exact: &[VectorField]) -> Vec<VectorField> {
    let eps = Expr::eps();
    exact.iter().cloned().chain(exact.iter().map(|x| x.scale(&eps))).collect()
}

/// First-order approximate symmetries: deformed exact generators and their eps-multiples.
/// An unstable generator contributes only its eps-multiple.
pub fn approximate_symmetries(pde: &PerturbedPDE, ansatz: &Ansatz) -> Result<ApproximateSymmetries> {
    let exact = solve_exact(pde, ansatz)?;
    let mut deformations = Vec::new();
    for g in &exact.generators {
        match solve_deformation(&g.field, pde, ansatz) {
            Ok(d) => deformations.push(Some(d)),
            Err(Error::UnstableSymmetry(_)) => deformations.push(None),
            Err(e) => return Err(e),
        }
    }
    let stable = deformations.iter().map(Option::is_some).collect();
    let eps = Expr::eps();
    let mut basis: Vec<Generator> = exact
        .generators
        .iter()
        .zip(&deformations)
        .filter_map(|(g, d)| d.as_ref().map(|d| Generator { field: g.field.add(&d.particular.scale(&eps)), order: GeneratorOrder::Order0 }))
        .collect();
    basis.extend(
        exact.generators.iter().map(|g| Generator { field: g.field.scale(&eps), order: GeneratorOrder::Order1 }),
    );
    for g in &basis {
        if !approximate_residual(&g.field, pde)?.is_zero() {
            return Err(Error::Internal(format!("approximate generator {} fails its residual", g.field)));
        }
    }
    Ok(ApproximateSymmetries { exact, deformations, basis, stable })
}

/// `true` when the truncated approximate residual of `x` is `(0, 0)`.
pub fn is_approximate_symmetry(x: &VectorField, pde: &PerturbedPDE) -> Result<bool> {
    Ok(approximate_residual(x, pde)?.is_zero())
}
