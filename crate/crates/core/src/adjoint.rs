//! Closed-form adjoint action `Ad(exp(mu v_i)) = exp(-mu ad v_i)`.
//!
//! Matrix exponentials are computed exactly from the minimal polynomial: its rational roots
//! give spectral projectors and nilpotent parts, so every entry is a finite sum
//! `sum_l e^(l mu) p_l(mu)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::jet::join_signed;
use crate::liealg::{default_labels, EntryDiff, LieAlgebraTable};
use crate::linalg::{coordinates, Matrix};
use crate::symbolic::rat::{fmt_rat, is_integer, pow_int, rat, Rat};
use crate::symbolic::{latex_symbol, parse, Expr, Symbol};
use crate::{Error, Result};

/// `sum_l e^(l mu) p_l(mu)`; polynomials stored by ascending coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    terms: BTreeMap<Rat, Vec<Rat>>,
}

fn trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn factorial(n: usize) -> Rat {
    (1..=n).fold(Rat::one(), |acc, k| acc * rat(k as i64))
}

impl ExpPoly {
    pub fn zero() -> ExpPoly {
        ExpPoly::default()
    }

    pub fn constant(c: Rat) -> ExpPoly {
        ExpPoly::term(Rat::zero(), vec![c])
    }

    pub fn one() -> ExpPoly {
        ExpPoly::constant(Rat::one())
    }

    pub fn term(lambda: Rat, mut poly: Vec<Rat>) -> ExpPoly {
        trim(&mut poly);
        let mut terms = BTreeMap::new();
        if !poly.is_empty() {
            terms.insert(lambda, poly);
        }
        ExpPoly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Rat, Vec<Rat>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == ExpPoly::one()
    }

    /// Highest power of `mu` over all exponentials.
    pub fn degree(&self) -> usize {
        self.terms.values().map(|p| p.len() - 1).max().unwrap_or(0)
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut terms = self.terms.clone();
        for (l, p) in &other.terms {
            let e = terms.entry(l.clone()).or_default();
            if e.len() < p.len() {
                e.resize(p.len(), Rat::zero());
            }
            for (a, b) in e.iter_mut().zip(p) {
                *a += b;
            }
            trim(e);
            if e.is_empty() {
                terms.remove(l);
            }
        }
        ExpPoly { terms }
    }

    pub fn scale(&self, c: &Rat) -> ExpPoly {
        if c.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly { terms: self.terms.iter().map(|(l, p)| (l.clone(), p.iter().map(|x| x * c).collect())).collect() }
    }

    pub fn mul(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (l1, p1) in &self.terms {
            for (l2, p2) in &other.terms {
                let mut p = vec![Rat::zero(); p1.len() + p2.len() - 1];
                for (i, a) in p1.iter().enumerate() {
                    for (j, b) in p2.iter().enumerate() {
                        p[i + j] += a * b;
                    }
                }
                out = out.add(&ExpPoly::term(l1 + l2, p));
            }
        }
        out
    }

    /// Exact value at a rational `mu`, as a combination of `e^q`.
    pub fn eval(&self, mu: &Rat) -> ExpNumber {
        let mut out = ExpNumber::zero();
        for (l, p) in &self.terms {
            let v = horner(p, mu);
            out = out.add(&ExpNumber::exp(l * mu).scale(&v));
        }
        out
    }

    /// Value at a rational `mu` when it is rational (no surviving exponential).
    pub fn eval_rational(&self, mu: &Rat) -> Option<Rat> {
        self.eval(mu).as_rat()
    }

    /// Value at `mu = ln(factor)/g`, defined when all polynomials are constant and every
    /// exponent is an integer multiple of `g`.
    pub fn eval_dilation(&self, g: &Rat, factor: &Rat) -> Option<Rat> {
        let mut out = Rat::zero();
        for (l, p) in &self.terms {
            if p.len() != 1 {
                return None;
            }
            let e = l / g;
            if !is_integer(&e) {
                return None;
            }
            out += &p[0] * pow_int(factor, e.to_integer().to_i64()?)?;
        }
        Some(out)
    }

    /// `n`-th Taylor coefficient at `mu = 0`.
    pub fn taylor(&self, n: usize) -> Rat {
        let mut out = Rat::zero();
        for (l, p) in &self.terms {
            for (k, c) in p.iter().enumerate().take(n + 1) {
                let d = n - k;
                let lp = if d == 0 { Rat::one() } else { pow_int(l, d as i64).unwrap_or_else(Rat::zero) };
                out += c * lp / factorial(d);
            }
        }
        out
    }

    pub fn derivative_at_zero(&self) -> Rat {
        self.taylor(1)
    }

    pub fn to_expr(&self, mu: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (l, p) in &self.terms {
            let mut poly = Expr::zero();
            let mut pw = Expr::one();
            for c in p {
                poly = &poly + &(&pw * &Expr::rat(c.clone()));
                pw = &pw * mu;
            }
            out = &out + &(&(mu * &Expr::rat(l.clone())).exp() * &poly);
        }
        out
    }
}

fn horner(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr(&Expr::symbol(mu_symbol())))
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `sum c_q e^q` over rational `q`. Distinct exponentials are linearly independent over Q,
/// so equality of the canonical maps is equality of the numbers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpNumber {
    terms: BTreeMap<Rat, Rat>,
}

impl ExpNumber {
    pub fn zero() -> ExpNumber {
        ExpNumber::default()
    }

    pub fn rat(c: Rat) -> ExpNumber {
        ExpNumber::exp(Rat::zero()).scale(&c)
    }

    pub fn exp(q: Rat) -> ExpNumber {
        ExpNumber { terms: BTreeMap::from([(q, Rat::one())]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Rat::zero()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &ExpNumber) -> ExpNumber {
        let mut terms = self.terms.clone();
        for (q, c) in &other.terms {
            let e = terms.entry(q.clone()).or_insert_with(Rat::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(q);
            }
        }
        ExpNumber { terms }
    }

    pub fn scale(&self, c: &Rat) -> ExpNumber {
        if c.is_zero() {
            return ExpNumber::zero();
        }
        ExpNumber { terms: self.terms.iter().map(|(q, a)| (q.clone(), a * c)).collect() }
    }

    pub fn mul(&self, other: &ExpNumber) -> ExpNumber {
        let mut out = ExpNumber::zero();
        for (q1, a) in &self.terms {
            for (q2, b) in &other.terms {
                out = out.add(&ExpNumber::exp(q1 + q2).scale(&(a * b)));
            }
        }
        out
    }
}

impl fmt::Debug for ExpNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(q, c)| if q.is_zero() { fmt_rat(c) } else { format!("{}*e^({})", fmt_rat(c), fmt_rat(q)) })
            .collect();
        f.write_str(&join_signed(parts, "0"))
    }
}

/// Monic minimal polynomial, ascending coefficients.
pub fn minimal_polynomial(a: &Matrix) -> Vec<Rat> {
    let n = a.rows();
    let flat = |m: &Matrix| m.to_rows().concat();
    let mut powers = vec![flat(&Matrix::identity(n))];
    let mut p = Matrix::identity(n);
    loop {
        p = p.mul(a);
        let v = flat(&p);
        if let Some(c) = coordinates(&powers, &v) {
            let mut out: Vec<Rat> = c.into_iter().map(|x| -x).collect();
            out.push(Rat::one());
            return out;
        }
        powers.push(v);
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Some(vec![BigInt::one()]);
    }
    let m = n.to_u64().filter(|&m| m <= 1 << 40)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(BigInt::from(d));
            if d * d != m {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Divides `p` by `(x - r)`; returns the quotient when the remainder vanishes.
fn deflate(p: &[Rat], r: &Rat) -> Option<Vec<Rat>> {
    let n = p.len() - 1;
    let mut q = vec![Rat::zero(); n];
    let mut acc = Rat::zero();
    for k in (0..=n).rev() {
        acc = acc * r + &p[k];
        if k > 0 {
            q[k - 1] = acc.clone();
        }
    }
    acc.is_zero().then_some(q)
}

/// Rational roots with multiplicities; errors when `p` does not split over Q.
pub fn rational_roots(p: &[Rat]) -> Result<Vec<(Rat, usize)>> {
    let mut p = p.to_vec();
    let mut out: Vec<(Rat, usize)> = Vec::new();
    let push = |r: Rat, out: &mut Vec<(Rat, usize)>| match out.iter_mut().find(|(x, _)| *x == r) {
        Some(e) => e.1 += 1,
        None => out.push((r, 1)),
    };
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        push(Rat::zero(), &mut out);
    }
    while p.len() > 1 {
        let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
        let num = divisors(&ints[0]).ok_or(Error::NonRationalSpectrum)?;
        let den = divisors(ints.last().unwrap()).ok_or(Error::NonRationalSpectrum)?;
        let mut found = None;
        'search: for a in &num {
            for b in &den {
                for s in [1, -1] {
                    let r = Rat::new(a * s, b.clone());
                    if let Some(q) = deflate(&p, &r) {
                        found = Some((r, q));
                        break 'search;
                    }
                }
            }
        }
        let (r, q) = found.ok_or(Error::NonRationalSpectrum)?;
        push(r, &mut out);
        p = q;
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Entries of `exp(sign * mu * A)` as closed forms, `[row][col]`.
pub fn exact_exp(a: &Matrix, sign: i64) -> Result<Vec<Vec<ExpPoly>>> {
    let n = a.rows();
    let roots = rational_roots(&minimal_polynomial(a))?;
    let s = rat(sign);
    // generalized eigenspaces side by side
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    let mut blocks = Vec::new();
    for (l, m) in &roots {
        let shifted = a.sub(&Matrix::identity(n).scale(l));
        let ker = shifted.pow(*m as u32).nullspace();
        blocks.push((cols.len(), ker.len()));
        cols.extend(ker);
    }
    if cols.len() != n {
        return Err(Error::Internal("generalized eigenspaces do not span".into()));
    }
    let v = Matrix::from_rows(cols).transpose();
    let vinv = v.inverse().ok_or_else(|| Error::Internal("singular eigenbasis".into()))?;
    let mut out = vec![vec![ExpPoly::zero(); n]; n];
    for ((l, m), (start, len)) in roots.iter().zip(blocks) {
        let e = Matrix::from_fn(n, n, |i, j| if i == j && i >= start && i < start + len { Rat::one() } else { Rat::zero() });
        let proj = v.mul(&e).mul(&vinv);
        let nil = a.sub(&Matrix::identity(n).scale(l)).mul(&proj);
        let mut nk = proj.clone();
        let mut polys = vec![vec![Rat::zero(); *m]; n * n];
        for k in 0..*m {
            let f = pow_int(&s, k as i64).unwrap() / factorial(k);
            for i in 0..n {
                for j in 0..n {
                    polys[i * n + j][k] = &nk[(i, j)] * &f;
                }
            }
            nk = nil.mul(&nk);
        }
        if !nk.is_zero() {
            return Err(Error::Internal("nilpotent part exceeds its index".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let t = ExpPoly::term(&s * l, polys[i * n + j].clone());
                out[i][j] = out[i][j].add(&t);
            }
        }
    }
    Ok(out)
}

/// Truncated series `sum_{k < terms} (sign*mu*A)^k / k!` at a rational `mu`.
pub fn series_exp(a: &Matrix, sign: i64, mu: &Rat, terms: usize) -> Matrix {
    let n = a.rows();
    let step = a.scale(&(rat(sign) * mu));
    let mut acc = Matrix::zeros(n, n);
    let mut p = Matrix::identity(n);
    for k in 0..terms {
        acc = acc.add(&p);
        p = p.mul(&step).scale(&(Rat::one() / rat(k as i64 + 1)));
    }
    acc
}

fn label_latex(l: &str) -> String {
    latex_symbol(&Symbol::from_name(l))
}

pub fn mu_symbol() -> Symbol {
    Symbol::param("mu")
}

/// `Ad(exp(mu v_i))`; `entries[j][k]` is the `v_k`-coefficient of the image of `v_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct AdjointMatrix {
    pub generator: usize,
    pub entries: Vec<Vec<ExpPoly>>,
}

pub fn ad_matrix(g: &LieAlgebraTable, i: usize) -> Matrix {
    g.ad(i)
}

impl AdjointMatrix {
    pub fn new(g: &LieAlgebraTable, i: usize) -> Result<AdjointMatrix> {
        let e = exact_exp(&g.ad(i), -1)?;
        let n = g.dim();
        let entries = (0..n).map(|j| (0..n).map(|k| e[k][j].clone()).collect()).collect();
        Ok(AdjointMatrix { generator: i, entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Whether `ad v_i` is nilpotent, so every entry is a polynomial in `mu`.
    pub fn is_unipotent(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.terms().keys().all(|l| l.is_zero()))
    }

    /// Image of `w = sum w_j v_j` with `mu` substituted.
    pub fn apply(&self, mu: &Expr, w: &[Expr]) -> Vec<Expr> {
        let n = self.dim();
        let vals: Vec<Vec<Expr>> = self.entries.iter().map(|r| r.iter().map(|e| e.to_expr(mu)).collect()).collect();
        (0..n)
            .map(|k| (0..n).filter(|&j| !w[j].is_zero()).fold(Expr::zero(), |acc, j| &acc + &(&w[j] * &vals[j][k])))
            .collect()
    }

    pub fn apply_numbers(&self, mu: &Rat, w: &[ExpNumber]) -> Vec<ExpNumber> {
        let n = self.dim();
        let vals: Vec<Vec<ExpNumber>> = self.entries.iter().map(|r| r.iter().map(|e| e.eval(mu)).collect()).collect();
        (0..n).map(|k| (0..n).fold(ExpNumber::zero(), |acc, j| acc.add(&w[j].mul(&vals[j][k])))).collect()
    }

    /// Rational image, when every needed entry is rational at `mu`.
    pub fn apply_rational(&self, mu: &Rat, w: &[Rat]) -> Option<Vec<Rat>> {
        self.combine(w, |e| e.eval_rational(mu))
    }

    /// Image at `mu = ln(factor)/g` (one-parameter dilations).
    pub fn apply_dilation(&self, g: &Rat, factor: &Rat, w: &[Rat]) -> Option<Vec<Rat>> {
        self.combine(w, |e| e.eval_dilation(g, factor))
    }

    fn combine(&self, w: &[Rat], f: impl Fn(&ExpPoly) -> Option<Rat>) -> Option<Vec<Rat>> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for (j, wj) in w.iter().enumerate() {
            if wj.is_zero() {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                let e = &self.entries[j][k];
                if !e.is_zero() {
                    *o += wj * f(e)?;
                }
            }
        }
        Some(out)
    }

    /// Order of display: the `v_j` term first, then by power of `mu`, then by index.
    fn ordered(&self, j: usize) -> Vec<usize> {
        let mut ks: Vec<usize> = (0..self.dim()).filter(|&k| !self.entries[j][k].is_zero()).collect();
        ks.sort_by_key(|&k| (k != j, self.entries[j][k].degree(), k));
        ks
    }

    /// `Ad(exp(mu v_i)) v_j` as text, e.g. `v5 - 2*mu*v3 + mu^2*v1`.
    pub fn entry_string(&self, j: usize, labels: &[String]) -> String {
        let mu = Expr::symbol(mu_symbol());
        let parts = self
            .ordered(j)
            .into_iter()
            .map(|k| {
                let c = self.entries[j][k].to_expr(&mu);
                if c.is_one() {
                    labels[k].clone()
                } else if c == -Expr::one() {
                    format!("-{}", labels[k])
                } else if c.numer().len() > 1 {
                    format!("({c})*{}", labels[k])
                } else {
                    format!("{c}*{}", labels[k])
                }
            })
            .collect();
        join_signed(parts, "0")
    }

    pub fn entry_latex(&self, j: usize, labels: &[String]) -> String {
        let mu = Expr::symbol(mu_symbol());
        let parts = self
            .ordered(j)
            .into_iter()
            .map(|k| {
                let c = self.entries[j][k].to_expr(&mu);
                let l = label_latex(&labels[k]);
                if c.is_one() {
                    l
                } else if c == -Expr::one() {
                    format!("-{l}")
                } else if c.numer().len() > 1 {
                    format!("\\left({}\\right){l}", c.to_latex())
                } else {
                    format!("{}{l}", c.to_latex())
                }
            })
            .collect();
        join_signed(parts, "0")
    }

    /// `sum_k entry(j,k) * v_k` with the basis labels as symbols.
    pub fn entry_expr(&self, j: usize, labels: &[String]) -> Expr {
        let mu = Expr::symbol(mu_symbol());
        (0..self.dim()).fold(Expr::zero(), |acc, k| {
            &acc + &(&self.entries[j][k].to_expr(&mu) * &Expr::symbol(Symbol::param(&labels[k])))
        })
    }
}

impl fmt::Debug for AdjointMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = default_labels(self.dim());
        for j in 0..self.dim() {
            writeln!(f, "{}", self.entry_string(j, &labels))?;
        }
        Ok(())
    }
}

pub fn adjoint_table(g: &LieAlgebraTable) -> Result<Vec<AdjointMatrix>> {
    (0..g.dim()).map(|i| AdjointMatrix::new(g, i)).collect()
}

/// Compares `table[i].entry(j)` with printed `Ad(exp(mu v_i)) v_j`.
pub fn diff_table<const N: usize>(table: &[AdjointMatrix], printed: &[[&str; N]]) -> Result<Vec<EntryDiff>> {
    if table.len() != N || printed.len() != N {
        return Err(Error::Dimension { expected: table.len(), got: N });
    }
    let labels = default_labels(N);
    let mut out = Vec::new();
    for (i, row) in printed.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            let same = parse(p).map(|e| e == table[i].entry_expr(j, &labels)).unwrap_or(false);
            if !same {
                out.push(EntryDiff { row: i, col: j, derived: table[i].entry_string(j, &labels), printed: p.to_string() });
            }
        }
    }
    Ok(out)
}

pub fn table_text(table: &[AdjointMatrix], labels: &[String]) -> String {
    let n = table.len();
    let cells: Vec<Vec<String>> = table.iter().map(|m| (0..n).map(|j| m.entry_string(j, labels)).collect()).collect();
    let mut out = String::new();
    for (i, row) in cells.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            out.push_str(&format!("Ad(exp(mu*{})) {} = {c}\n", labels[i], labels[j]));
        }
    }
    out
}

/// LaTeX in two half-tables of (up to) five columns each.
pub fn table_latex(table: &[AdjointMatrix], labels: &[String]) -> String {
    let n = table.len();
    let half = n.div_ceil(2);
    let mut out = String::new();
    for cols in [0..half, half..n] {
        if cols.is_empty() {
            continue;
        }
        out.push_str(&format!("\\begin{{tabular}}{{c|{}}}\n", "c".repeat(cols.len())));
        out.push_str("$\\mathrm{Ad}$");
        for j in cols.clone() {
            out.push_str(&format!(" & ${}$", label_latex(&labels[j])));
        }
        out.push_str(" \\\\\n\\hline\n");
        for (i, m) in table.iter().enumerate() {
            out.push_str(&format!("${}$", label_latex(&labels[i])));
            for j in cols.clone() {
                out.push_str(&format!(" & ${}$", m.entry_latex(j, labels)));
            }
            out.push_str(" \\\\\n");
        }
        out.push_str("\\end{tabular}\n");
    }
    out
}
