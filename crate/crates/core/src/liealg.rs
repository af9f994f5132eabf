//! Finite-dimensional Lie algebras over Q given by structure constants.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::jet::{join_signed, VectorField};
use crate::linalg::{coordinates, span_basis, Matrix};
use crate::symbolic::rat::{fmt_rat, frac, rat, Rat};
use crate::symbolic::{Expr, Monomial};
use crate::{Error, Result};

/// `[X, Y]` with eps^2 = 0.
pub fn commutator(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    x.bracket(y).eps_truncated()
}

type Flat = BTreeMap<(usize, Monomial), Rat>;

fn flatten(fields: &[&VectorField]) -> Result<Vec<Flat>> {
    let mut den = Expr::one();
    for f in fields {
        for c in f.components() {
            let d = c.denom_expr();
            if !d.is_one() && (&den / &d).denom_expr() != Expr::one() {
                den = &den * &d;
            }
        }
    }
    fields
        .iter()
        .map(|f| {
            let mut out = Flat::new();
            for (i, c) in f.components().into_iter().enumerate() {
                let p = c * &den;
                if !p.denom().is_one() {
                    return Err(Error::Internal(format!("cannot clear denominator of {c}")));
                }
                for (m, k) in p.numer().terms() {
                    out.insert((i, m.clone()), k.clone());
                }
            }
            Ok(out)
        })
        .collect()
}

/// Rational coordinates of `y` in `basis`, or `None` when `y` is outside the span.
pub fn field_coordinates(basis: &[VectorField], y: &VectorField) -> Result<Option<Vec<Rat>>> {
    let mut refs: Vec<&VectorField> = basis.iter().collect();
    refs.push(y);
    let flat = flatten(&refs)?;
    let keys: Vec<&(usize, Monomial)> = {
        let mut k: Vec<_> = flat.iter().flat_map(|f| f.keys()).collect();
        k.sort();
        k.dedup();
        k
    };
    let n = basis.len();
    let a = Matrix::from_fn(keys.len(), n, |r, c| flat[c].get(keys[r]).cloned().unwrap_or_else(Rat::zero));
    let b: Vec<Rat> = keys.iter().map(|k| flat[n].get(*k).cloned().unwrap_or_else(Rat::zero)).collect();
    Ok(a.solve(&b))
}

/// `sum c_k label_k`, e.g. `2*v3 - v1`.
pub fn fmt_combination(c: &[Rat], labels: &[String]) -> String {
    let parts = c
        .iter()
        .zip(labels)
        .filter(|(k, _)| !k.is_zero())
        .map(|(k, l)| {
            if k.is_one() {
                l.clone()
            } else if *k == -Rat::one() {
                format!("-{l}")
            } else {
                format!("{}*{l}", fmt_rat(k))
            }
        })
        .collect();
    join_signed(parts, "0")
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebraTable {
    /// Empty for abstractly given algebras.
    pub basis: Vec<VectorField>,
    pub labels: Vec<String>,
    /// `c[i][j][k]`: coefficient of `v_k` in `[v_i, v_j]`.
    pub c: Vec<Vec<Vec<Rat>>>,
}

impl LieAlgebraTable {
    pub fn structure_constants(basis: &[VectorField]) -> Result<LieAlgebraTable> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::EmptyBasis);
        }
        let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let b = commutator(&basis[i], &basis[j])?;
                let k = field_coordinates(basis, &b)?.ok_or(Error::NotClosed(i, j))?;
                c[j][i] = k.iter().map(|x| -x).collect();
                c[i][j] = k;
            }
        }
        let g = LieAlgebraTable { basis: basis.to_vec(), labels: default_labels(n), c };
        g.check_axioms()?;
        Ok(g)
    }

    /// Abstract algebra from brackets `[e_i, e_j] = sum c_k e_k` given for `i < j`.
    pub fn from_brackets(n: usize, labels: Vec<String>, brackets: &[(usize, usize, Vec<Rat>)]) -> Result<LieAlgebraTable> {
        let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
        for (i, j, v) in brackets {
            if v.len() != n {
                return Err(Error::Dimension { expected: n, got: v.len() });
            }
            c[*j][*i] = v.iter().map(|x| -x).collect();
            c[*i][*j] = v.clone();
        }
        let g = LieAlgebraTable { basis: Vec::new(), labels, c };
        g.check_axioms()?;
        Ok(g)
    }

    fn check_axioms(&self) -> Result<()> {
        if !self.is_antisymmetric() {
            return Err(Error::Internal("structure constants not antisymmetric".into()));
        }
        if !self.satisfies_jacobi() {
            return Err(Error::Internal("structure constants violate the Jacobi identity".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn constants(&self, i: usize, j: usize) -> &[Rat] {
        &self.c[i][j]
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let f = &x[i] * &y[j];
                for (o, c) in out.iter_mut().zip(&self.c[i][j]) {
                    if !c.is_zero() {
                        *o += &f * c;
                    }
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.c[i][j].iter().zip(&self.c[j][i]).all(|(a, b)| (a + b).is_zero())))
    }

    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut s = vec![Rat::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = &self.c[a][b];
                        let t = self.bracket(inner, &unit(n, c));
                        for (x, y) in s.iter_mut().zip(t) {
                            *x += y;
                        }
                    }
                    if s.iter().any(|x| !x.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Matrix of `ad v_i`: column `j` holds the coordinates of `[v_i, v_j]`.
    pub fn ad(&self, i: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, j| self.c[i][j][k].clone())
    }

    pub fn ad_of(&self, x: &[Rat]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Rat>> = (0..n).map(|j| self.bracket(x, &unit(n, j))).collect();
        Matrix::from_fn(n, n, |k, j| cols[j][k].clone())
    }

    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad(i)).collect();
        Matrix::from_fn(n, n, |i, j| ads[i].mul(&ads[j]).trace())
    }

    /// Structure constants of the subalgebra spanned by `s` in the basis given by its rows.
    pub fn restrict(&self, s: &Subspace) -> Result<LieAlgebraTable> {
        let m = s.dim();
        let mut c = vec![vec![vec![Rat::zero(); m]; m]; m];
        for i in 0..m {
            for j in 0..m {
                let b = self.bracket(&s.rows[i], &s.rows[j]);
                c[i][j] = coordinates(&s.rows, &b).ok_or(Error::NotClosed(i, j))?;
            }
        }
        let basis = if self.basis.is_empty() {
            Vec::new()
        } else {
            s.rows.iter().map(|r| self.field(r)).collect()
        };
        let labels = s.rows.iter().map(|r| fmt_combination(r, &self.labels)).collect();
        Ok(LieAlgebraTable { basis, labels, c })
    }

    /// The field `sum w_k v_k`.
    pub fn field(&self, w: &[Rat]) -> VectorField {
        w.iter()
            .zip(&self.basis)
            .filter(|(k, _)| !k.is_zero())
            .fold(VectorField::zero(), |acc, (k, v)| acc.add(&v.scale(&Expr::rat(k.clone()))))
    }

    pub fn entry_string(&self, i: usize, j: usize) -> String {
        fmt_combination(&self.c[i][j], &self.labels)
    }

    pub fn to_json(&self) -> Value {
        let n = self.dim();
        let c: Vec<Value> = (0..n)
            .map(|i| {
                Value::Array(
                    (0..n)
                        .map(|j| {
                            Value::Array(
                                self.c[i][j]
                                    .iter()
                                    .enumerate()
                                    .filter(|(_, x)| !x.is_zero())
                                    .map(|(k, x)| json!([k, fmt_rat(x)]))
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect();
        let basis: Vec<String> = if self.basis.is_empty() {
            self.labels.clone()
        } else {
            self.basis.iter().map(|b| b.to_string()).collect()
        };
        json!({ "basis": basis, "c": c })
    }
}

impl fmt::Display for LieAlgebraTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let cells: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| self.entry_string(i, j)).collect()).collect();
        let w = cells.iter().flatten().chain(&self.labels).map(|s| s.len()).max().unwrap_or(1);
        write!(f, "{:>w$}", "[,]")?;
        for l in &self.labels {
            write!(f, " {l:>w$}")?;
        }
        writeln!(f)?;
        for (l, row) in self.labels.iter().zip(&cells) {
            write!(f, "{l:>w$}")?;
            for c in row {
                write!(f, " {c:>w$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LieAlgebraTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn unit(n: usize, k: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[k] = Rat::one();
    v
}

/// Subspace of `Q^n` stored as the rows of its reduced echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub ambient: usize,
    pub rows: Vec<Vec<Rat>>,
}

impl Subspace {
    pub fn span(vectors: &[Vec<Rat>], ambient: usize) -> Subspace {
        Subspace { ambient, rows: span_basis(vectors, ambient) }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace::units(ambient, 0..ambient)
    }

    /// Span of the given 0-based basis vectors.
    pub fn units(ambient: usize, idx: impl IntoIterator<Item = usize>) -> Subspace {
        let v: Vec<Vec<Rat>> = idx.into_iter().map(|k| unit(ambient, k)).collect();
        Subspace::span(&v, ambient)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        coordinates(&self.rows, v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let v: Vec<Vec<Rat>> = self.rows.iter().chain(&other.rows).cloned().collect();
        Subspace::span(&v, self.ambient)
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// Basis indices when the subspace is spanned by basis vectors.
    pub fn as_units(&self) -> Option<Vec<usize>> {
        self.rows
            .iter()
            .map(|r| {
                let nz: Vec<usize> = (0..r.len()).filter(|&k| !r[k].is_zero()).collect();
                (nz.len() == 1).then(|| nz[0])
            })
            .collect()
    }

    pub fn describe(&self, labels: &[String]) -> String {
        let items: Vec<String> = self.rows.iter().map(|r| fmt_combination(r, labels)).collect();
        if items.is_empty() {
            "{0}".into()
        } else {
            format!("span{{{}}}", items.join(", "))
        }
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe(&default_labels(self.ambient)))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[a, b]` as a subspace.
pub fn bracket_span(g: &LieAlgebraTable, a: &Subspace, b: &Subspace) -> Subspace {
    let mut v = Vec::new();
    for x in &a.rows {
        for y in &b.rows {
            let z = g.bracket(x, y);
            if z.iter().any(|c| !c.is_zero()) {
                v.push(z);
            }
        }
    }
    Subspace::span(&v, g.dim())
}

/// `s, [s,s], [[s,s],[s,s]], ...` up to the first repetition or zero.
pub fn derived_series_of(g: &LieAlgebraTable, s: &Subspace) -> Vec<Subspace> {
    let mut out = vec![s.clone()];
    loop {
        let last = out.last().unwrap();
        if last.is_zero() {
            break;
        }
        let next = bracket_span(g, last, last);
        let stable = next == *last;
        out.push(next);
        if stable {
            break;
        }
    }
    out
}

pub fn derived_series(g: &LieAlgebraTable) -> Vec<Subspace> {
    derived_series_of(g, &Subspace::full(g.dim()))
}

pub fn is_subalgebra(g: &LieAlgebraTable, s: &Subspace) -> bool {
    s.contains_subspace(&bracket_span(g, s, s))
}

pub fn is_ideal(g: &LieAlgebraTable, s: &Subspace) -> bool {
    s.contains_subspace(&bracket_span(g, &Subspace::full(g.dim()), s))
}

pub fn is_solvable(g: &LieAlgebraTable, s: &Subspace) -> bool {
    derived_series_of(g, s).last().is_some_and(|l| l.is_zero())
}

/// Killing-orthogonal complement of `[g, g]`, checked to be a solvable ideal.
pub fn radical(g: &LieAlgebraTable) -> Result<Subspace> {
    let n = g.dim();
    let d = bracket_span(g, &Subspace::full(n), &Subspace::full(n));
    let k = g.killing_form();
    let r = if d.is_zero() {
        Subspace::full(n)
    } else {
        let cond = Matrix::from_rows(d.rows.clone()).mul(&k);
        Subspace::span(&cond.nullspace(), n)
    };
    if !is_ideal(g, &r) {
        return Err(Error::Internal(format!("radical candidate {r} is not an ideal")));
    }
    if !is_solvable(g, &r) {
        return Err(Error::Internal(format!("radical candidate {r} is not solvable")));
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviReport {
    pub subalgebra: bool,
    pub nondegenerate: bool,
    pub meets_radical_trivially: bool,
    pub complements_radical: bool,
}

impl LeviReport {
    pub fn all(&self) -> bool {
        self.subalgebra && self.nondegenerate && self.meets_radical_trivially && self.complements_radical
    }
}

pub fn levi_check(g: &LieAlgebraTable, s: &Subspace) -> Result<LeviReport> {
    let subalgebra = is_subalgebra(g, s);
    let nondegenerate = subalgebra && !s.is_zero() && !g.restrict(s)?.killing_form().det().is_zero();
    let r = radical(g)?;
    Ok(LeviReport {
        subalgebra,
        nondegenerate,
        meets_radical_trivially: s.intersection_dim(&r) == 0,
        complements_radical: s.sum(&r).dim() == g.dim(),
    })
}

/// Derived series of a solvable subalgebra, ending in `{0}`.
pub fn solvable_chain(g: &LieAlgebraTable, r: &Subspace) -> Result<Vec<Subspace>> {
    let s = derived_series_of(g, r);
    if s.last().is_some_and(|l| l.is_zero()) {
        Ok(s)
    } else {
        Err(Error::NotSolvable)
    }
}

/// Whether the linear map with columns `map[.., i]` = image of `src` basis vector `i`
/// is an invertible bracket-preserving map into `dst`.
pub fn check_homomorphism(map: &Matrix, src: &LieAlgebraTable, dst: &LieAlgebraTable) -> bool {
    let n = src.dim();
    if map.rows() != dst.dim() || map.cols() != n || n != dst.dim() || map.det().is_zero() {
        return false;
    }
    let images: Vec<Vec<Rat>> = (0..n).map(|i| map.column(i)).collect();
    (0..n).all(|i| (i + 1..n).all(|j| map.mul_vec(&src.c[i][j]) == dst.bracket(&images[i], &images[j])))
}

pub fn diagonal(d: &[Rat]) -> Matrix {
    Matrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { Rat::zero() })
}

/// First diagonal isomorphism with entries from `{±p/q : 1 <= p, q <= height}`, in a fixed order.
pub fn diagonal_search(src: &LieAlgebraTable, dst: &LieAlgebraTable, height: i64) -> Option<Vec<Rat>> {
    let mut cands: Vec<Rat> = Vec::new();
    for p in 1..=height {
        for q in 1..=height {
            for s in [1, -1] {
                let r = frac(s * p, q);
                if !cands.contains(&r) {
                    cands.push(r);
                }
            }
        }
    }
    cands.sort_by_key(|r| (r.numer().magnitude().clone() + r.denom().magnitude(), r < &Rat::zero()));
    let n = src.dim();
    let mut idx = vec![0usize; n];
    loop {
        let d: Vec<Rat> = idx.iter().map(|&k| cands[k].clone()).collect();
        if check_homomorphism(&diagonal(&d), src, dst) {
            return Some(d);
        }
        let mut p = n;
        loop {
            if p == 0 {
                return None;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < cands.len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// Small catalog of reference algebras keyed by name.
pub fn builtin_algebra(name: &str) -> Option<LieAlgebraTable> {
    let labels = |n: usize| (1..=n).map(|i| format!("w{i}")).collect::<Vec<_>>();
    let v = |a: [i64; 3]| a.iter().map(|&x| rat(x)).collect::<Vec<_>>();
    match name {
        "A3,8" | "A_{3,8}" | "sl2" => LieAlgebraTable::from_brackets(
            3,
            labels(3),
            &[(0, 1, v([1, 0, 0])), (1, 2, v([0, 0, 1])), (0, 2, v([0, -2, 0]))],
        )
        .ok(),
        "A3,9" | "A_{3,9}" | "so3" => LieAlgebraTable::from_brackets(
            3,
            labels(3),
            &[(0, 1, v([0, 0, 1])), (1, 2, v([1, 0, 0])), (2, 0, v([0, 1, 0]))],
        )
        .ok(),
        _ => None,
    }
}

/// One entry where a derived table and a printed one disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryDiff {
    pub row: usize,
    pub col: usize,
    pub derived: String,
    pub printed: String,
}

impl fmt::Display for EntryDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(v{}, v{}): derived {}, printed {}", self.row + 1, self.col + 1, self.derived, self.printed)
    }
}

/// Compares the commutator table against printed entries such as `2*v3`.
pub fn diff_table<const N: usize>(g: &LieAlgebraTable, printed: &[[&str; N]]) -> Result<Vec<EntryDiff>> {
    if g.dim() != N || printed.len() != N {
        return Err(Error::Dimension { expected: g.dim(), got: N });
    }
    let mut out = Vec::new();
    for (i, row) in printed.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            let same = match crate::harry_dym::rational_combination(p, N) {
                Ok(v) => v == g.c[i][j],
                Err(_) => false,
            };
            if !same {
                out.push(EntryDiff { row: i, col: j, derived: g.entry_string(i, j), printed: p.to_string() });
            }
        }
    }
    Ok(out)
}
