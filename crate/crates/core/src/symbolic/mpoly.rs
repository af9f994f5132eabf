//! Dense-exponent multivariate polynomials over Q with a recursive primitive-PRS gcd.
//!
//! This is the cancellation engine behind canonical rational functions. Variables are
//! indices `0..nvars`; terms are keyed by exponent vectors, so `BTreeMap` ordering is lex
//! with variable 0 most significant.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat, nvars: usize) -> MPoly {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> MPoly {
        MPoly::constant(Rat::one(), nvars)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> MPoly {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            debug_assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn has_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    pub fn deg(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    fn shift(&self, v: usize, k: u32) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[v] += k;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Coefficients with respect to `v`, keyed by the power of `v`.
    fn coeffs_in(&self, v: usize) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[v];
            let mut e = e.clone();
            e[v] = 0;
            out.entry(k).or_insert_with(|| MPoly::zero(self.nvars)).add_term(e, c.clone());
        }
        out
    }

    fn lc_in(&self, v: usize) -> MPoly {
        self.coeffs_in(v).into_iter().next_back().map(|(_, c)| c).unwrap_or_else(|| MPoly::zero(self.nvars))
    }

    fn leading(&self) -> Option<(&Vec<u32>, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Divides by the lex-leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (ld, lc) = d.leading()?;
        let (ld, lc) = (ld.clone(), lc.clone());
        let mut q = MPoly::zero(self.nvars);
        let mut r = self.clone();
        while let Some((lr, cr)) = r.leading() {
            if lr.iter().zip(&ld).any(|(a, b)| a < b) {
                return None;
            }
            let m: Vec<u32> = lr.iter().zip(&ld).map(|(a, b)| a - b).collect();
            let c = cr / &lc;
            let t = MPoly::from_terms(self.nvars, [(m, c)]);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    fn content_in(&self, v: usize) -> MPoly {
        let mut g = MPoly::zero(self.nvars);
        for c in self.coeffs_in(v).into_values() {
            g = gcd(&g, &c);
            if g.is_constant() && !g.is_zero() {
                return MPoly::one(self.nvars);
            }
        }
        g
    }

    fn primitive_in(&self, v: usize) -> MPoly {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides").monic()
    }

    fn prem(&self, g: &MPoly, v: usize) -> MPoly {
        let dg = g.deg(v);
        let lcg = g.lc_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.has_var(v) && r.deg(v) >= dg {
            let dr = r.deg(v);
            let lcr = r.lc_in(v);
            r = lcg.mul(&r).sub(&lcr.mul(&g.shift(v, dr - dg)));
        }
        if dg == 0 {
            return MPoly::zero(self.nvars);
        }
        r
    }
}

/// Monic gcd over Q (lex-leading coefficient 1); `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let n = a.nvars;
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(n);
    }
    if a == b {
        return a.monic();
    }
    if a.terms.len() == 1 || b.terms.len() == 1 {
        return monomial_gcd(a, b);
    }
    let vars: Vec<usize> = (0..n).filter(|&v| a.has_var(v) || b.has_var(v)).collect();
    // a variable the gcd cannot contain reduces the problem to the coefficients in it
    for &v in vars.iter().rev() {
        if !a.has_var(v) || !b.has_var(v) || image_gcd_degree(a, b, v) == Some(0) {
            return gcd_of_coeffs(a, b, v);
        }
    }
    let v = *vars.last().expect("non-constant");
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    c.mul(&prs_gcd(pa, pb, v)).monic()
}

/// Gcd of all coefficients of `a` and `b` in `v`, smallest first.
fn gcd_of_coeffs(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let mut cs: Vec<MPoly> = a.coeffs_in(v).into_values().chain(b.coeffs_in(v).into_values()).collect();
    cs.sort_by_key(|c| c.terms.len());
    let mut g = MPoly::zero(a.nvars);
    for c in &cs {
        g = gcd(&g, c);
        if g.is_constant() {
            return MPoly::one(a.nvars);
        }
    }
    g
}

/// Univariate image in `v` with every other variable set to `point`.
fn image(p: &MPoly, v: usize, point: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); p.deg(v) as usize + 1];
    for (e, c) in &p.terms {
        let mut t = c.clone();
        for (w, k) in e.iter().enumerate() {
            if w != v && *k > 0 {
                t *= num_traits::pow(point[w].clone(), *k as usize);
            }
        }
        out[e[v] as usize] += t;
    }
    out
}

fn uni_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let f = r.last().expect("nonempty") / lb;
        let off = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[off + i] -= &f * c;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Upper bound on `deg_v gcd(a, b)` from one specialization where both leading
/// coefficients in `v` survive; `None` if no such point was found.
fn image_gcd_degree(a: &MPoly, b: &MPoly, v: usize) -> Option<usize> {
    for attempt in 0..3i64 {
        let point: Vec<Rat> = (0..a.nvars as i64).map(|w| Rat::from_integer(((w * 7 + attempt * 13 + 3) % 29 + 2).into())).collect();
        let (mut x, mut y) = (image(a, v, &point), image(b, v, &point));
        if x.last().is_none_or(|c| c.is_zero()) || y.last().is_none_or(|c| c.is_zero()) {
            continue;
        }
        while !y.is_empty() {
            let r = uni_rem(&x, &y);
            x = y;
            y = r;
        }
        return Some(x.len() - 1);
    }
    None
}

/// Common monomial of all terms; the gcd when either side is a single term.
fn monomial_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let mut e: Option<Vec<u32>> = None;
    for k in a.terms.keys().chain(b.terms.keys()) {
        e = Some(match e {
            None => k.clone(),
            Some(m) => m.iter().zip(k).map(|(x, y)| *x.min(y)).collect(),
        });
    }
    MPoly::from_terms(a.nvars, [(e.expect("nonzero"), Rat::one())])
}

fn prs_gcd(f: MPoly, g: MPoly, v: usize) -> MPoly {
    let (mut f, mut g) = if f.deg(v) >= g.deg(v) { (f, g) } else { (g, f) };
    g = g.primitive_in(v);
    loop {
        let r = f.prem(&g, v);
        if r.is_zero() {
            return g;
        }
        if !r.has_var(v) {
            return MPoly::one(f.nvars);
        }
        f = g;
        g = r.primitive_in(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rat::rat;

    // variables: 0 = a, 1 = x
    fn p(terms: &[(&[u32], i64)]) -> MPoly {
        MPoly::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
    }

    #[test]
    fn gcd_of_products() {
        // (x + a)(x - 1) and (x + a)(x + 2)
        let f = p(&[(&[0, 1], 1), (&[1, 0], 1)]);
        let g1 = f.mul(&p(&[(&[0, 1], 1), (&[0, 0], -1)]));
        let g2 = f.mul(&p(&[(&[0, 1], 1), (&[0, 0], 2)]));
        assert_eq!(gcd(&g1, &g2), f.monic());
    }

    #[test]
    fn gcd_with_content() {
        // a^2 x and a x^2 -> a x
        let f = p(&[(&[2, 1], 3)]);
        let g = p(&[(&[1, 2], 5)]);
        assert_eq!(gcd(&f, &g), p(&[(&[1, 1], 1)]));
        let coprime = gcd(&p(&[(&[0, 1], 1), (&[0, 0], 1)]), &p(&[(&[0, 1], 1)]));
        assert_eq!(coprime, MPoly::one(2));
    }

    #[test]
    fn exact_division() {
        let f = p(&[(&[0, 2], 1), (&[0, 0], -1)]);
        let d = p(&[(&[0, 1], 1), (&[0, 0], 1)]);
        assert_eq!(f.div_exact(&d), Some(p(&[(&[0, 1], 1), (&[0, 0], -1)])));
        assert_eq!(d.div_exact(&f), None);
    }
}
