//! One-dimensional optimal system: a fixed pivot ladder of scalings and adjoint maps that
//! brings any nonzero element to a family representative, with a replayable trace.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adjoint::{adjoint_table, AdjointMatrix};
use crate::harry_dym;
use crate::liealg::{default_labels, fmt_combination, LieAlgebraTable};
use crate::symbolic::rat::{fmt_rat, frac, parse_rat, Rat};
use crate::symbolic::Expr;
use crate::{Error, Result};

/// One ladder rung (0-based indices): scale `pivot` to 1, remove each `(coordinate, generator)`
/// coefficient with `Ad(exp(mu v_generator))`, then normalize `dilate.0` to 0 or +-1 with the
/// one-parameter scaling group of `dilate.1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderCase {
    pub pivot: usize,
    pub kills: Vec<(usize, usize)>,
    pub dilate: Option<(usize, usize)>,
}

fn case(pivot: usize, kills: &[(usize, usize)], dilate: Option<(usize, usize)>) -> LadderCase {
    LadderCase {
        pivot: pivot - 1,
        kills: kills.iter().map(|(c, g)| (c - 1, g - 1)).collect(),
        dilate: dilate.map(|(c, g)| (c - 1, g - 1)),
    }
}

/// Pivot order a10, a9, a4, a3, a5, a1, a2, a6, a7, a8 with the maps of the case analysis.
pub fn harry_dym_ladder() -> Vec<LadderCase> {
    vec![
        case(10, &[(8, 1)], None),
        case(9, &[(7, 2)], Some((2, 4))),
        case(4, &[(2, 2), (7, 7)], None),
        case(3, &[(6, 6)], None),
        case(5, &[(8, 6)], None),
        case(1, &[(6, 8), (8, 10)], None),
        case(2, &[(7, 9)], Some((6, 3))),
        case(6, &[], Some((7, 4))),
        case(7, &[], None),
        case(8, &[], None),
    ]
}

/// Family templates `v^1..v^17` produced by the ladder; `v^16` is listed for numbering only
/// (the printed table repeats `v^15` there) and is never reached.
pub const CANONICAL_FAMILIES: [&str; 17] = [
    "v8",
    "v7 + a*v8",
    "v6 + a*v8",
    "v6 - v7 + a*v8",
    "v6 + v7 + a*v8",
    "v2 + a*v8",
    "v2 - v6 + a*v8",
    "v2 + v6 + a*v8",
    "v1 + a*v2 + b*v7",
    "a*v1 + b*v2 + v5 + c*v6 + d*v7",
    "a*v1 + b*v2 + v3 + c*v5 + d*v7 + e*v8",
    "a*v1 + b*v3 + v4 + c*v5 + d*v6 + e*v8",
    "a*v1 + b*v3 + c*v4 + d*v5 + e*v6 + f*v8 + v9",
    "a*v1 - v2 + b*v3 + c*v4 + d*v5 + e*v6 + f*v8 + v9",
    "a*v1 + v2 + b*v3 + c*v4 + d*v5 + e*v6 + f*v8 + v9",
    "",
    "a*v1 + b*v2 + c*v3 + d*v4 + e*v5 + f*v6 + g*v7 + h*v9 + v10",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Slot {
    Fixed(#[serde(serialize_with = "ser_rat")] Rat),
    Free(String),
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

/// Coefficient pattern of a family: fixed rationals and named free parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Template {
    pub source: String,
    pub slots: Vec<Slot>,
}

impl Template {
    pub fn parse(src: &str, n: usize) -> Result<Template> {
        let (coeffs, rest) = harry_dym::combination(src, n)?;
        if !rest.is_zero() {
            return Err(Error::Internal(format!("template {src} has a term outside the basis")));
        }
        let slots = coeffs
            .into_iter()
            .map(|c| {
                if let Some(r) = c.as_rat() {
                    Ok(Slot::Fixed(r))
                } else if let Some(s) = c.as_symbol() {
                    Ok(Slot::Free(s.name().to_string()))
                } else {
                    Err(Error::Internal(format!("template {src} has coefficient {c}")))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Template { source: src.to_string(), slots })
    }

    pub fn matches(&self, w: &[Rat]) -> bool {
        self.slots.iter().zip(w).all(|(s, x)| match s {
            Slot::Fixed(r) => r == x,
            Slot::Free(_) => true,
        })
    }

    /// Whether the two templates constrain the same coordinates the same way.
    pub fn same_pattern(&self, other: &Template) -> bool {
        self.slots.iter().zip(&other.slots).all(|(a, b)| match (a, b) {
            (Slot::Fixed(x), Slot::Fixed(y)) => x == y,
            (Slot::Free(_), Slot::Free(_)) => true,
            _ => false,
        })
    }

    pub fn params(&self, w: &[Rat]) -> Vec<(String, Rat)> {
        self.slots
            .iter()
            .zip(w)
            .filter_map(|(s, x)| match s {
                Slot::Free(name) => Some((name.clone(), x.clone())),
                Slot::Fixed(_) => None,
            })
            .collect()
    }

    pub fn instantiate(&self, values: &dyn Fn(&str) -> Rat) -> Vec<Rat> {
        self.slots
            .iter()
            .map(|s| match s {
                Slot::Fixed(r) => r.clone(),
                Slot::Free(name) => values(name),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Multiply the whole vector by a nonzero rational.
    Scale(Rat),
    /// `Ad(exp(mu v_generator))`.
    Adjoint { generator: usize, mu: Rat },
    /// `Ad(exp(mu v_generator))` with `mu = ln(factor)/g` for a diagonal generator, `g` being
    /// its smallest nonzero rate in absolute value; `factor > 0`.
    Dilate { generator: usize, factor: Rat },
}

impl Step {
    pub fn inverse(&self) -> Step {
        match self {
            Step::Scale(q) => Step::Scale(q.recip()),
            Step::Adjoint { generator, mu } => Step::Adjoint { generator: *generator, mu: -mu },
            Step::Dilate { generator, factor } => Step::Dilate { generator: *generator, factor: factor.recip() },
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Scale(q) => write!(f, "scale {}", fmt_rat(q)),
            Step::Adjoint { generator, mu } => write!(f, "adjoint v{} {}", generator + 1, fmt_rat(mu)),
            Step::Dilate { generator, factor } => write!(f, "dilate v{} {}", generator + 1, fmt_rat(factor)),
        }
    }
}

impl FromStr for Step {
    type Err = Error;
    fn from_str(s: &str) -> Result<Step> {
        let bad = || Error::Internal(format!("bad trace step: {s}"));
        let w: Vec<&str> = s.split_whitespace().collect();
        let gen = |t: &str| t.strip_prefix('v').and_then(|k| k.parse::<usize>().ok()).filter(|&k| k > 0).map(|k| k - 1);
        match w.as_slice() {
            ["scale", q] => Ok(Step::Scale(parse_rat(q).filter(|q| !q.is_zero()).ok_or_else(bad)?)),
            ["adjoint", g, mu] => Ok(Step::Adjoint { generator: gen(g).ok_or_else(bad)?, mu: parse_rat(mu).ok_or_else(bad)? }),
            ["dilate", g, f] => Ok(Step::Dilate {
                generator: gen(g).ok_or_else(bad)?,
                factor: parse_rat(f).filter(|f| f.is_positive()).ok_or_else(bad)?,
            }),
            _ => Err(bad()),
        }
    }
}

/// Steps in application order; one line per step in its text form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    pub fn inverse(&self) -> ReductionTrace {
        ReductionTrace { steps: self.steps.iter().rev().map(Step::inverse).collect() }
    }

    pub fn script(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }

    pub fn parse_script(s: &str) -> Result<ReductionTrace> {
        let steps = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(Step::from_str).collect::<Result<_>>()?;
        Ok(ReductionTrace { steps })
    }
}

/// Result of normalization: family number (1-based), free parameters and coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representative {
    pub family: usize,
    pub params: Vec<(String, Expr)>,
    pub coords: Vec<Rat>,
}

impl Representative {
    pub fn family_name(&self) -> String {
        format!("v^{}", self.family)
    }

    pub fn to_string_with(&self, labels: &[String]) -> String {
        fmt_combination(&self.coords, labels)
    }
}

/// Ladder plus the closed-form adjoint matrices it applies.
pub struct Normalizer {
    pub n: usize,
    pub adjoints: Vec<AdjointMatrix>,
    pub ladder: Vec<LadderCase>,
    pub families: Vec<Option<Template>>,
}

impl Normalizer {
    pub fn new(g: &LieAlgebraTable, ladder: Vec<LadderCase>, families: &[&str]) -> Result<Normalizer> {
        let n = g.dim();
        let families = families
            .iter()
            .map(|s| if s.is_empty() { Ok(None) } else { Template::parse(s, n).map(Some) })
            .collect::<Result<_>>()?;
        Ok(Normalizer { n, adjoints: adjoint_table(g)?, ladder, families })
    }

    pub fn harry_dym() -> Result<Normalizer> {
        let g = LieAlgebraTable::structure_constants(&harry_dym::algebra_basis())?;
        Normalizer::new(&g, harry_dym_ladder(), &CANONICAL_FAMILIES)
    }

    pub fn apply_step(&self, step: &Step, w: &[Rat]) -> Result<Vec<Rat>> {
        match step {
            Step::Scale(q) => Ok(w.iter().map(|x| x * q).collect()),
            Step::Adjoint { generator, mu } => self
                .adjoints
                .get(*generator)
                .and_then(|m| m.apply_rational(mu, w))
                .ok_or_else(|| Error::Internal(format!("{step} has no rational action"))),
            Step::Dilate { generator, factor } => {
                let m = self.adjoints.get(*generator).ok_or_else(|| Error::Internal(format!("bad step {step}")))?;
                let g = dilation_rate(m)?;
                m.apply_dilation(&g, factor, w).ok_or_else(|| Error::Internal(format!("{step} has no rational action")))
            }
        }
    }

    pub fn replay(&self, trace: &ReductionTrace, w: &[Rat]) -> Result<Vec<Rat>> {
        trace.steps.iter().try_fold(w.to_vec(), |acc, s| self.apply_step(s, &acc))
    }

    /// Coefficient of `v_c` after `Ad(exp(mu v_i))`, as polynomial coefficients in `mu`.
    fn coordinate_poly(&self, i: usize, c: usize, w: &[Rat]) -> Result<Vec<Rat>> {
        let m = &self.adjoints[i];
        let mut out: Vec<Rat> = Vec::new();
        for (j, wj) in w.iter().enumerate() {
            if wj.is_zero() {
                continue;
            }
            for (l, p) in m.entries[j][c].terms() {
                if !l.is_zero() {
                    return Err(Error::Internal(format!("v{} does not act unipotently", i + 1)));
                }
                if out.len() < p.len() {
                    out.resize(p.len(), Rat::zero());
                }
                for (o, x) in out.iter_mut().zip(p) {
                    *o += wj * x;
                }
            }
        }
        Ok(out)
    }

    pub fn normalize(&self, w: &[Rat]) -> Result<(Representative, ReductionTrace)> {
        if w.len() != self.n {
            return Err(Error::Dimension { expected: self.n, got: w.len() });
        }
        if w.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let rung = self
            .ladder
            .iter()
            .find(|r| !w[r.pivot].is_zero())
            .ok_or_else(|| Error::Internal("no ladder case applies".into()))?;
        let mut trace = ReductionTrace::default();
        let mut v = w.to_vec();
        let push = |s: Step, v: &mut Vec<Rat>, trace: &mut ReductionTrace| -> Result<()> {
            *v = self.apply_step(&s, v)?;
            trace.steps.push(s);
            Ok(())
        };
        if !v[rung.pivot].is_one() {
            let q = v[rung.pivot].recip();
            push(Step::Scale(q), &mut v, &mut trace)?;
        }
        for &(c, i) in &rung.kills {
            if v[c].is_zero() {
                continue;
            }
            let p = self.coordinate_poly(i, c, &v)?;
            if p.len() != 2 {
                return Err(Error::Internal(format!("v{} cannot remove coordinate {}", i + 1, c + 1)));
            }
            let mu = -&p[0] / &p[1];
            push(Step::Adjoint { generator: i, mu }, &mut v, &mut trace)?;
        }
        if let Some((c, i)) = rung.dilate {
            if !v[c].is_zero() && !v[c].abs().is_one() {
                let m = &self.adjoints[i];
                let rate = m.entries[c][c].terms().keys().next().cloned().unwrap_or_else(Rat::zero) / dilation_rate(m)?;
                let factor = if rate.is_one() {
                    v[c].abs().recip()
                } else if rate == -Rat::one() {
                    v[c].abs()
                } else {
                    return Err(Error::Internal(format!("v{} cannot normalize coordinate {}", i + 1, c + 1)));
                };
                push(Step::Dilate { generator: i, factor }, &mut v, &mut trace)?;
            }
        }
        let rep = self.identify(&v)?;
        Ok((rep, trace))
    }

    fn identify(&self, v: &[Rat]) -> Result<Representative> {
        let hits: Vec<usize> = self
            .families
            .iter()
            .enumerate()
            .filter_map(|(k, t)| t.as_ref().filter(|t| t.matches(v)).map(|_| k))
            .collect();
        match hits.as_slice() {
            [k] => {
                let t = self.families[*k].as_ref().unwrap();
                let params = t.params(v).into_iter().map(|(n, r)| (n, Expr::rat(r))).collect();
                Ok(Representative { family: k + 1, params, coords: v.to_vec() })
            }
            [] => Err(Error::Internal(format!("no family matched {}", fmt_combination(v, &default_labels(self.n))))),
            _ => Err(Error::Internal(format!("several families matched {}", fmt_combination(v, &default_labels(self.n))))),
        }
    }

    pub fn classify(&self, w: &[Rat]) -> Result<usize> {
        Ok(self.normalize(w)?.0.family)
    }
}

/// The `g` in `e^(g mu)` for a diagonal one-parameter group: its single nonzero exponent
/// of smallest absolute value.
fn dilation_rate(m: &AdjointMatrix) -> Result<Rat> {
    let mut best: Option<Rat> = None;
    for (j, row) in m.entries.iter().enumerate() {
        for (k, e) in row.iter().enumerate() {
            if j != k && !e.is_zero() {
                return Err(Error::Internal(format!("v{} is not diagonal", m.generator + 1)));
            }
            for l in e.terms().keys().filter(|l| !l.is_zero()) {
                if best.as_ref().is_none_or(|b| l.abs() < b.abs()) {
                    best = Some(l.abs());
                }
            }
        }
    }
    best.ok_or_else(|| Error::Internal(format!("v{} does not dilate", m.generator + 1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    /// 1-based index in the printed table.
    pub printed: usize,
    pub template: String,
    #[serde(serialize_with = "ser_rats")]
    pub sample: Vec<Rat>,
    /// Family the sample classifies to.
    pub classified: usize,
    /// Classifies to the family with the same number.
    pub own_family: bool,
    /// Normalization leaves the sample unchanged.
    pub fixed_point: bool,
    /// The printed pattern of fixed and free coefficients equals the ladder's.
    pub same_pattern: bool,
    pub canonical: String,
}

fn ser_rats<S: serde::Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rat))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub rows: Vec<AuditRow>,
    /// Printed families (1-based) whose samples land in the same family.
    pub duplicates: Vec<(usize, usize)>,
    /// Printed families that are textually identical.
    pub identical: Vec<(usize, usize)>,
    /// Ladder families with no printed counterpart.
    pub unprinted: Vec<usize>,
}

/// Checks each printed family at random parameter values (nonzero, seeded).
pub fn audit_table(norm: &Normalizer, printed: &[&str], seed: u64) -> Result<Audit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for (k, src) in printed.iter().enumerate() {
        let t = Template::parse(src, norm.n)?;
        let vals: Vec<(String, Rat)> = t
            .slots
            .iter()
            .filter_map(|s| match s {
                Slot::Free(n) => Some(n.clone()),
                Slot::Fixed(_) => None,
            })
            .map(|n| {
                let mut v = 0;
                while v == 0 {
                    v = rng.gen_range(-9..=9);
                }
                (n, frac(v, rng.gen_range(1..=4)))
            })
            .collect();
        let sample = t.instantiate(&|name| vals.iter().find(|(n, _)| n == name).unwrap().1.clone());
        let (rep, _) = norm.normalize(&sample)?;
        let canon = norm.families.get(k).cloned().flatten();
        rows.push(AuditRow {
            printed: k + 1,
            template: src.to_string(),
            classified: rep.family,
            own_family: rep.family == k + 1,
            fixed_point: rep.coords == sample,
            same_pattern: canon.as_ref().is_some_and(|c| c.same_pattern(&t)),
            canonical: canon.map(|c| c.source).unwrap_or_default(),
            sample,
        });
    }
    let mut duplicates = Vec::new();
    let mut identical = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if rows[i].classified == rows[j].classified {
                duplicates.push((i + 1, j + 1));
            }
            if printed[i].split_whitespace().eq(printed[j].split_whitespace()) {
                identical.push((i + 1, j + 1));
            }
        }
    }
    let reached: Vec<usize> = rows.iter().map(|r| r.classified).collect();
    let unprinted = (1..=norm.families.len()).filter(|f| norm.families[f - 1].is_some() && !reached.contains(f)).collect();
    Ok(Audit { rows, duplicates, identical, unprinted })
}

/// Random nonzero vector with integer coefficients in `[-9, 9]`.
pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<Rat> {
    loop {
        let v: Vec<Rat> = (0..n).map(|_| Rat::from_integer(rng.gen_range(-9..=9).into())).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Parses `r1,...,rn`.
pub fn parse_vector(s: &str) -> Result<Vec<Rat>> {
    s.split(',')
        .map(|t| parse_rat(t.trim()).ok_or_else(|| Error::Internal(format!("bad rational {t:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_script_round_trip() {
        let t = ReductionTrace {
            steps: vec![
                Step::Scale(frac(-1, 3)),
                Step::Adjoint { generator: 0, mu: frac(5, 2) },
                Step::Dilate { generator: 3, factor: frac(1, 5) },
            ],
        };
        assert_eq!(ReductionTrace::parse_script(&t.script()).unwrap(), t);
        assert!("dilate v4 -2".parse::<Step>().is_err());
    }

    #[test]
    fn template_patterns() {
        let t = Template::parse("v6 - v7 + a*v8", 10).unwrap();
        assert_eq!(t.slots[6], Slot::Fixed(frac(-1, 1)));
        assert_eq!(t.slots[7], Slot::Free("a".into()));
        assert!(!t.same_pattern(&Template::parse("v6 - v7 + v8", 10).unwrap()));
    }
}
