//! One report per subcommand, rendered as text, JSON or LaTeX.

use std::fmt::Write;

use approxsym::adjoint::{self, adjoint_table};
use approxsym::detsolve::{approximate_symmetries, auxiliary_h, exact_residual, Ansatz, PerturbedPDE};
use approxsym::harry_dym::{self, combination, field_of};
use approxsym::invariants::{self, characteristic_invariants, independent, verify_invariant, InvariantRow};
use approxsym::liealg::{self, *};
use approxsym::optimal::{audit_table, parse_vector, Normalizer, CANONICAL_FAMILIES};
use approxsym::symbolic::rat::fmt_rat;
use approxsym::symbolic::parse;
use approxsym::{Error, Rat, Result, VectorField};
use serde_json::{json, Value};

pub struct RunConfig {
    pub pde: PerturbedPDE,
    /// Built-in equation: the printed reference tables are available.
    pub preset: bool,
    pub ansatz: Ansatz,
    pub seed: u64,
    pub color: bool,
}

pub struct Report {
    pub text: String,
    pub json: Value,
    pub latex: String,
    /// Number of disagreements with the printed tables.
    pub diffs: usize,
}

impl RunConfig {
    fn mark(&self, ok: bool) -> String {
        let (word, code) = if ok { ("ok", "32") } else { ("DIFF", "31") };
        if self.color {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    }

    fn heading(&self, s: &str) -> String {
        if self.color {
            format!("\x1b[1m{s}\x1b[0m\n")
        } else {
            format!("{s}\n")
        }
    }

    /// `v1..v2n` of the computed exact basis.
    fn algebra(&self) -> Result<LieAlgebraTable> {
        if self.preset {
            return LieAlgebraTable::structure_constants(&harry_dym::algebra_basis());
        }
        LieAlgebraTable::structure_constants(&approximate_symmetries(&self.pde, &self.ansatz)?.algebra_basis())
    }
}

fn field_json(f: &VectorField) -> Value {
    json!({ "xi": f.xi.to_string(), "tau": f.tau.to_string(), "phi": f.phi.to_string() })
}

fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(fmt_rat(r))).collect())
}

fn tex(s: &str) -> String {
    parse(s).map(|e| e.to_latex()).unwrap_or_else(|_| s.to_string())
}

struct RefCheck {
    item: &'static str,
    printed: String,
    derived: String,
    ok: bool,
}

fn reference_json(checks: &[RefCheck]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| json!({ "item": c.item, "printed": c.printed, "derived": c.derived, "status": if c.ok { "ok" } else { "diff" } }))
            .collect(),
    )
}

fn reference_text(cfg: &RunConfig, out: &mut String, checks: &[RefCheck]) {
    if checks.is_empty() {
        return;
    }
    out.push_str(&cfg.heading("Reference comparison"));
    for c in checks {
        let _ = writeln!(out, "  [{}] {}", cfg.mark(c.ok), c.item);
        let _ = writeln!(out, "      printed: {}", c.printed);
        let _ = writeln!(out, "      derived: {}", c.derived);
    }
}

fn symmetry_checks(cfg: &RunConfig) -> Result<Vec<RefCheck>> {
    let pde = &cfg.pde;
    let printed = harry_dym::printed_exact_basis();
    let derived = harry_dym::exact_basis();
    let generic = VectorField::parse(harry_dym::PRINTED_GENERIC_XI, harry_dym::PRINTED_GENERIC_TAU, harry_dym::PRINTED_GENERIC_PHI);
    let res = exact_residual(&generic, pde)?;
    let h = auxiliary_h(&harry_dym::generic_exact_generator(), pde)?;
    let [a, b, c] = harry_dym::PRINTED_DEFORMATION;
    let deformation = VectorField::parse(a, b, c);
    let x0 = harry_dym::generic_exact_generator();
    let dres = &exact_residual(&deformation, pde)? + &h;
    Ok(vec![
        RefCheck {
            item: "quadratic exact generator",
            printed: format!("{} (residual {})", printed[4], exact_residual(&printed[4], pde)?),
            derived: format!("{} (residual 0)", derived[4]),
            ok: printed[4] == derived[4],
        },
        RefCheck {
            item: "general exact generator",
            printed: format!("{generic} (residual {res})"),
            derived: format!("{x0}"),
            ok: res.is_zero(),
        },
        RefCheck { item: "auxiliary function H", printed: harry_dym::PRINTED_H.to_string(), derived: h.to_string(), ok: h == parse(harry_dym::PRINTED_H)? },
        RefCheck {
            item: "general deformation X1",
            printed: format!("{deformation} (residual + H = {dres})"),
            derived: "solves the deformation equation only with C1 = 0, or with -C1/3*u in phi".into(),
            ok: dres.is_zero(),
        },
    ])
}

pub fn symmetries(cfg: &RunConfig) -> Result<Report> {
    let a = approximate_symmetries(&cfg.pde, &cfg.ansatz)?;
    let exact = a.exact.fields();
    let mut text = String::new();
    let _ = writeln!(text, "F0 = {}\nF1 = {}\n", cfg.pde.f0, cfg.pde.f1);
    text.push_str(&cfg.heading(&format!("Exact symmetries ({})", exact.len())));
    for (k, f) in exact.iter().enumerate() {
        let _ = writeln!(text, "  X{} = {f}", k + 1);
    }
    text.push_str(&cfg.heading("\nStability"));
    for (k, d) in a.deformations.iter().enumerate() {
        match d {
            Some(d) => writeln!(text, "  X{}: stable, H = {}, X1 = {}", k + 1, d.h, d.particular),
            None => writeln!(text, "  X{}: unstable, no deformation X1", k + 1),
        }
        .ok();
    }
    text.push_str(&cfg.heading(&format!("\nApproximate symmetries ({})", a.basis.len())));
    for (k, g) in a.basis.iter().enumerate() {
        let _ = writeln!(text, "  v{} = {}", k + 1, g.field);
    }
    let checks = if cfg.preset { symmetry_checks(cfg)? } else { Vec::new() };
    if !checks.is_empty() {
        text.push('\n');
    }
    reference_text(cfg, &mut text, &checks);

    let mut latex = String::from("\\begin{align*}\n");
    for (k, f) in exact.iter().enumerate() {
        let _ = writeln!(latex, "X_{{{}}} &= {} \\\\", k + 1, f.to_latex());
    }
    for (k, g) in a.basis.iter().enumerate() {
        let _ = writeln!(latex, "v_{{{}}} &= {} \\\\", k + 1, g.field.to_latex());
    }
    latex.push_str("\\end{align*}\n");

    let json = json!({
        "pde": { "f0": cfg.pde.f0.to_string(), "f1": cfg.pde.f1.to_string() },
        "ansatz": cfg.ansatz,
        "exact": exact.iter().map(field_json).collect::<Vec<_>>(),
        "deformations": a.deformations.iter().map(|d| match d {
            Some(d) => json!({ "stable": true, "h": d.h.to_string(), "particular": field_json(&d.particular) }),
            None => json!({ "stable": false, "h": null, "particular": null }),
        }).collect::<Vec<_>>(),
        "approximate": a.basis.iter().map(|g| json!({
            "field": field_json(&g.field),
            "order": format!("{:?}", g.order),
        })).collect::<Vec<_>>(),
        "reference": reference_json(&checks),
    });
    Ok(Report { text, json, latex, diffs: checks.iter().filter(|c| !c.ok).count() })
}

fn table_latex(g: &LieAlgebraTable) -> String {
    let n = g.dim();
    let mut out = format!("\\begin{{tabular}}{{c|{}}}\n$[\\,,\\,]$", "c".repeat(n));
    for l in &g.labels {
        let _ = write!(out, " & ${}$", tex(l));
    }
    out.push_str(" \\\\\n\\hline\n");
    for i in 0..n {
        let _ = write!(out, "${}$", tex(&g.labels[i]));
        for j in 0..n {
            let _ = write!(out, " & ${}$", tex(&g.entry_string(i, j)));
        }
        out.push_str(" \\\\\n");
    }
    out.push_str("\\end{tabular}\n");
    out
}

fn units(idx: &[usize]) -> Subspace {
    Subspace::units(10, idx.iter().map(|i| i - 1))
}

pub fn algebra(cfg: &RunConfig) -> Result<Report> {
    let g = cfg.algebra()?;
    let n = g.dim();
    let labels = g.labels.clone();
    let series = derived_series(&g);
    let r = radical(&g)?;
    let chain = solvable_chain(&g, &r)?;
    let mut text = cfg.heading("Commutator table");
    text.push_str(&g.to_string());
    let _ = writeln!(text, "antisymmetric: {}, Jacobi: {}", g.is_antisymmetric(), g.satisfies_jacobi());
    text.push_str(&cfg.heading("\nDerived series"));
    for (k, s) in series.iter().enumerate() {
        let _ = writeln!(text, "  g({k}) dim {}: {}", s.dim(), s.describe(&labels));
    }
    let _ = writeln!(text, "radical: {}", r.describe(&labels));
    for (k, s) in chain.iter().enumerate() {
        let _ = writeln!(text, "  r({}) = {}", k + 1, s.describe(&labels));
    }
    let mut json = json!({
        "dim": n,
        "labels": labels,
        "table": g.to_json(),
        "antisymmetric": g.is_antisymmetric(),
        "jacobi": g.satisfies_jacobi(),
        "derived_series": series.iter().map(|s| json!({ "dim": s.dim(), "span": s.describe(&labels) })).collect::<Vec<_>>(),
        "radical": r.describe(&labels),
        "radical_chain": chain.iter().map(|s| s.describe(&labels)).collect::<Vec<_>>(),
    });
    let mut checks = Vec::new();
    if cfg.preset {
        let levi_space = units(&harry_dym::PRINTED_LEVI);
        let levi = levi_check(&g, &levi_space)?;
        let s = g.restrict(&levi_space)?;
        let a38 = builtin_algebra("A3,8").ok_or_else(|| Error::Internal("missing A3,8".into()))?;
        let printed_map: Vec<Rat> = harry_dym::PRINTED_S_MAP.iter().map(|k| Rat::from_integer((*k).into())).collect();
        let printed_ok = check_homomorphism(&diagonal(&printed_map), &s, &a38);
        let found = diagonal_search(&s, &a38, 3);
        let _ = writeln!(
            text,
            "Levi factor {}: subalgebra {}, nondegenerate Killing form {}, meets radical trivially {}, complements radical {}",
            levi_space.describe(&labels),
            levi.subalgebra,
            levi.nondegenerate,
            levi.meets_radical_trivially,
            levi.complements_radical
        );
        let fmt_map = |m: &[Rat]| m.iter().map(fmt_rat).collect::<Vec<_>>().join(", ");
        let found_s = found.as_deref().map(fmt_map).unwrap_or_else(|| "none".into());
        let _ = writeln!(text, "A3,8 isomorphism (diagonal map on v1, v3, v5): {found_s}");
        json["levi"] = json!({
            "span": levi_space.describe(&labels),
            "subalgebra": levi.subalgebra,
            "nondegenerate": levi.nondegenerate,
            "meets_radical_trivially": levi.meets_radical_trivially,
            "complements_radical": levi.complements_radical,
            "a38_map": found.as_deref().map(rats),
        });
        for e in liealg::diff_table(&g, &harry_dym::PRINTED_COMMUTATORS)? {
            checks.push(RefCheck { item: "commutator", printed: format!("{} = {}", bracket_name(&e, &labels), e.printed), derived: e.derived.clone(), ok: false });
        }
        let spans = [
            ("g(1)", &series[1], units(&harry_dym::PRINTED_DERIVED_1)),
            ("g(2)", &series[2], units(&harry_dym::PRINTED_DERIVED_2)),
            ("radical", &r, units(&harry_dym::PRINTED_RADICAL)),
        ];
        for (item, got, want) in spans {
            checks.push(RefCheck { item, printed: want.describe(&labels), derived: got.describe(&labels), ok: *got == want });
        }
        checks.push(RefCheck {
            item: "radical chain",
            printed: format!("r(1) = {}, r(2) = {}", units(&harry_dym::PRINTED_RADICAL_1).describe(&labels), units(&harry_dym::PRINTED_RADICAL_2).describe(&labels)),
            derived: format!("[r, r] = {}, then {}", chain[1].describe(&labels), chain.get(2).map(|s| s.describe(&labels)).unwrap_or_default()),
            ok: chain.len() > 1 && chain[0] == units(&harry_dym::PRINTED_RADICAL_1) && chain[1] == units(&harry_dym::PRINTED_RADICAL_2),
        });
        checks.push(RefCheck { item: "Levi decomposition", printed: levi_space.describe(&labels), derived: format!("{levi:?}"), ok: levi.all() });
        checks.push(RefCheck {
            item: "isomorphism onto A3,8",
            printed: format!("diag({})", fmt_map(&printed_map)),
            derived: format!("diag({found_s})"),
            ok: printed_ok,
        });
        text.push('\n');
        reference_text(cfg, &mut text, &checks);
        json["reference"] = reference_json(&checks);
    }
    Ok(Report { text, json, latex: table_latex(&g), diffs: checks.iter().filter(|c| !c.ok).count() })
}

fn bracket_name(e: &EntryDiff, labels: &[String]) -> String {
    format!("[{}, {}]", labels[e.row], labels[e.col])
}

pub fn adjoint(cfg: &RunConfig) -> Result<Report> {
    let g = cfg.algebra()?;
    let t = adjoint_table(&g)?;
    let labels = g.labels.clone();
    let n = g.dim();
    let mut text = cfg.heading("Adjoint representation: row v_i, column v_j is Ad(exp(mu v_i)) v_j");
    text.push_str(&adjoint::table_text(&t, &labels));
    let cells: Vec<Vec<String>> = t.iter().map(|m| (0..n).map(|j| m.entry_string(j, &labels)).collect()).collect();
    let mut json = json!({ "labels": labels, "parameter": "mu", "table": cells });
    let mut checks = Vec::new();
    if cfg.preset {
        for e in adjoint::diff_table(&t, &harry_dym::PRINTED_ADJOINT)? {
            checks.push(RefCheck {
                item: "adjoint entry",
                printed: format!("Ad(exp(mu {})) {} = {}", labels[e.row], labels[e.col], e.printed),
                derived: e.derived.clone(),
                ok: false,
            });
        }
        text.push('\n');
        reference_text(cfg, &mut text, &checks);
        json["reference"] = reference_json(&checks);
    }
    Ok(Report { text, json, latex: adjoint::table_latex(&t, &labels), diffs: checks.len() })
}

pub fn optimal(cfg: &RunConfig, vector: Option<&str>) -> Result<Report> {
    if !cfg.preset {
        return Err(Error::Internal("the optimal-system ladder is only available for --preset harry-dym".into()));
    }
    let norm = Normalizer::harry_dym()?;
    let labels = default_labels(norm.n);
    if let Some(v) = vector {
        let w = parse_vector(v)?;
        let (rep, trace) = norm.normalize(&w)?;
        let canonical = norm.families[rep.family - 1].as_ref().map(|t| t.source.clone()).unwrap_or_default();
        let mut text = cfg.heading(&format!("{} ~ {}", fmt_combination(&w, &labels), rep.family_name()));
        let _ = writeln!(text, "family {}: {canonical}", rep.family_name());
        let _ = writeln!(text, "representative: {}", rep.to_string_with(&labels));
        for (p, v) in &rep.params {
            let _ = writeln!(text, "  {p} = {v}");
        }
        text.push_str("trace:\n");
        for s in &trace.steps {
            let _ = writeln!(text, "  {s}");
        }
        let json = json!({
            "input": rats(&w),
            "family": rep.family,
            "name": rep.family_name(),
            "canonical": canonical,
            "representative": rats(&rep.coords),
            "params": rep.params.iter().map(|(p, v)| json!({ "name": p, "value": v.to_string() })).collect::<Vec<_>>(),
            "trace": trace.steps.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        });
        let latex = format!("${}$ \\sim ${}$\n", tex(&fmt_combination(&w, &labels)), tex(&rep.to_string_with(&labels)));
        return Ok(Report { text, json, latex, diffs: 0 });
    }
    let audit = audit_table(&norm, &harry_dym::PRINTED_OPTIMAL, cfg.seed)?;
    let mut text = cfg.heading("One-dimensional optimal system");
    for (k, f) in CANONICAL_FAMILIES.iter().enumerate() {
        if !f.is_empty() {
            let _ = writeln!(text, "  v^{} = {f}", k + 1);
        }
    }
    let mut checks = Vec::new();
    for r in &audit.rows {
        checks.push(RefCheck {
            item: "optimal family",
            printed: format!("v^{} = {}", r.printed, r.template),
            derived: format!("classified v^{}; canonical {}; fixed point {}", r.classified, if r.canonical.is_empty() { "-" } else { &r.canonical }, r.fixed_point),
            ok: r.same_pattern && r.own_family && r.fixed_point,
        });
    }
    for (a, b) in &audit.duplicates {
        checks.push(RefCheck { item: "duplicate families", printed: format!("v^{a}, v^{b}"), derived: "same orbit".into(), ok: false });
    }
    for f in &audit.unprinted {
        checks.push(RefCheck { item: "missing family", printed: "-".into(), derived: format!("v^{f} = {}", CANONICAL_FAMILIES[f - 1]), ok: false });
    }
    text.push('\n');
    reference_text(cfg, &mut text, &checks);
    let mut latex = String::from("\\begin{tabular}{ll}\n");
    for (k, f) in CANONICAL_FAMILIES.iter().enumerate() {
        if !f.is_empty() {
            let _ = writeln!(latex, "$v^{{{}}}$ & ${}$ \\\\", k + 1, tex(f));
        }
    }
    latex.push_str("\\end{tabular}\n");
    let json = json!({
        "families": CANONICAL_FAMILIES.iter().enumerate().filter(|(_, f)| !f.is_empty()).map(|(k, f)| json!({ "family": k + 1, "template": f })).collect::<Vec<_>>(),
        "audit": audit,
        "reference": reference_json(&checks),
    });
    Ok(Report { text, json, latex, diffs: checks.iter().filter(|c| !c.ok).count() })
}

/// Generator given as a combination of `v1..vn` of the run's algebra.
fn generator(cfg: &RunConfig, src: &str) -> Result<VectorField> {
    let g = cfg.algebra()?;
    let (c, rest) = combination(src, g.dim())?;
    if !rest.is_zero() {
        return Err(Error::Internal(format!("{src} has a term outside v1..v{}", g.dim())));
    }
    Ok(field_of(&c, &g.basis))
}

fn row_json(r: &InvariantRow) -> Value {
    json!({
        "operator": r.operator,
        "field": { "xi": r.xi.to_string(), "tau": r.tau.to_string(), "phi": r.phi.to_string() },
        "printed": r.printed.as_ref().map(|(a, b)| json!([a, b])),
        "printed_ok": r.printed_ok.map(|(a, b)| json!([a, b])),
        "derived": r.derived.as_ref().map(|p| json!([p.first.to_string(), p.second.to_string()])),
        "derived_error": r.derived_error,
        "derived_ok": r.derived_ok,
        "independent": r.derived_independent,
    })
}

pub fn invariants(cfg: &RunConfig, gen: Option<&str>, checks_in: &[String]) -> Result<Report> {
    if let Some(src) = gen {
        let x = generator(cfg, src)?;
        let mut text = cfg.heading(&format!("{src} = {x}"));
        let candidates: Vec<(String, bool)> = checks_in
            .iter()
            .map(|c| Ok((parse(c)?.to_string(), verify_invariant(&x, &parse(c)?))))
            .collect::<Result<_>>()?;
        for (c, ok) in &candidates {
            let _ = writeln!(text, "  X({c}) = 0: {ok}");
        }
        let pair = match characteristic_invariants(&x) {
            Ok(p) => p,
            Err(Error::NotInCatalog(why)) if !candidates.is_empty() => {
                let _ = writeln!(text, "  catalog: {why}");
                let json = json!({ "generator": src, "field": field_json(&x), "checks": candidates.iter().map(|(c, ok)| json!({ "invariant": c, "ok": ok })).collect::<Vec<_>>() });
                return Ok(Report { text, json, latex: String::new(), diffs: 0 });
            }
            Err(Error::NotInCatalog(why)) => {
                return Err(Error::NotInCatalog(format!("{why}; pass candidate invariants with --check to verify them")));
            }
            Err(e) => return Err(e),
        };
        let indep = independent(&pair.first, &pair.second, 5, cfg.seed);
        let _ = writeln!(text, "  I1 = {}\n  I2 = {}\n  independent: {indep}", pair.first, pair.second);
        let latex = format!("$I_1 = {}$, $I_2 = {}$\n", pair.first.to_latex(), pair.second.to_latex());
        let json = json!({
            "generator": src,
            "field": field_json(&x),
            "invariants": [pair.first.to_string(), pair.second.to_string()],
            "independent": indep,
            "checks": candidates.iter().map(|(c, ok)| json!({ "invariant": c, "ok": ok })).collect::<Vec<_>>(),
        });
        return Ok(Report { text, json, latex, diffs: 0 });
    }
    if !cfg.preset {
        return Err(Error::Internal("pass --generator for a custom equation".into()));
    }
    let table = invariants::harry_dym_table()?;
    let mut text = cfg.heading("Invariants");
    text.push_str(&invariants::table_text(&table));
    let diffs = table.iter().filter(|r| !r.printed_pass()).count();
    let json = json!({ "rows": table.iter().map(row_json).collect::<Vec<_>>() });
    Ok(Report { text, json, latex: invariants::table_latex(&table), diffs })
}
