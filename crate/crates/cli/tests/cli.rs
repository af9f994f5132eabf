use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use approxsym::symbolic::parse;
use approxsym::{Expr, Symbol};
use jsonschema::JSONSchema;
use serde_json::Value;

fn approxsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_approxsym"))
        .args(args)
        .env("APPROXSYM_COLOR", "0")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf8")
}

fn schema(name: &str) -> JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../schemas/{name}.schema.json"));
    let src: Value = serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).expect("schema json");
    JSONSchema::compile(&src).expect("valid schema")
}

fn json_of(schema_name: &str, args: &[&str]) -> (Value, String) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = approxsym(&full);
    assert_ne!(o.status.code(), Some(2), "{}", stderr(&o));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).expect("json output");
    let s = schema(schema_name);
    if let Err(errors) = s.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{schema_name}: {msgs:?}");
    }
    (v, text)
}

fn round_trips(s: &str) -> Expr {
    let e = parse(s).unwrap_or_else(|err| panic!("{s}: {err}"));
    assert_eq!(parse(&e.to_string()).unwrap(), e);
    e
}

/// Strings printed from an `Expr` come back verbatim.
fn reparses(s: &str) {
    assert_eq!(round_trips(s).to_string(), s);
}

fn field_strings(v: &Value) -> Vec<&str> {
    ["xi", "tau", "phi"].iter().map(|k| v[k].as_str().expect("component")).collect()
}

#[test]
fn preset_exit_codes() {
    for cmd in ["symmetries", "algebra", "adjoint", "optimal", "invariants"] {
        let o = approxsym(&[cmd, "--preset", "harry-dym"]);
        assert_eq!(o.status.code(), Some(1), "{cmd}: reference differences are expected");
        assert!(!stdout(&o).contains('\x1b'), "{cmd}: color disabled");
    }
    let o = approxsym(&["optimal", "--preset", "harry-dym", "--vector", "0,0,0,0,0,0,0,1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("v8 ~ v^1"));
}

#[test]
fn custom_equation_smoke() {
    let o = approxsym(&["symmetries", "--pde", "u_t + u*u_x", "--perturb", "u_xx"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("Exact symmetries (6)"));
    assert!(!stdout(&o).contains("Reference comparison"));
}

#[test]
fn errors_exit_two() {
    let cases: [(&[&str], &str); 6] = [
        (&["optimal", "--preset", "harry-dym", "--vector", "0,0,0,0,0,0,0,0,0,0"], "zero vector"),
        (&["symmetries", "--pde", "u_t + u*(u_x", "--perturb", "u_xx"], "line 1, column 13"),
        (&["algebra", "--pde", "u_t - u_xx - x^3*u^3 - t^5*u^2*x", "--perturb", "u"], "empty basis"),
        (&["invariants", "--preset", "harry-dym", "--generator", "v4 + v5"], "--check"),
        (&["symmetries", "--preset", "harry-dym", "--pde", "u_t", "--perturb", "u"], "cannot be used with"),
        (&["symmetries"], "required"),
    ];
    for (args, msg) in cases {
        let o = approxsym(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(msg), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn algebra_report() {
    let out = stdout(&approxsym(&["algebra", "--preset", "harry-dym"]));
    assert!(out.contains("printed: [v2, v4] = 12*v2\n      derived: 3*v2"));
    assert!(out.contains("radical: span{v2, v4, v6, v7, v8, v9, v10}"));
    assert!(out.contains("A3,8 isomorphism (diagonal map on v1, v3, v5): 1, 1, -1"));
    let (v, _) = json_of("algebra", &["algebra", "--preset", "harry-dym"]);
    assert_eq!(v["dim"], 10);
    assert_eq!(v["levi"]["a38_map"], serde_json::json!(["1", "1", "-1"]));
    let latex = stdout(&approxsym(&["algebra", "--preset", "harry-dym", "--format", "latex"]));
    assert!(latex.starts_with("\\begin{tabular}"));
}

#[test]
fn adjoint_report() {
    let (v, _) = json_of("adjoint", &["adjoint", "--preset", "harry-dym"]);
    assert_eq!(v["table"][2][0], "exp(mu)*v1");
    let diffs = v["reference"].as_array().unwrap();
    assert_eq!(diffs.len(), 3);
    // mu = 0 gives the identity
    let at_zero = BTreeMap::from([(Symbol::param("mu"), Expr::zero())]);
    for row in v["table"].as_array().unwrap() {
        for (j, cell) in row.as_array().unwrap().iter().enumerate() {
            let e = round_trips(cell.as_str().unwrap()).substitute(&at_zero).unwrap();
            assert_eq!(e.to_string(), format!("v{}", j + 1));
        }
    }
}

#[test]
fn invariants_report() {
    let (v, _) = json_of("invariants", &["invariants", "--preset", "harry-dym"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 14);
    let failing: Vec<&str> = rows
        .iter()
        .filter(|r| r["printed_ok"].as_array().unwrap().iter().any(|b| b == false))
        .map(|r| r["operator"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["v1 + a*v2 + b*v7"]);
    let (v, _) = json_of("invariants", &["invariants", "--preset", "harry-dym", "--generator", "v7 + a*v8", "--check", "u/x", "--check", "(ln(x) - a*t)/a"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["ok"] == true));
    assert_eq!(v["independent"], true);
    for s in v["invariants"].as_array().unwrap() {
        reparses(s.as_str().unwrap());
    }
}

#[test]
fn json_is_byte_stable_and_round_trips() {
    let runs: [(&str, &[&str]); 3] = [
        ("symmetries", &["symmetries", "--preset", "harry-dym"]),
        ("optimal", &["optimal", "--preset", "harry-dym"]),
        ("optimal", &["optimal", "--preset", "harry-dym", "--vector", "1,2/3,0,-1,0,0,5,1,0,0", "--seed", "7"]),
    ];
    for (schema_name, args) in runs {
        let (v, first) = json_of(schema_name, args);
        let (_, second) = json_of(schema_name, args);
        assert_eq!(first, second, "{args:?}");
        if schema_name == "symmetries" {
            let mut exprs = Vec::new();
            for f in v["exact"].as_array().unwrap() {
                exprs.extend(field_strings(f));
            }
            for d in v["deformations"].as_array().unwrap() {
                exprs.push(d["h"].as_str().unwrap());
                exprs.extend(field_strings(&d["particular"]));
            }
            for g in v["approximate"].as_array().unwrap() {
                exprs.extend(field_strings(&g["field"]));
            }
            assert_eq!(exprs.len(), 5 * 3 + 5 * 4 + 10 * 3);
            exprs.into_iter().for_each(reparses);
        }
    }
}
