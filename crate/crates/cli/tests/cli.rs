use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn instance(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "instances", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = hecke(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (out.status.code().unwrap(), v)
}

fn leaves(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| leaves(k, x, out)),
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            xs.iter().for_each(|x| leaves(prefix, x, out))
        }
        Value::Array(xs) => {
            let parts: Vec<String> = xs.iter().map(scalar).collect();
            out.push((prefix.into(), format!("[{}]", parts.join(", "))));
        }
        x => out.push((prefix.into(), scalar(x))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[test]
fn pairing_of_the_diagonal_generator() {
    let (code, v) = json(&[
        "pair",
        &instance("n2-plain.json"),
        "t[1,1]",
        "t[1,1]",
        "--c",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "s^4");
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn pairing_scales_with_c() {
    let n2 = instance("n2-plain.json");
    let (_, v) = json(&["pair", &n2, "t[2,1]", "t[1,2]", "--c", "2"]);
    assert_eq!(v["value"], "2*s^4 - 2");
    let (_, v) = json(&["pair", &n2, "t[2,1]", "t[1,2]"]);
    assert_eq!(v["value"], "s^4 - 1");
    // the S_21^21 entry is a structural zero
    let (_, v) = json(&["pair", &n2, "t[1,2]", "t[2,1]"]);
    assert_eq!(v["value"], "0");
    // words of length 2 against length 2: four generator pairings
    let (_, v) = json(&["pair", &n2, "t[1,1]*t[2,2]", "t[1,1]*t[2,2]", "--c", "2"]);
    assert_eq!(v["value"], "16*s^12");
}

#[test]
fn verify_plain_n2() {
    let (code, v) = json(&["verify", &instance("n2-plain.json")]);
    assert_eq!(code, 0, "{v:#}");
    assert_eq!(v["scalar_m"], false);
    assert_eq!(v["gram_det"], "0");
    assert_eq!(v["degeneracy_factors"][0], "z_2 = q");
    let checks = v["checks"].as_object().unwrap();
    for key in [
        "ybe",
        "hecke",
        "tl_relations",
        "constraints",
        "well_definedness",
        "centrality",
        "det_pairing",
        "det_counit",
        "closed_form",
        "poincare",
        "product_rule",
    ] {
        assert!(checks.contains_key(key), "missing {key}");
    }
    for key in ["ybe", "hecke", "tl_relations", "det_pairing", "closed_form"] {
        assert_eq!(checks[key]["status"], "pass", "{key}");
    }
    assert_eq!(checks["det_counit"]["status"], "skipped");
    assert_eq!(checks["centrality"]["criterion"], false);
    assert_eq!(checks["centrality"]["ideal_membership"], false);
}

#[test]
fn verify_scalar_instances_compute_c() {
    let (code, v) = json(&["verify", &instance("n2-scalar.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["c"]["value"], "1/s^3");
    assert_eq!(v["checks"]["det_counit"]["status"], "pass");
    let (code, v) = json(&["verify", &instance("n2-scalar-plus.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["c"]["value"], "(1/s^3)*th");
    let (code, v) = json(&["verify", &instance("n3.json"), "--lmax", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["scalar_m"], true);
    assert_eq!(
        v["checks"]["poincare"]["dims_minus"],
        serde_json::json!([1, 3, 1, 0])
    );
}

#[test]
fn text_and_json_carry_the_same_results() {
    let path = instance("n2-scalar.json");
    let (_, v) = json(&["verify", &path]);
    let text = String::from_utf8(hecke(&["verify", &path]).stdout).unwrap();
    let mut expected = Vec::new();
    leaves("", &v, &mut expected);
    assert!(expected.len() > 30);
    for (k, x) in expected {
        let line = format!("{k}: {x}");
        assert!(
            text.lines().any(|l| l.trim_start() == line),
            "{line} not in text output"
        );
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "scan",
        "--n",
        "4",
        "--samples",
        "30",
        "--seed",
        "11",
        "--json",
    ];
    let a = hecke(&args);
    let b = hecke(&args);
    assert_eq!(a.stdout, b.stdout);
    let path = instance("n3.json");
    let a = hecke(&["gram", &path, "--dump-matrix"]);
    let b = hecke(&["gram", &path, "--dump-matrix"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scan_exit_codes() {
    let (code, v) = json(&["scan", "--n", "3", "--samples", "20", "--seed", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["degenerate_count"], 0);
    let (code, v) = json(&["scan", "--n", "4", "--samples", "10", "--planted"]);
    assert_eq!(code, 0);
    assert_eq!(v["degenerate_count"], 10);
    assert_eq!(v["flagged"][0]["factors"][0], "z_1 = q");
    // a tolerance this loose flags everything, so the nondegeneracy check fails
    let (code, v) = json(&["scan", "--n", "3", "--samples", "5", "--tol", "1e300"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["status"], "fail");
}

#[test]
fn scan_with_fixed_sigma() {
    let (code, v) = json(&["scan", "--n", "5", "--samples", "4", "--sigma", "-1.8,0.7"]);
    assert_eq!(code, 0);
    assert_eq!(v["sigma"], serde_json::json!([-1.8, 0.7]));
}

#[test]
fn scan_refuses_n2() {
    let out = hecke(&["scan", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("always degenerate"));
}

#[test]
fn constraint_violation_is_an_input_error() {
    let out = hecke(&["verify", &instance("bad-trace.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("tr Z = 1+q"), "{err}");
}

#[test]
fn parse_errors_carry_positions() {
    let out = hecke(&[
        "pair",
        &instance("n2-plain.json"),
        "t[1,1] * * t[2,2]",
        "t[1,1]",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("column 10"), "{err}");
    let out = hecke(&["pair", &instance("n2-plain.json"), "t[3,1]", "t[1,1]"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hecke(&["construct", "/nonexistent/instance.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_echo_loads_back() {
    let (code, v) = json(&["construct", &instance("n3.json")]);
    assert_eq!(code, 0);
    let echo = &v["instance"];
    assert_eq!(echo["derived"]["z"][1], "-s^2");
    let tmp = std::env::temp_dir().join(format!("hecke-echo-{}.json", std::process::id()));
    std::fs::write(&tmp, serde_json::to_string(echo).unwrap()).unwrap();
    let (code, w) = json(&["construct", tmp.to_str().unwrap()]);
    std::fs::remove_file(&tmp).ok();
    assert_eq!(code, 0);
    assert_eq!(&w["instance"], echo);
}

#[test]
fn action_on_a_basis_vector() {
    let (code, v) = json(&["act", &instance("n2-plain.json"), "t[1,1]", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["vector"], "(s^4)*x(1)");
    let (_, v) = json(&["act", &instance("n2-plain.json"), "t[1,2]", "2"]);
    assert_eq!(v["components"]["x(1)"], "s^4 - 1");
    let out = hecke(&["act", &instance("n2-plain.json"), "t[1,1]", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gram_closed_form() {
    let (code, v) = json(&["gram", &instance("n3.json"), "--closed-form"]);
    assert_eq!(code, 0);
    assert_eq!(v["closed_form"]["status"], "pass");
    assert_eq!(v["blocks"]["single"], 3);
    assert_eq!(v["blocks"]["pair"], 3);
    let (_, v) = json(&["gram", &instance("n2-plain.json"), "--dump-matrix"]);
    assert_eq!(v["det"], "0");
    assert_eq!(v["matrix"]["rows"][0][0], "s^4");
}

#[test]
fn poincare_tables() {
    let (code, v) = json(&[
        "poincare",
        &instance("n4-imaginary.json"),
        "--lmax",
        "4",
        "--check-product-rule",
        "5",
    ]);
    assert_eq!(code, 0, "{v:#}");
    assert_eq!(v["dims_plus"], serde_json::json!([1, 4, 15, 56, 209]));
    assert_eq!(v["product_rule"]["status"], "pass");
}

#[test]
fn complex_instances_skip_exact_ranks() {
    let (code, v) = json(&["verify", &instance("n2-complex.json"), "--lmax", "3"]);
    assert_eq!(code, 0, "{v:#}");
    assert_eq!(v["checks"]["poincare"]["status"], "skipped");
    assert_eq!(v["checks"]["ybe"]["status"], "pass");
    let out = hecke(&["poincare", &instance("n2-complex.json")]);
    assert_eq!(out.status.code(), Some(2));
}
