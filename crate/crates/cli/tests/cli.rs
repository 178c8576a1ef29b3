use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const LONG_WORD: &str = "x0^-1 x1 x0 x1 x0^-1 x1 x0^-1 x1^-1 x0^2 x1 x0 x1^2 x0^-1 x1^-3";

fn thompson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thompson")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Run with `--json`, check the exit code and validate against a shipped schema.
fn json_of(schema: &str, args: &[&str], code: i32) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = thompson(&full);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let value: Value = serde_json::from_str(&stdout(&out)).expect("JSON output");
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{schema}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("valid schema");
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} violates its schema: {errors:?}");
    value
}

#[test]
fn len_of_long_word() {
    let v = json_of("len", &["len", LONG_WORD], 0);
    assert_eq!(v["total"], 18);
    assert_eq!(v["l1"], 10);
    assert_eq!(v["l0"], 8);
    assert_eq!(v["top_labels"], "IILININI");
    assert_eq!(v["bottom_labels"], "LIIIRNIR");
}

#[test]
fn len_of_empty_word_and_witness() {
    assert_eq!(json_of("len", &["len", ""], 0)["total"], 0);
    assert_eq!(json_of("len", &["len", "x0^-2 x1 x0^4 x1^-3"], 0)["total"], 8);
    let text = stdout(&thompson(&["len", LONG_WORD]));
    assert!(text.starts_with("total 18 = 10 carets (6 top, 4 bottom) + 8"));
}

#[test]
fn parse_errors_exit_2() {
    for args in [vec!["len", "x0^"], vec!["len", "y1"], vec!["mul", "x1", "^(..) / ^(..) ."], vec!["pl-eval", "x1", "1/3"]] {
        let out = thompson(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    json_of("error", &["len", "x0^"], 2);
}

#[test]
fn element_commands() {
    let v = json_of("element", &["normalize", "x1 x1^-1 x0"], 0);
    assert_eq!(v["diagram"], ". ^. / ^. .");
    let v = json_of("element", &["normalize", "--raw", "^(..) . / ^(..) ."], 0);
    assert_eq!(v["diagram"], "^. / ^.");
    assert_eq!(v["raw"], "^(..) . / ^(..) .");
    let v = json_of("element", &["mul", "x0", "x0^-1"], 0);
    assert_eq!(v["length"], 0);
    let v = json_of("element", &["inv", "x0^-2 x1 x0^3 x1^-2"], 0);
    assert_eq!(v["length"], 6);
    let round = json_of("element", &["normalize", v["diagram"].as_str().unwrap()], 0);
    assert_eq!(round["diagram"], v["diagram"]);
}

#[test]
fn geodesic_has_formula_length() {
    let v = json_of("geodesic", &["geodesic", "x0^-2 x1 x0^3 x1^-2"], 0);
    assert_eq!(v["length"], 6);
    let same = json_of("element", &["mul", v["word"].as_str().unwrap(), "x1^2 x0^-3 x1^-1 x0^2"], 0);
    assert_eq!(same["length"], 0);
}

#[test]
fn ball_and_cache() {
    assert_eq!(stdout(&thompson(&["ball", "1"])).lines().next(), Some("5"));
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = json_of("ball", &["--cache-dir", d, "ball", "4"], 0);
    assert_eq!(first["count"], 161);
    assert_eq!(first["cached"], false);
    let second = json_of("ball", &["--cache-dir", d, "ball", "4"], 0);
    assert_eq!(second["cached"], true);
    assert_eq!(second["sphere_sizes"], first["sphere_sizes"]);
    let listed = json_of("ball", &["ball", "2", "--list"], 0);
    assert_eq!(listed["elements"].as_array().unwrap().len(), 17);
}

#[test]
fn resource_cap_exits_3_with_partial_output() {
    let v = json_of("partial", &["--max-elements", "40", "ball", "6"], 3);
    assert_eq!(v["reason"], "max-elements");
    let text = stdout(&thompson(&["--max-elements", "40", "convexity", "6"]));
    assert!(text.starts_with("PARTIAL"));
}

#[test]
fn convexity_table() {
    let v = json_of("convexity", &["convexity", "4"], 0);
    let cs: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["c"].as_u64().unwrap()).collect();
    assert_eq!(cs, [2, 2, 2, 8]);
}

#[test]
fn verify_n2_full_passes() {
    let v = json_of("verify", &["verify", "--n", "2", "--full"], 0);
    assert_eq!(v["witness"]["restricted_distance"], 12);
    assert_eq!(v["passed"], true);
    assert_eq!(v["complete"], true);
    assert_eq!(v["exits"]["passed"], true);
}

#[test]
fn verify_n8_examples_only_passes() {
    let v = json_of("verify", &["verify", "--n", "8", "--examples-only"], 0);
    let names: Vec<&str> = v["paths"]["paths"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"caret bridge"));
    assert!(v.get("witness").is_none());
}

#[test]
fn verify_n1_reports_identity_visit() {
    let v = json_of("verify", &["verify", "--n", "1", "--full"], 1);
    assert_eq!(v["witness"]["restricted_distance"], 8);
    assert_eq!(v["witness"]["passed"], true);
    let fixed = &v["paths"]["paths"][0];
    assert_eq!(fixed["name"], "fixed bottom");
    assert_eq!(fixed["visits_identity"], true);
    assert_eq!(fixed["passed"], false);
    assert!(stdout(&thompson(&["verify", "--n", "1"])).ends_with("FAIL\n"));
}

#[test]
fn verify_time_cap_is_partial_not_wrong() {
    let out = thompson(&["--max-seconds", "0", "verify", "--n", "3", "--full"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("partial"));
}

#[test]
fn analyze_path_trace() {
    let v = json_of(
        "path_trace",
        &["analyze-path", "x0^-2 x1 x0^3 x1^-2", "(x1 x0^3) (x1^-1 x0^-2) (x1^-1 x0^2) (x1 x0^-1)"],
        0,
    );
    assert_eq!(v["steps"].as_array().unwrap().len(), 13);
    assert_eq!(v["stays_in_ball"], true);
    assert!(v["h_l"].is_u64());
}

#[test]
fn restricted_and_shifted_pair() {
    let v = json_of("restricted", &["restricted", "x1", "x0", "--radius", "1"], 0);
    assert_eq!(v["distance"], 2);
    let v = json_of("restricted", &["restricted", "x0^-2 x1 x0^2 x1^-1", "x1 x0^2 x1^-1", "--radius", "4"], 0);
    assert_eq!(v["distance"], 8);
    let v = json_of("shifted_pair", &["shifted-pair", "2"], 0);
    assert_eq!(v["length_l"], 6);
    assert_eq!(v["radius"], 6);
}

#[test]
fn plmap_commands() {
    let v = json_of("plmap", &["plmap", "x1"], 0);
    assert_eq!(v["k_minus"], 0);
    assert_eq!(v["k_plus"], -1);
    assert_eq!(json_of("plmap", &["plmap", "x0"], 0)["k_plus"], -1);
    assert_eq!(json_of("pl_eval", &["pl-eval", "x1", "7/8"], 0)["value"], "7/16");
    assert_eq!(json_of("pl_eval", &["pl-eval", "", "7/8"], 0)["value"], "7/8");
}

#[test]
fn render_formats() {
    let v = json_of("render", &["render", "x1"], 0);
    assert!(v["drawing"].as_str().unwrap().contains('•'));
    let dot = stdout(&thompson(&["render", "--format", "dot", "x1"]));
    assert!(dot.starts_with("digraph"));
    let parens = stdout(&thompson(&["render", "--format", "parens", "x1"]));
    assert_eq!(parens, "top:    ^(..)\nbottom: ^. .\n");
}

#[test]
fn sweep_is_seeded_and_reproducible() {
    let a = json_of("sweep", &["--seed", "7", "sweep", "--samples", "40"], 0);
    let b = thompson(&["--json", "--seed", "7", "sweep", "--samples", "40"]);
    assert_eq!(serde_json::to_string_pretty(&a).unwrap() + "\n", stdout(&b));
    assert_eq!(a["passed"], true);
}

#[test]
fn output_is_byte_reproducible() {
    for args in [vec!["verify", "--n", "2", "--full"], vec!["convexity", "3"], vec!["ball", "3", "--list"]] {
        let a = thompson(&args);
        let b = thompson(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
