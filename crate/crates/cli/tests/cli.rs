use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn wolin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wolin")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn whiskered() -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/whiskered_triangle.json");
    p.to_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn graph_json(weights: &[u32], arcs: &[(usize, usize)]) -> String {
    let vertices: Vec<Value> = weights
        .iter()
        .enumerate()
        .map(|(i, w)| serde_json::json!({"id": format!("v{}", i + 1), "weight": w}))
        .collect();
    let arcs: Vec<Value> = arcs
        .iter()
        .map(|(a, b)| serde_json::json!([format!("v{}", a + 1), format!("v{}", b + 1)]))
        .collect();
    serde_json::json!({"vertices": vertices, "arcs": arcs}).to_string()
}

fn json(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("structured output parses")
}

#[test]
fn analyze_exit_codes() {
    let dir = TempDir::new().unwrap();
    let (code, out, _) = wolin(&["analyze", &whiskered()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("answer: Yes"));

    // a weighted path through a weighted middle vertex
    let path = write(&dir, "path.json", &graph_json(&[1, 2, 2], &[(0, 1), (1, 2)]));
    let (code, out, _) = wolin(&["analyze", &path]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("answer: No"));
}

#[test]
fn unknown_when_search_is_capped_and_oracle_off() {
    let dir = TempDir::new().unwrap();
    // the house: a 5-cycle with one chord
    let house = write(&dir, "house.json", &graph_json(&[1; 5], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)]));
    let (code, out, _) = wolin(&["analyze", &house, "--lq-cap", "1", "--no-oracle"]);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("answer: Unknown"));
    let (code, _, _) = wolin(&["analyze", &house]);
    assert_ne!(code, 2);
}

#[test]
fn power_of_the_whiskered_triangle() {
    let (code, out, _) = wolin(&["power", &whiskered(), "--k", "2", "--format", "json"]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["verdict"]["answer"], "No");
    assert_eq!(v["verdict"]["certificate"]["kind"], "betti");
    assert_eq!(v["verdict"]["certificate"]["regularity"], 7);
}

#[test]
fn oracle_on_an_ideal_file() {
    let dir = TempDir::new().unwrap();
    let ideal = write(&dir, "i.json", r#"{"variables": ["a", "b", "c"], "generators": ["a*b", "b*c"]}"#);
    let (code, out, _) = wolin(&["oracle", &ideal]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("regularity: 2"));
    let bad = write(&dir, "j.json", r#"{"variables": ["a", "b", "c", "d"], "generators": ["a*b", "c*d"]}"#);
    let (code, out, _) = wolin(&["oracle", &bad]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("regularity: 3"));
}

#[test]
fn pattern_formula_mode() {
    let (code, out, _) = wolin(&["oracle", "--pattern", "d4", "--k", "2", "--w2", "3", "--w3", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("predicted 9, oracle 9"), "{out}");
}

#[test]
fn certify_accepts_emitted_reports() {
    let dir = TempDir::new().unwrap();
    for args in [vec!["analyze"], vec!["power", "--k", "2"], vec!["power", "--k", "3"]] {
        let mut full = args.clone();
        let w = whiskered();
        full.extend([w.as_str(), "--format", "json"]);
        let (_, out, _) = wolin(&full);
        let report = write(&dir, "r.json", &out);
        let (code, text, _) = wolin(&["certify", &whiskered(), "--report", &report]);
        assert_eq!(code, 0, "{args:?}: {text}");
        assert!(text.contains("certificate: valid"));
    }
}

#[test]
fn certify_names_the_broken_split_condition() {
    let dir = TempDir::new().unwrap();
    let (_, out, _) = wolin(&["analyze", &whiskered(), "--format", "json"]);
    let mut v = json(&out);
    assert_eq!(v["verdict"]["certificate"]["kind"], "split_tree");
    let tree = &mut v["verdict"]["certificate"]["tree"];
    tree["left"] = tree["right"].clone();
    let report = write(&dir, "tampered.json", &v.to_string());
    let (code, out, _) = wolin(&["certify", &whiskered(), "--report", &report, "--format", "json"]);
    assert_eq!(code, 1);
    let c = json(&out);
    assert_eq!(c["certification"]["valid"], false);
    let name = c["certification"]["violation"]["violation"].as_str().unwrap();
    assert!(name.starts_with("split_"), "{name}");
}

#[test]
fn certify_rejects_a_wrong_characteristic() {
    let dir = TempDir::new().unwrap();
    let (_, out, _) = wolin(&["power", &whiskered(), "--k", "2", "--format", "json", "--characteristic", "3"]);
    let report = write(&dir, "r.json", &out);
    let (code, _, _) = wolin(&["certify", &whiskered(), "--report", &report, "--characteristic", "3"]);
    assert_eq!(code, 0);
    let (code, out, _) = wolin(&["certify", &whiskered(), "--report", &report]);
    assert_eq!(code, 1);
    assert!(out.contains("INVALID"));
}

#[test]
fn structured_output_is_stable() {
    let strip = |s: &str| {
        let mut v = json(s);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    for args in [vec!["analyze"], vec!["power", "--k", "2"], vec!["oracle"]] {
        let mut full = args.clone();
        let w = whiskered();
        full.extend([w.as_str(), "--format", "json"]);
        let (_, a, _) = wolin(&full);
        let (_, b, _) = wolin(&full);
        assert_eq!(strip(&a), strip(&b), "{args:?}");
        let v = strip(&a);
        assert_eq!(v["format_version"], 1);
        for key in ["answer", "rule", "k", "certificate", "notes"] {
            if args[0] != "oracle" {
                assert!(v["verdict"].get(key).is_some(), "missing {key}");
            }
        }
    }
}

#[test]
fn census_totals() {
    let (code, out, _) = wolin(&["census", "--max-vertices", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let total: u64 = v["census"]["tally"].as_array().unwrap().iter().map(|t| t["count"].as_u64().unwrap()).sum();
    assert!(total > 10, "{total}");
    assert!(v["census"]["rows"].as_array().unwrap().is_empty());
}

#[test]
fn input_errors_exit_with_three() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "broken.json", "{\"vertices\": [\n  {\"id\": \"a\", \"weight\": 1},\n  oops\n]}");
    let (code, _, err) = wolin(&["analyze", &broken]);
    assert_eq!(code, 3);
    assert!(err.contains("line 3"), "{err}");

    let dangling = write(&dir, "dangling.json", r#"{"vertices": [{"id": "a", "weight": 1}], "arcs": [["a", "b"]]}"#);
    assert_eq!(wolin(&["analyze", &dangling]).0, 3);

    let missing = dir.path().join("missing.json");
    assert_eq!(wolin(&["analyze", missing.to_str().unwrap()]).0, 3);
    assert_eq!(wolin(&["power", &whiskered(), "--k", "0"]).0, 3);
    assert_eq!(wolin(&["analyze", &whiskered(), "--characteristic", "4"]).0, 3);
    assert_eq!(wolin(&["frobnicate"]).0, 3);
}
