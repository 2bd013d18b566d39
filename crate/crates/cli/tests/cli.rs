use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn lcmlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcmlat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const CUBE_LABELING: &str = r#"{
  "lattice": {"n": 3, "sets": [[], [1], [2], [3], [1, 2], [1, 3], [2, 3], [1, 2, 3]]},
  "labels": [
    {"set": [1], "monomial": "a"},
    {"set": [2], "monomial": "e"},
    {"set": [3], "monomial": "m"},
    {"set": [1, 2], "monomial": "a*c"},
    {"set": [1, 3], "monomial": "c*m"},
    {"set": [2, 3], "monomial": "e"}
  ]
}"#;

const SUPER_ATOMIC: &str = r#"{"n": 3, "sets": [[], [1], [2], [3], [1, 2], [2, 3], [1, 2, 3]]}"#;

#[test]
fn validate_accepts_lattices_and_labelings() {
    let dir = TempDir::new().unwrap();
    let o = lcmlat(&["validate", s(&put(&dir, "l.json", SUPER_ATOMIC))]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("3 atoms, 7 elements"));
    let o = lcmlat(&["validate", s(&put(&dir, "c.json", CUBE_LABELING))]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("6 labeled"));
}

#[test]
fn validate_names_the_missing_set() {
    let dir = TempDir::new().unwrap();
    let bad = put(&dir, "bad.json", r#"{"n": 2, "sets": [[1], [2], [1, 2]]}"#);
    let o = lcmlat(&["validate", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("{}"), "{}", stderr(&o));

    let extra = put(&dir, "nc.json", r#"{"n": 3, "sets": [[], [1], [2], [3], [1, 2], [2, 3], [1, 2, 3]], "x": 1}"#);
    assert_eq!(lcmlat(&["validate", s(&extra)]).status.code(), Some(3));

    let open = put(&dir, "open.json", r#"{"n": 3, "sets": [[], [1], [2], [3], [1, 2], [1, 3], [1, 2, 3]]}"#);
    assert!(lcmlat(&["validate", s(&open)]).status.success());
    let broken = put(&dir, "broken.json", r#"{"n": 3, "sets": [[], [1], [2], [3], [1, 2], [2, 3]]}"#);
    assert_eq!(lcmlat(&["validate", s(&broken)]).status.code(), Some(1));
}

#[test]
fn malformed_input_exits_with_three() {
    let dir = TempDir::new().unwrap();
    let o = lcmlat(&["validate", s(&put(&dir, "m.json", "{\"n\": 2,"))]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
    let o = lcmlat(&["validate", s(&dir.path().join("absent.json"))]);
    assert_eq!(o.status.code(), Some(3));
    let o = lcmlat(&["lcm-lattice", s(&put(&dir, "i.txt", "a*b\nc^x\n"))]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn build_ideal_plain_and_gcd() {
    let dir = TempDir::new().unwrap();
    let path = put(&dir, "c.json", CUBE_LABELING);
    let o = lcmlat(&["build-ideal", "--weak", s(&path)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "e^2*m\na*c*m^2\na^2*c*e\n");
    let o = lcmlat(&["build-ideal", "--plain", s(&path)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);
    assert_eq!(lcmlat(&["build-ideal", "--plain", "--weak", s(&path)]).status.code(), Some(2));
}

#[test]
fn labeling_may_point_at_a_lattice_file() {
    let dir = TempDir::new().unwrap();
    put(&dir, "sq.json", r#"{"n": 2, "sets": [[], [1], [2], [1, 2]]}"#);
    let lab = put(&dir, "lab.json", r#"{"lattice": "sq.json", "labels": [{"set": [1], "monomial": "x"}, {"set": [2], "monomial": "y"}]}"#);
    let o = lcmlat(&["build-ideal", "--plain", s(&lab)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "y\nx\n");
}

#[test]
fn single_generator_gives_a_two_chain() {
    let dir = TempDir::new().unwrap();
    let o = lcmlat(&["lcm-lattice", s(&put(&dir, "i.txt", "# one\nx^2*y\n"))]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 1);
    assert_eq!(v["sets"], serde_json::json!([[], [1]]));
}

#[test]
fn lcm_lattice_writes_dot() {
    let dir = TempDir::new().unwrap();
    let ideal = put(&dir, "i.txt", "a^2*c*d\na*b*d\na*b*c\n");
    let dot = dir.path().join("l.dot");
    let o = lcmlat(&["lcm-lattice", s(&ideal), "--dot", s(&dot)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.contains("a^2*b*c*d"));
    assert_eq!(text.matches("->").count(), 4);
    let o = lcmlat(&["lcm-lattice", s(&ideal), "--dot", s(&dot), "--keep-bottom"]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&dot).unwrap().matches("->").count(), 7);
}

#[test]
fn unit_generator_is_degenerate() {
    let dir = TempDir::new().unwrap();
    let o = lcmlat(&["lcm-lattice", s(&put(&dir, "i.txt", "1\nx\n"))]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_reports_every_field() {
    let dir = TempDir::new().unwrap();
    let o = lcmlat(&["classify", s(&put(&dir, "c.json", CUBE_LABELING))]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["satisfies_A1A2"], false);
    assert_eq!(v["satisfies_C1C2"], true);
    assert_eq!(v["is_weak"], true);
    assert!(v["is_coordinatization"].is_boolean());
    assert!(v["is_strong"].is_boolean());
    assert!(v["witness"]["A1A2"].is_object());
}

#[test]
fn enumerate_counts_and_files() {
    let o = lcmlat(&["enumerate-superatomic", "--n", "4", "--count-only"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "24");
    let o = lcmlat(&["enumerate-superatomic", "--n", "3"]);
    assert_eq!(stdout(&o).lines().count(), 3);

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("sa");
    let o = lcmlat(&["enumerate-superatomic", "--n", "4", "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let index: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("index.json")).unwrap()).unwrap();
    assert_eq!(index["count"], 24);
    let files = index["files"].as_array().unwrap();
    assert_eq!(files.len(), 24);
    for f in files {
        let path = out.join(f.as_str().unwrap());
        let o = lcmlat(&["check-superatomic", s(&path)]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).contains("\"is_super_atomic\": true"));
    }
    assert_eq!(lcmlat(&["enumerate-superatomic", "--n", "9"]).status.code(), Some(1));
}

#[test]
fn check_superatomic_rejects_the_cube() {
    let dir = TempDir::new().unwrap();
    let cube = put(&dir, "b.json", r#"{"n": 3, "sets": [[], [1], [2], [3], [1, 2], [1, 3], [2, 3], [1, 2, 3]]}"#);
    let o = lcmlat(&["check-superatomic", s(&cube)]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["is_super_atomic"], false);
    assert_eq!(v["agree"], true);
}

#[test]
fn check_labeling_c_modes() {
    let dir = TempDir::new().unwrap();
    let sa = put(&dir, "sa.json", SUPER_ATOMIC);
    let o = lcmlat(&["check-labeling-c", s(&sa)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classification"]["is_strong"], true);
    assert_eq!(v["pair_condition"]["holds"], true);

    let o = lcmlat(&["check-labeling-c", s(&sa), "--interval-hypothesis"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("hypothesis_holds"));

    let cube = put(&dir, "b.json", r#"{"n": 3, "sets": [[], [1], [2], [3], [1, 2], [1, 3], [2, 3], [1, 2, 3]]}"#);
    assert_eq!(lcmlat(&["check-labeling-c", s(&cube), "--pair-condition"]).status.code(), Some(1));

    let r = put(
        &dir,
        "r.json",
        r#"{"n": 4, "sets": [[], [1], [2], [3], [4], [1, 4], [2, 3], [3, 4], [1, 3, 4], [2, 3, 4], [1, 2, 3, 4]]}"#,
    );
    let q = put(
        &dir,
        "q.json",
        r#"{"n": 4, "sets": [[], [1], [2], [3], [4], [1, 4], [2, 3], [3, 4], [1, 3, 4], [1, 2, 3, 4]]}"#,
    );
    let o = lcmlat(&["check-labeling-c", "--cover", s(&r), s(&r), s(&q)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(lcmlat(&["check-labeling-c", s(&sa), "--pair-condition", "--interval-hypothesis"]).status.code(), Some(2));
}

#[test]
fn reference_examples_pass() {
    let o = lcmlat(&["reference-examples"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("8 of 8 passed"));
}

#[test]
fn reference_examples_report_mismatches() {
    let dir = TempDir::new().unwrap();
    put(&dir, "wrong.json", r#"{"id": "wrong", "ideal": ["x"], "expect": {"lcm_elements": ["1", "y"]}}"#);
    let o = lcmlat(&["reference-examples", "--fixtures", s(dir.path())]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL wrong"));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn export_dot_of_lattice_and_labeling() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.dot");
    let o = lcmlat(&["export-dot", s(&put(&dir, "c.json", CUBE_LABELING)), "-o", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("a*c"));
    assert_eq!(text.matches("->").count(), 12);
    let o = lcmlat(&["export-dot", "--suppress-bottom", s(&put(&dir, "l.json", SUPER_ATOMIC))]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("->").count(), 6);
}
