use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn program(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("programs")
        .join(name)
}

fn pifrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pifrac"))
        .args(args)
        .output()
        .expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn temp_program(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new()
        .suffix(".pi")
        .tempfile()
        .expect("temp file");
    f.write_all(text.as_bytes()).expect("write");
    f
}

#[test]
fn check_prints_types() {
    let o = pifrac(&["check", path(&program("cnot.pi"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "dom: (* (+ 1 1) (+ 1 1))\ncod: (* (+ 1 1) (+ 1 1))\n"
    );
}

#[test]
fn run_reports_exception_with_exit_one() {
    let p = program("reclaim_input.pi");
    let o = pifrac(&["run", path(&p), "--input", "𝕋"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "exception");
    let o = pifrac(&["run", path(&p), "--input", "(inl tt)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(inl tt)");
}

#[test]
fn run_rejects_ill_typed_input() {
    let o = pifrac(&["run", path(&program("cnot.pi")), "--input", "tt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a value of"));
    let o = pifrac(&["run", path(&program("cnot.pi")), "--input", "(tt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn truth_table_of_cnot() {
    let o = pifrac(&["truth-table", path(&program("cnot.pi"))]);
    assert_eq!(o.status.code(), Some(0));
    let f = "(inl tt)";
    let t = "(inr tt)";
    let expected: Vec<String> = [(f, f, f, f), (f, t, f, t), (t, f, t, t), (t, t, t, f)]
        .iter()
        .map(|(a, b, c, d)| format!("({a} , {b}) ↦ ({c} , {d})"))
        .collect();
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), expected);
}

#[test]
fn json_truth_table_marks_absent_rows() {
    let o = pifrac(&["truth-table", "--json", path(&program("reclaim_input.pi"))]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Value = serde_json::from_str(&stdout(&o)).expect("json");
    let rows = rows.as_array().expect("array");
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["in"], "(inl tt)");
    assert_eq!(rows[0]["out"], "(inl tt)");
    assert_eq!(rows[1]["in"], "(inr tt)");
    assert!(rows[1]["out"].is_null());
}

#[test]
fn json_rows_cover_the_domain() {
    let o = pifrac(&["truth-table", "--json", path(&program("id_via_ancilla.pi"))]);
    let rows: Value = serde_json::from_str(&stdout(&o)).expect("json");
    assert_eq!(rows.as_array().expect("array").len(), 2);
    let o = pifrac(&["truth-table", "--json", path(&program("eta_eps.pi"))]);
    let rows: Value = serde_json::from_str(&stdout(&o)).expect("json");
    assert_eq!(rows, serde_json::json!([{ "in": "tt", "out": "tt" }]));
}

#[test]
fn invert_prints_a_parsable_inverse() {
    let o = pifrac(&["invert", path(&program("id_via_ancilla.pi"))]);
    assert_eq!(o.status.code(), Some(0));
    let inv = temp_program(&stdout(&o));
    let o = pifrac(&["truth-table", inv.path().to_str().unwrap()]);
    assert_eq!(stdout(&o), "(inl tt) ↦ (inl tt)\n(inr tt) ↦ (inr tt)\n");
}

#[test]
fn verify_programs() {
    let o = pifrac(&["verify", path(&program("id_via_ancilla.pi"))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = pifrac(&["verify", path(&program("cnot.pi"))]);
    assert_eq!(o.status.code(), Some(0));
    let o = pifrac(&["verify", path(&program("reclaim_input.pi"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("exceptions: 1"));
}

#[test]
fn toffoli4_verifies() {
    let o = pifrac(&["example", "toffoli4", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("16/16 rows pass"), "{out}");
    assert!(out.contains("extraction identical for every input: yes"));
}

#[test]
fn every_example_verifies() {
    let list = stdout(&pifrac(&["example"]));
    let names: Vec<&str> = list
        .lines()
        .filter_map(|l| l.split_whitespace().next())
        .collect();
    assert!(names.len() >= 5);
    for name in names {
        let o = pifrac(&["example", name, "--verify"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        let shown = pifrac(&["example", name]);
        let file = temp_program(&stdout(&shown));
        let o = pifrac(&["check", file.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    }
}

#[test]
fn example_extract() {
    let o = pifrac(&["example", "revrev", "--extract"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(eps gc : (/ (inr tt) : (+ 1 1)))"));
    let o = pifrac(&["example", "reclaim-input", "--extract"]);
    assert_eq!(o.status.code(), Some(1));
    let o = pifrac(&["example", "no-such-thing"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn syntax_errors_have_positions() {
    let f = temp_program("(; id @ 1\n   frob @ 1)");
    let o = pifrac(&["check", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":2:4: syntax error"), "{}", stderr(&o));
}

#[test]
fn type_errors_have_spans() {
    let f = temp_program("(p* id @ 1\n    (; id @ 1 id @ (+ 1 1)))");
    let o = pifrac(&["check", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains(":2:5: type error"), "{err}");
    assert!(err.contains("2:5-2:28"), "{err}");
    let f = temp_program("(eps tt : 0)");
    let o = pifrac(&["check", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_file_is_an_input_error() {
    let o = pifrac(&["check", "/nonexistent/prog.pi"]);
    assert_eq!(o.status.code(), Some(2));
}
