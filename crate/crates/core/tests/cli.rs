use std::fs;
use std::process::{Command, Output};

fn z22geo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_z22geo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn construct_covered_pair() {
    let out = z22geo(&["construct", "17", "5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("Genus3"));
}

#[test]
fn construct_rejects_inadmissible_pair() {
    let out = z22geo(&["construct", "10", "1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("not admissible"));
}

#[test]
fn construct_rejects_the_gap() {
    let out = z22geo(&["construct", "23", "3"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("not covered"));
}

#[test]
fn negative_and_malformed_arguments() {
    let out = z22geo(&["construct", "-3", "2"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("not admissible"));
    assert!(!z22geo(&["construct", "seven", "2"]).status.success());
    assert!(!z22geo(&["construct", "99999999", "2"]).status.success());
}

#[test]
fn json_documents_verify_and_tampering_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let out = z22geo(&["--json", "construct", "17", "5"]);
    assert!(out.status.success());
    let doc = stdout(&out);
    assert!(doc.ends_with("}\n"));

    let good = dir.path().join("good.json");
    fs::write(&good, &doc).unwrap();
    let ok = z22geo(&["verify", good.to_str().unwrap()]);
    assert!(ok.status.success(), "{}{}", stdout(&ok), stderr(&ok));

    let mut value: serde_json::Value = serde_json::from_str(&doc).unwrap();
    value["invariants"]["Ksq"] = serde_json::json!(18);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, serde_json::to_string_pretty(&value).unwrap()).unwrap();
    let out = z22geo(&["verify", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(stdout(&out).contains("invariants.Ksq"));
}

#[test]
fn degeneration_document_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = z22geo(&["--json", "degenerate", "6", "6"]);
    assert!(out.status.success());
    let path = dir.path().join("deg.json");
    fs::write(&path, stdout(&out)).unwrap();
    assert!(z22geo(&["verify", path.to_str().unwrap()]).status.success());
    assert!(!z22geo(&["degenerate", "24", "3"]).status.success());
}

#[test]
fn atlas_writes_each_format() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json", "svg"] {
        let path = dir.path().join(format!("atlas.{format}"));
        let out = z22geo(&[
            "atlas",
            "--chi-max",
            "3",
            "--format",
            format,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(!fs::read_to_string(&path).unwrap().is_empty());
    }
    let csv = z22geo(&["atlas", "--chi-max", "1"]);
    assert_eq!(stdout(&csv).lines().count(), 10);
    assert!(!z22geo(&["atlas", "--format", "png"]).status.success());
}

#[test]
fn check_passes() {
    let out = z22geo(&["check", "--chi-max", "5"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let out = z22geo(&["--json", "check", "--chi-max", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|s| s["failed"] == 0));
}
