use std::io::Write;
use std::process::{Command, Output};

fn treewalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treewalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn validate_exit_codes() {
    let ok = treewalk(&["validate", "3,1,1,1"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(stdout(&ok), "3,1,1,1\n");
    // unsorted input is echoed sorted
    assert_eq!(stdout(&treewalk(&["validate", "1,1,3,1"])), "3,1,1,1\n");

    let bad = treewalk(&["validate", "2,2,2"]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("SumMismatch"));

    assert_eq!(code(&treewalk(&["validate", "1"])), 2);
}

#[test]
fn greedy_star_json() {
    let out = treewalk(&["greedy", "4,1,1,1,1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 5);
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);
    for e in v["edges"].as_array().unwrap() {
        assert_eq!(e[0], 0);
    }

    assert_eq!(code(&treewalk(&["greedy", "2,2"])), 2);
}

#[test]
fn walks_from_file_and_degseq() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "4\n0 1\n1 2\n2 3\n").unwrap();
    let path = format!("@{}", f.path().display());

    let out = treewalk(&["walks", &path, "-k", "4"]);
    assert_eq!(stdout(&out), "2,5,5,2\n");

    let out = treewalk(&["walks", "3,1,1,1", "-k", "2"]);
    assert_eq!(stdout(&out), "3,1,1,1\n");

    let out = treewalk(&["walks", &path, "-k", "5"]);
    assert_eq!(stdout(&out), "0,0,0,0\n");
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd"));
}

#[test]
fn walks_from_json_tree() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{{\"n\": 4, \"edges\": [[0,1],[1,2],[2,3]]}}").unwrap();
    let path = format!("@{}", f.path().display());
    let out = treewalk(&["walks", &path, "-k", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["counts"], serde_json::json!(["2", "5", "5", "2"]));
}

#[test]
fn estrada_closed_form_and_guard() {
    // e + 1/e
    let out = treewalk(&["estrada", "1,1"]);
    let val: f64 = stdout(&out).trim().parse().unwrap();
    assert!((val - 3.0861612696304874).abs() < 1e-9);

    assert_eq!(code(&treewalk(&["estrada", "1,1", "--tol=-1.0"])), 2);
}

#[test]
fn majorize_and_chain() {
    assert_eq!(
        stdout(&treewalk(&["majorize", "3,3", "4,1"])),
        "incomparable\n"
    );
    assert_eq!(
        stdout(&treewalk(&["majorize", "2,2,1,1", "3,1,1,1"])),
        "majorized-strict\n"
    );

    let out = treewalk(&["chain", "2,2,2,1,1", "4,1,1,1,1"]);
    assert_eq!(stdout(&out), "2,2,2,1,1\n3,2,1,1,1\n4,1,1,1,1\n");

    assert_eq!(
        code(&treewalk(&["chain", "4,4,1,1,1,1,1,1", "5,2,2,1,1,1,1,1"])),
        2
    );
}

#[test]
fn verify_reports_and_guard() {
    let out = treewalk(&["verify", "thm1", "--n-max", "6", "-k", "2,4"]);
    assert_eq!(code(&out), 0);
    for line in stdout(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "verified");
        assert_eq!(v["claim"], "thm1");
        assert!(v["witness"].is_null());
    }

    assert_eq!(code(&treewalk(&["verify", "thm1", "--n-max", "30"])), 2);
    assert_eq!(code(&treewalk(&["verify", "nonsense"])), 2);
}

#[test]
fn verify_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reports.jsonl");
    let out = treewalk(&[
        "verify",
        "edge-shift",
        "--n-max",
        "5",
        "-k",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().count() > 0);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "verified");
    }
}

#[test]
fn verify_lemma_sweep() {
    let out = treewalk(&["verify", "lemma", "--samples", "500", "--seed", "3"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(v["params"]["samples"], "500");
}

#[test]
fn dense_r_certificates() {
    let out = treewalk(&[
        "dense-r", "3,1,1,1", "-k", "4", "-r", "1", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], "9");
    assert_eq!(v["subset"], serde_json::json!([0]));

    let out = treewalk(&[
        "dense-r", "3,1,1,1", "-k", "4", "-r", "0", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], "0");

    let out = treewalk(&[
        "dense-r",
        "3,2,2,1,1,1",
        "-k",
        "4",
        "-r",
        "3",
        "--brute-force",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn enumerate_counts() {
    let out = treewalk(&["enumerate", "3,2,2,1,1,1", "--count-only"]);
    assert_eq!(stdout(&out), "2\n");
    let out = treewalk(&[
        "enumerate",
        "3,2,2,1,1,1",
        "--mode",
        "labeled",
        "--count-only",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 12);
    assert_eq!(v["labeled_count"], "12");
}

#[test]
fn moments_csv() {
    let out = treewalk(&["moments", "2,2,1,1", "-k", "2,4", "--format", "csv"]);
    assert_eq!(stdout(&out), "k,moment\n2,6\n4,14\n");
}
