//! End-to-end checks of the command-line driver against the bundled
//! fixture files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn arralex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arralex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn sixlines_central_decone() {
    let path = fixture("sixlines.arr");
    let out = arralex(&[
        "--arrangement",
        path.to_str().unwrap(),
        "--central",
        "--decone",
        "3",
        "-K",
        "6",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("decomposable: yes"), "{}", text);
    assert!(text.contains("theta1 = 6"), "{}", text);
    assert!(
        text.contains("theta: k=2: 3  k=3: 6  k=4: 9  k=5: 12  k=6: 15"),
        "{}",
        text
    );
}

#[test]
fn maclane_lattice_report() {
    let path = fixture("maclane.lat");
    let out = arralex(&["--lattice", path.to_str().unwrap(), "-K", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("theta3 = 21"), "{}", text);
    assert!(text.contains("k=3: 16"), "{}", text);
    assert!(text.contains("decomposable: no"), "{}", text);
}

#[test]
fn diamond_monodromy_ranks() {
    let path = fixture("diamond.mono");
    let out = arralex(&["--monodromy", path.to_str().unwrap(), "-K", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("theta: k=2: 6  k=3: 17  k=4: 27  k=5: 36"),
        "{}",
        text
    );
}

#[test]
fn verify_mode_agrees_and_reports() {
    let path = fixture("a4.arr");
    let out = arralex(&[
        "--arrangement",
        path.to_str().unwrap(),
        "--central",
        "--decone",
        "1",
        "-K",
        "4",
        "--verify",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verify k=4: basis 15 oracle 15 AGREE"), "{}", text);
    assert!(text.contains("verify: all checks agree"), "{}", text);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let path = fixture("diamond.arr");
    let args = [
        "--arrangement",
        path.to_str().unwrap(),
        "--central",
        "--decone",
        "7",
        "-K",
        "4",
    ];
    let a = arralex(&args);
    let b = arralex(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_output_matches_human_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("report.json");
    let path = fixture("sixlines.arr");
    let out = arralex(&[
        "--arrangement",
        path.to_str().unwrap(),
        "--central",
        "--decone",
        "3",
        "-K",
        "4",
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(doc["theta1"], 6);
    assert_eq!(doc["theta"][0], serde_json::json!([2, 3]));
    assert_eq!(doc["lattice"]["decomposable"], true);
}

#[test]
fn corrupted_presentation_file_fails_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pres");
    std::fs::write(&bad, "ring laurent 3\nsize 2 2\ngarbage here\n").unwrap();
    let out = arralex(&["--presentation", bad.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn conflicting_inputs_rejected() {
    let a = fixture("sixlines.arr");
    let l = fixture("maclane.lat");
    let out = arralex(&[
        "--arrangement",
        a.to_str().unwrap(),
        "--lattice",
        l.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
}

#[test]
fn pappus_pair_profiles_differ() {
    let run = |name: &str| {
        let path = fixture(name);
        let out = arralex(&[
            "--arrangement",
            path.to_str().unwrap(),
            "--central",
            "--decone",
            "3",
            "-K",
            "4",
        ]);
        assert!(out.status.success());
        stdout(&out)
    };
    let p1 = run("pappus1.arr");
    let p2 = run("pappus2.arr");
    assert!(p1.contains("decomposable: no"), "{}", p1);
    assert!(p2.contains("decomposable: yes"), "{}", p2);
    assert!(p1.contains("theta: k=2: 9  k=3: 20  k=4: 30"), "{}", p1);
    assert!(p2.contains("theta: k=2: 9  k=3: 18  k=4: 27"), "{}", p2);
}
