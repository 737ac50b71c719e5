use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latticeforge"))
        .args(args)
        .output()
        .expect("spawn latticeforge")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn build(dir: &Path, file: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(file);
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend(["--out", path.to_str().unwrap()]);
    let out = run(&all);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn size(path: &Path) -> usize {
    let out = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    v["size"].as_u64().unwrap() as usize
}

#[test]
fn build_sizes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(size(&build(d, "a4.json", &["tamari", "--n", "4"])), 14);
    assert_eq!(
        size(&build(d, "a43.json", &["cambrian", "--n", "4", "--u", "3"])),
        14
    );
    assert_eq!(
        size(&build(d, "b13.json", &["bmn", "--m", "1", "--n", "3"])),
        17
    );
    assert_eq!(
        size(&build(d, "p4.json", &["permutohedron", "--n", "4"])),
        24
    );
    let c2 = build(d, "c2.json", &["tamari", "--n", "2"]);
    let sq = d.join("sq.json");
    let out = run(&[
        "build",
        "product",
        "--lattice",
        c2.to_str().unwrap(),
        "--other",
        c2.to_str().unwrap(),
        "--out",
        sq.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(size(&sq), 4);
    let a4 = d.join("a4.json");
    let doubled = d.join("d.json");
    let out = run(&[
        "build",
        "double",
        "--lattice",
        a4.to_str().unwrap(),
        "--a",
        "0",
        "--out",
        doubled.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(size(&doubled), 15);
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let a43 = build(d, "a43.json", &["cambrian", "--n", "4", "--u", "3"]);
    let b22 = build(d, "b22.json", &["bmn", "--m", "2", "--n", "2"]);
    let a4 = build(d, "a4.json", &["tamari", "--n", "4"]);
    let veg1 = run(&[
        "check",
        "--lattice",
        a43.to_str().unwrap(),
        "--identity",
        "veg1",
    ]);
    assert_eq!(code(&veg1), 1);
    assert!(stdout(&veg1).contains("Fails"));
    assert_eq!(
        code(&run(&[
            "check",
            "--lattice",
            a43.to_str().unwrap(),
            "--identity",
            "veg1",
            "--expect-fail"
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "check",
            "--lattice",
            b22.to_str().unwrap(),
            "--identity",
            "veg2",
            "--parallel"
        ])),
        1
    );
    let gzp = run(&["check", "--lattice", a4.to_str().unwrap(), "--gzp", "1,1"]);
    assert_eq!(code(&gzp), 0);
    assert!(stdout(&gzp).contains("Holds"));
}

#[test]
fn errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(
        code(&run(&[
            "check",
            "--lattice",
            missing.to_str().unwrap(),
            "--identity",
            "veg1"
        ])),
        2
    );
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{\"n\": 2}").unwrap();
    assert_eq!(code(&run(&["analyze", junk.to_str().unwrap()])), 2);
    let a4 = build(dir.path(), "a4.json", &["tamari", "--n", "4"]);
    assert_eq!(
        code(&run(&[
            "check",
            "--lattice",
            a4.to_str().unwrap(),
            "--identity",
            "nonesuch"
        ])),
        2
    );
    assert_eq!(code(&run(&["build", "tamari"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn analyze_and_dot() {
    let dir = TempDir::new().unwrap();
    let a4 = build(dir.path(), "a4.json", &["tamari", "--n", "4"]);
    let out = stdout(&run(&["analyze", a4.to_str().unwrap()]));
    for line in [
        "size: 14",
        "join_irreducibles: 6",
        "bounded: true",
        "semidistributive: true",
    ] {
        assert!(out.contains(line), "missing {line:?} in\n{out}");
    }
    let dot = dir.path().join("a4.dot");
    assert_eq!(
        code(&run(&[
            "dot",
            a4.to_str().unwrap(),
            "--out",
            dot.to_str().unwrap()
        ])),
        0
    );
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph"));
    // every cover is one edge; A(4) has 21
    assert_eq!(text.matches(" -> ").count(), 21);
}

#[test]
fn embeddings() {
    let dir = TempDir::new().unwrap();
    let b22 = build(dir.path(), "b22.json", &["bmn", "--m", "2", "--n", "2"]);
    let b22 = b22.to_str().unwrap();
    let scan = run(&[
        "--threads",
        "2",
        "embed-scan",
        "--source",
        b22,
        "--max-n",
        "4",
        "--expect-fail",
    ]);
    assert_eq!(code(&scan), 0);
    assert_eq!(stdout(&scan).matches("no embedding").count(), 4);
    let map = dir.path().join("map.json");
    let found = run(&[
        "embed",
        "--source",
        b22,
        "--target-cambrian",
        "n=6,u=4,5",
        "--out",
        map.to_str().unwrap(),
    ]);
    assert_eq!(code(&found), 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(map).unwrap()).unwrap();
    assert_eq!(v["images"].as_array().unwrap().len(), 17);
}

#[test]
fn measures() {
    let dir = TempDir::new().unwrap();
    for kind in ["bm1", "bm2"] {
        let path = dir.path().join(format!("{kind}.json"));
        assert_eq!(
            code(&run(&[
                "measure",
                kind,
                "--m",
                "2",
                "--out",
                path.to_str().unwrap()
            ])),
            0
        );
        let out = run(&["measure-analyze", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        assert!(stdout(&out).contains("injective: true"));
    }
    // the canonical measure into A_U(n) recovers the identity embedding
    let path = dir.path().join("canon.json");
    assert_eq!(
        code(&run(&[
            "measure",
            "canonical",
            "--n",
            "3",
            "--u",
            "2",
            "--out",
            path.to_str().unwrap()
        ])),
        0
    );
    assert_eq!(code(&run(&["measure-analyze", path.to_str().unwrap()])), 0);
}

#[test]
fn reproduce_subset_and_control() {
    let ok = run(&["reproduce", "--only", "C1,C2,C12", "--json"]);
    assert_eq!(code(&ok), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&ok)).unwrap();
    assert_eq!(v["claims"].as_array().unwrap().len(), 3);
    assert_eq!(v["passed"], true);
    let control = run(&["reproduce", "--only", "C11", "--corrupt-splitting"]);
    assert_eq!(code(&control), 1);
    assert!(stdout(&control).contains("[FAIL] C11"));
    assert_eq!(code(&run(&["reproduce", "--only", "C99"])), 2);
}
