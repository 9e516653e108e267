use std::path::Path;
use std::process::{Command, Output};

use ldiv::verdict::Status;
use serde_json::Value;

fn ldiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldiv"))
        .args(args)
        .env_remove("LDIV_BUDGET_NODES")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn construct_s(dir: &Path, n: usize, l: u32) -> std::path::PathBuf {
    let file = dir.join(format!("s_{n}_{l}.fam"));
    let out = ldiv(&[
        "construct",
        "s",
        "--n",
        &n.to_string(),
        "--mod",
        &l.to_string(),
        "--out",
        path(&file),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    file
}

#[test]
fn construct_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let fam = construct_s(dir.path(), 7, 2);
    let out = ldiv(&[
        "analyze",
        path(&fam),
        "--no-meta",
        "--closure",
        "3:2",
        "--primes",
        "2,3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "analyze");
    assert!(v.get("meta").is_none());
    assert_eq!(v["family_size"], 8);
    assert_eq!(v["twin_class_sizes"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["uncovered"], serde_json::json!([6]));
    assert_eq!(v["primes"][0]["dim"], 3);
    assert_eq!(v["primes"][0]["structure"]["all_checks"], true);
    assert_eq!(v["closure"][0]["closed"]["holds"], true);
}

#[test]
fn output_is_byte_stable_without_meta() {
    let dir = tempfile::tempdir().unwrap();
    let fam = construct_s(dir.path(), 9, 3);
    let a = ldiv(&["--no-meta", "verify", "structure", "--in", path(&fam)]);
    let b = ldiv(&["--no-meta", "verify", "structure", "--in", path(&fam)]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let with_meta = json(&ldiv(&["threshold", "--l", "3"]));
    assert_eq!(with_meta["meta"]["tool"], "ldiv");
    assert!(with_meta["meta"]["elapsed_ms"].is_u64());
}

#[test]
fn threshold_values() {
    let v = json(&ldiv(&[
        "--no-meta",
        "threshold",
        "--l",
        "2",
        "--epsilon",
        "6",
    ]));
    assert_eq!(v["k_threshold"]["k"], "100663296");
    assert_eq!(v["k_threshold"]["t"], 24);
    assert_eq!(v["stab_threshold"]["k"], "12");
    assert_eq!(v["stab_threshold"]["t"], 1);
}

#[test]
fn search_emits_rechecked_extremal_families() {
    let dir = tempfile::tempdir().unwrap();
    let emit = dir.path().join("ext");
    let out = ldiv(&[
        "--no-meta",
        "search",
        "--n",
        "4",
        "--emit-extremal",
        path(&emit),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["max_size"], 4);
    assert_eq!(v["rechecked"], true);
    let file = emit.join("extremal_1.fam");
    let a = json(&ldiv(&[
        "--no-meta",
        "analyze",
        path(&file),
        "--closure",
        "2:2",
    ]));
    assert_eq!(a["family_size"], 4);
    assert_eq!(a["closure"][0]["closed"]["holds"], true);
}

#[test]
fn cross_construction_meets_the_bound() {
    let dir = tempfile::tempdir().unwrap();
    let out = ldiv(&[
        "construct",
        "cross",
        "--n",
        "5",
        "--parts",
        "2,3",
        "--out-dir",
        path(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let one = dir.path().join("cross_1.fam");
    let two = dir.path().join("cross_2.fam");
    let v = json(&ldiv(&[
        "--no-meta",
        "verify",
        "cross",
        "--in",
        path(&one),
        "--in",
        path(&two),
    ]));
    assert_eq!(v["status"], "holds");
    assert_eq!(v["report"]["equality"], true);
    assert_eq!(v["report"]["product"], "32");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    let bad = dir.path().join("bad.fam");
    std::fs::write(&bad, "n=3 mod=2\n110\n1x0\n").unwrap();
    let out = ldiv(&["analyze", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(ldiv(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        ldiv(&["verify", "nosuchlemma", "--in", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(ldiv(&["construct", "s", "--n", "4"]).status.code(), Some(2));

    // pairwise-odd intersections: not weakly 2-closed, so removal does not apply
    let odd = dir.path().join("odd.fam");
    std::fs::write(&odd, "n=3 mod=2\n110\n011\n").unwrap();
    let out = ldiv(&["verify", "removal", "--in", path(&odd), "--k", "2"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["status"], "not-applicable");

    let out = ldiv(&["--no-meta", "search", "--n", "5", "--budget-nodes", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "budget-exhausted");

    let out = Command::new(env!("CARGO_BIN_EXE_ldiv"))
        .args(["search", "--n", "3"])
        .env("LDIV_BUDGET_NODES", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(Status::Holds.exit_code(), 0);
    assert_eq!(Status::Violated.exit_code(), 1);
    assert_eq!(Status::NotApplicable.exit_code(), 4);
}

#[test]
fn vectors_mode_on_reference_matrix() {
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/worked_example.vec");
    let v = json(&ldiv(&["--no-meta", "analyze", "--vectors", path(&file)]));
    assert_eq!(v["kind"], "vectors");
    assert_eq!(v["dim"], 4);
    assert_eq!(v["prime"], 3);
}
