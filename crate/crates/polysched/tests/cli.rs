use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn polysched(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polysched")).current_dir(dir).args(args).output().expect("spawn polysched")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn ok(dir: &Path, args: &[&str]) -> Output {
    let out = polysched(dir, args);
    assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

#[test]
fn polygreedy_output_verifies_and_corruption_is_caught() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(
        d,
        &[
            "gen",
            "random",
            "--seed",
            "3",
            "--people",
            "7",
            "--kind",
            "dps",
            "--pow2",
            "--cap",
            "1/2",
            "-o",
            "inst.json",
        ],
    );
    ok(d, &["run", "polygreedy", "inst.json", "-o", "sched.json"]);
    assert!(d.join("sched.json.report.json").exists());
    assert!(d.join("sched.json.manifest.json").exists());
    ok(d, &["verify", "inst.json", "sched.json"]);

    let mut sched: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("sched.json")).unwrap()).unwrap();
    for day in sched["days"].as_array_mut().unwrap() {
        *day = serde_json::json!([]);
    }
    fs::write(d.join("bad.json"), sched.to_string()).unwrap();
    assert_eq!(code(&polysched(d, &["verify", "inst.json", "bad.json"])), 1);
}

#[test]
fn max_heat_is_enforced_for_ops() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen", "stars", "--d", "3", "-o", "stars.json"]);
    ok(d, &["run", "colorrr", "stars.json", "-o", "rr.json"]);
    ok(d, &["verify", "stars.json", "rr.json", "--max-heat", "3"]);
    assert_eq!(code(&polysched(d, &["verify", "stars.json", "rr.json", "--max-heat", "5/2"])), 1);
}

#[test]
fn rerunning_a_manifest_reproduces_outputs() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen", "random", "--seed", "11", "--people", "6", "-o", "a.json"]);
    ok(d, &["run", "rf", "a.json", "-o", "rf.json"]);
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("rf.json.manifest.json")).unwrap()).unwrap();
    let argv: Vec<String> =
        manifest["argv"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    let first = fs::read(d.join("rf.json")).unwrap();
    let report = fs::read(d.join("rf.json.report.json")).unwrap();
    let man = fs::read(d.join("rf.json.manifest.json")).unwrap();
    let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
    ok(d, &argv);
    assert_eq!(first, fs::read(d.join("rf.json")).unwrap());
    assert_eq!(report, fs::read(d.join("rf.json.report.json")).unwrap());
    assert_eq!(man, fs::read(d.join("rf.json.manifest.json")).unwrap());
}

#[test]
fn oracle_refusal_exits_three() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen", "kn", "--n", "11", "-o", "k.json"]);
    let out = polysched(d, &["oracle", "optimal-heat", "k.json", "--guard", "10"]);
    assert_eq!(code(&out), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_polysched"))
        .current_dir(d)
        .env("POLYSCHED_GUARD", "10")
        .args(["oracle", "optimal-heat", "k.json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn dense_instance_is_refused_by_polygreedy() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    fs::write(
        d.join("dense.json"),
        r#"{"kind":"dps","people":["a","b","c"],"edges":[{"u":0,"v":1,"f":2},{"u":0,"v":2,"f":2}]}"#,
    )
    .unwrap();
    assert_eq!(code(&polysched(d, &["run", "polygreedy", "dense.json"])), 3);
}

#[test]
fn usage_errors_exit_two() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    assert_eq!(code(&polysched(d, &["frobnicate"])), 2);
    assert_eq!(code(&polysched(d, &["verify", "missing.json", "missing.json"])), 2);
    fs::write(d.join("x.json"), r#"{"kind":"ops","people":["a","b"],"edges":[{"u":0,"v":1,"g":"1","extra":1}]}"#)
        .unwrap();
    assert_eq!(code(&polysched(d, &["density", "x.json"])), 2);
}

#[test]
fn reduce_writes_gadget_map_and_witness() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(
        d,
        &[
            "gen",
            "cnf",
            "--seed",
            "5",
            "--vars",
            "4",
            "--clauses",
            "6",
            "--satisfiable",
            "-o",
            "f.cnf",
            "--assignment-out",
            "a.txt",
        ],
    );
    ok(d, &["reduce", "f.cnf", "-o", "poly.json", "--witness", "a.txt", "--witness-out", "w.json"]);
    let map: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("poly.json.gadgets.json")).unwrap()).unwrap();
    assert!(map["people"].as_array().unwrap().len() > 10);
    ok(d, &["verify", "poly.json", "w.json"]);
}

#[test]
fn bench_stars_csv() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let out = ok(d, &["bench", "--stars", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("instance,edges,heuristic,heat,gstar,optimal"));
    assert_eq!(lines.count(), 9);
}

#[test]
fn density_of_triangle() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    fs::write(
        d.join("tri.json"),
        r#"{"kind":"ops","people":["a","b","c"],"edges":[{"u":0,"v":1,"g":"1"},{"u":1,"v":2,"g":"1"},{"u":0,"v":2,"g":"1"}]}"#,
    )
    .unwrap();
    let out = ok(d, &["density", "tri.json"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["value"], "3/1");
}
