use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, name: &str, args: &[&str]) -> (Output, Value) {
    let out = dir.join(format!("{name}.json"));
    let o = Command::new(env!("CARGO_BIN_EXE_sdmkit"))
        .args(args)
        .arg("--out")
        .arg(&out)
        .env_remove("SDMKIT_WORKERS")
        .output()
        .unwrap();
    let report = std::fs::read_to_string(&out).map(|s| serde_json::from_str(&s).unwrap()).unwrap_or(Value::Null);
    (o, report)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn ext_parity_for_two_by_two() {
    let dir = tempfile::tempdir().unwrap();
    let (o, r) = run(dir.path(), "ext", &["ext", "--ring", "det", "--n", "2", "--ell", "2", "--imax", "5", "--engine", "syzygy"]);
    assert_eq!(o.status.code(), Some(0));
    let ext = r["payload"]["ext"].as_array().unwrap();
    let kinds: Vec<&str> = ext.iter().map(|e| e["status"]["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["certified_zero", "non_zero", "certified_zero", "non_zero", "certified_zero"]);
    assert!(ext[1]["witness"].is_array());
    assert!(r["certificates"].as_array().unwrap().iter().any(|c| c["kind"] == "cocycle"));
}

#[test]
fn gamma_csv_is_the_displayed_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let (o, r) = run(dir.path(), "g", &["gamma", "--n", "3", "--ell", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[1], "\"m[3,1]^2\",\"x[1,1]\",\"-x[2,1]\",\"x[3,1]\",0,0,0,0,0,0");
    assert_eq!(std::fs::read_to_string(dir.path().join("g.csv")).unwrap(), s);
    assert_eq!(r["payload"]["gamma"]["rows"], 6);
    assert_eq!(r["payload"]["gamma"]["cols"], 9);
    let (o2, _) = run(dir.path(), "g2", &["gamma", "--n", "3", "--ell", "2", "--format", "csv"]);
    assert_eq!(stdout(&o2), s);
}

#[test]
fn trivial_class_group() {
    let dir = tempfile::tempdir().unwrap();
    let (o, r) = run(dir.path(), "c", &["classify", "--ring", "hypersurface", "--n", "1", "--class", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("semidualizing for all i <= 3"));
    assert!(s.contains("cl trivial"));
    assert_eq!(r["payload"]["class_group_trivial"], true);
}

#[test]
fn replay_checks_certificates_and_catches_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let (o, _) = run(dir.path(), "mf", &["verify-matfac", "--ring", "hypersurface", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let path = dir.path().join("mf.json");
    let replay_path = path.to_str().unwrap().to_string();
    let (o, r) = run(dir.path(), "replay", &["selftest", "--replay", &replay_path]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(r["checks"].as_array().unwrap().len(), 3);

    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["certificates"][0]["f"] = Value::String("X*Y".into());
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let (o, r) = run(dir.path(), "replay2", &["selftest", "--replay", &replay_path]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(r["checks"][0]["status"], "fail");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (o, _) = run(dir.path(), "bad", &["ext", "--ring", "nope", "--n", "2", "--class", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let (o, r) = run(dir.path(), "bad2", &["ext", "--ring", "det", "--n", "1", "--class", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(r["error"].is_string());
    // a tiny step cap leaves only infeasible results
    let (o, r) = run(dir.path(), "cap", &["ext", "--ring", "det", "--n", "3", "--class", "3", "--imax", "2", "--step-cap", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let checks = r["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "infeasible"));
}

#[test]
fn worker_count_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let o = Command::new(env!("CARGO_BIN_EXE_sdmkit"))
        .args(["cofactor-id", "--n", "3", "--out"])
        .arg(&out)
        .env("SDMKIT_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["config"]["workers"], 2);
}

#[test]
fn conjecture_table_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let (o, r) = run(dir.path(), "t", &["conjecture-table", "--m", "2", "--n", "2", "--t", "2", "--imax", "2", "--classes", "0,-1"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert!(csv.starts_with("class,i,status,witness_degree,engine\n"));
    assert!(csv.contains("-1,2,nonzero,"));
    assert_eq!(r["payload"]["table"]["flag"], "conjecture evidence");
}

#[test]
fn other_subcommands_pass() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["resolution", "--ring", "det", "--n", "3", "--ell", "1", "--length", "3"],
        &["presentation", "--n", "2", "--ell", "2"],
        &["straighten", "--m", "3", "--n", "3", "--t", "3", "--factors", "[1,3|1,2]*[2|1]"],
        &["plucker", "--m", "2", "--p", "4"],
        &["localize", "--m", "3", "--n", "3", "--t", "2"],
        &["clgroup", "--ring", "hypersurface", "--n", "3"],
        &["selftest", "--seed", "5"],
        &["gamma", "--n", "2", "--ell", "3", "--format", "json", "--field", "rational"],
    ];
    for (k, args) in cases.iter().enumerate() {
        let (o, r) = run(dir.path(), &format!("case{k}"), args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(r["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"), "{args:?}");
    }
}
