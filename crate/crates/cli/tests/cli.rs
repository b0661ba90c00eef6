use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oddbracket"))
}

fn workspace() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("oddbracket-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn run(args: &[&str]) -> Output {
    bin().args(args).current_dir(workspace()).output().expect("spawn")
}

fn report(dir: &PathBuf, cmd: &str) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(format!("{cmd}.json"))).unwrap()).unwrap()
}

#[test]
fn verify_cocycles_defaults() {
    let out = scratch("cocycles");
    let o = run(&["verify-cocycles", "--golden-dir", "/nonexistent", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out, "verify-cocycles");
    let checks = r["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 7);
    assert!(checks.iter().all(|c| c["passed"] == true));
    let md = std::fs::read_to_string(out.join("verify-cocycles.md")).unwrap();
    assert_eq!(md.matches("| PASS |").count(), 7);
}

#[test]
fn reports_are_deterministic() {
    let (a, b) = (scratch("det-a"), scratch("det-b"));
    for d in [&a, &b] {
        let o = run(&["lemma-a1", "--seed", "5", "--golden-dir", "/nonexistent", "--out", d.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let read = |d: &PathBuf| std::fs::read_to_string(d.join("lemma-a1.json")).unwrap();
    assert_eq!(read(&a), read(&b));
}

#[test]
fn constraint_violation_names_the_identity() {
    let o = run(&["verify-deformation", "--params", "fixtures/params/c4_c5_violation.toml", "--golden-dir", "/nonexistent"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("constraint c4*c5 = 0"), "{err}");
}

#[test]
fn family_instance_passes() {
    let o = run(&["verify-deformation", "--params", "fixtures/params/defform4.toml", "--golden-dir", "/nonexistent"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn config_errors_exit_2() {
    for args in [
        &["verify-cocycles", "--tol", "0"][..],
        &["verify-cocycles", "--tol", "1e-6", "--nu", "1e-7"],
        &["verify-deformation"],
        &["verify-deformation", "--params", "fixtures/params/missing.toml"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let bad = scratch("bad");
    std::fs::create_dir_all(&bad).unwrap();
    let p = bad.join("odd_c4.toml");
    std::fs::write(&p, "c4 = [[1, [1], 1.0]]\n").unwrap();
    let o = run(&["verify-deformation", "--params", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("c4 must be even"));
}

#[test]
fn golden_files() {
    let o = run(&["verify-cocycles"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("verdicts match the golden report"));

    let g = scratch("golden");
    let o = run(&["lemma-a1", "--golden-dir", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!g.exists(), "written without --bless");
    let o = run(&["lemma-a1", "--bless", "--golden-dir", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(g.join("lemma-a1.json").exists());

    // a golden report whose verdicts differ is a check failure
    let path = g.join("lemma-a1.json");
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["checks"][0]["passed"] = serde_json::Value::Bool(false);
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&["lemma-a1", "--golden-dir", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("golden"));
}

#[test]
fn normalize_c4_report() {
    let out = scratch("normalize");
    let o = run(&[
        "normalize-c4",
        "--params",
        "fixtures/params/c4_nilpotent.json",
        "--golden-dir",
        "/nonexistent",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&out, "normalize-c4");
    let c4 = &r["extra"]["normalized"]["c4"];
    assert_eq!(c4.as_array().unwrap().len(), 1);
    assert_eq!(c4[0][1], serde_json::json!([1, 2]));
    let o = run(&["normalize-c4", "--params", "fixtures/params/defform1.toml"]);
    assert_eq!(o.status.code(), Some(2), "theta-free c4 has no normal form");
}
