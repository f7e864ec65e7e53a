use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quasistar"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn construct_sizes() {
    let cfg = json(&run(&["construct", "quasi-star", "--d", "3", "--seed", "7"]));
    assert_eq!(cfg["points"].as_array().unwrap().len(), 6);
    assert_eq!(cfg["kind"]["type"], "quasi-star");
    let cfg = json(&run(&["construct", "star", "--d", "5", "--seed", "1"]));
    assert_eq!(cfg["points"].as_array().unwrap().len(), 10);
    let cfg = json(&run(&["construct", "generic", "--n", "6", "--seed", "2"]));
    assert_eq!(cfg["points"].as_array().unwrap().len(), 6);
    assert!(cfg["certificate"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn construct_is_deterministic() {
    let a = run(&["construct", "quasi-star", "--d", "4", "--seed", "11"]);
    let b = run(&["construct", "quasi-star", "--d", "4", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!run(&["construct", "star"]).status.success());
    assert!(!run(&["--prime", "65520", "construct", "star", "--d", "4"]).status.success());
}

#[test]
fn invariants_examples() {
    let dir = tempfile::tempdir().unwrap();
    let z4 = construct(dir.path(), "z4.json", &["quasi-star", "--d", "4"]);
    let r = json(&run(&["invariants", z4.to_str().unwrap(), "--second-prime-check"]));
    assert_eq!((r["alpha"].as_u64(), r["regularity"].as_u64()), (Some(4), Some(4)));
    let entries: Vec<(u64, u64, u64)> = r["betti"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["i"].as_u64().unwrap(), e["j"].as_u64().unwrap(), e["beta"].as_u64().unwrap()))
        .collect();
    assert_eq!(entries, vec![(0, 4, 5), (1, 5, 4)]);

    let s4 = construct(dir.path(), "s4.json", &["star", "--d", "4"]);
    let r = json(&run(&["invariants", s4.to_str().unwrap()]));
    assert_eq!((r["alpha"].as_u64(), r["regularity"].as_u64()), (Some(3), Some(3)));
}

#[test]
fn betti_formats() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = construct(dir.path(), "z3.json", &["quasi-star", "--d", "3"]);
    let out = run(&["--format", "csv", "betti", z3.to_str().unwrap()]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "i,j,beta\n0,3,4\n1,4,3\n");
    let out = run(&["--format", "text", "betti", z3.to_str().unwrap()]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("total:"));
    // corollary parameters have no csv layout
    assert!(!run(&["--format", "csv", "corollary-params", "--r", "2"]).status.success());
}

#[test]
fn containment_grid() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = construct(dir.path(), "z3.json", &["quasi-star", "--d", "3"]);
    let r = json(&run(&["containment", z3.to_str().unwrap(), "--m-max", "6", "--r-max", "4"]));
    let rows = r["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 24);
    for row in rows {
        let (m, rr) = (row["m"].as_u64().unwrap(), row["r"].as_u64().unwrap());
        if m >= 2 * rr || (m, rr) == (1, 1) {
            assert_eq!(row["status"], "holds", "cell ({m}, {rr})");
        }
        assert_eq!(row["status"] == "fails", row.get("witness").is_some());
    }
    let out = run(&["--format", "csv", "containment", z3.to_str().unwrap(), "--m-max", "2", "--r-max", "2"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 5);
}

#[test]
fn waldschmidt_and_resurgence_of_z3() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = construct(dir.path(), "z3.json", &["quasi-star", "--d", "3"]);
    let w = json(&run(&["waldschmidt", z3.to_str().unwrap(), "--m-max", "8"]));
    assert_eq!(w["upper_bound"], "9/4");
    let r = json(&run(&["resurgence", z3.to_str().unwrap(), "--m-max", "8"]));
    assert_eq!(r["lower"], "4/3");
}

#[test]
fn corollary_params() {
    let p = json(&run(&["corollary-params", "--epsilon", "2/5"]));
    assert_eq!(p["d"], 16);
    assert_eq!(p["lower"], "8/5");
    let p = json(&run(&["corollary-params", "--r", "2"]));
    assert_eq!((p["d"].as_u64(), p["lower"].as_str()), (Some(9), Some("3/2")));
    assert!(!run(&["corollary-params", "--epsilon", "1/2", "--r", "2"]).status.success());
}

#[test]
fn verify_subset_and_exit_codes() {
    let out = run(&["verify", "--claim", "eps-construction", "--claim", "failure-order"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let ids: Vec<&str> = r["results"].as_array().unwrap().iter().map(|c| c["claim_id"].as_str().unwrap()).collect();
    assert_eq!(ids, vec!["eps-construction", "failure-order", "property-suites"]);
    // a budget too small for any table skips the property claim
    let out = run(&["--budget-degree", "2", "verify", "--claim", "eps-construction"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!run(&["verify", "--claim", "no-such-claim"]).status.success());
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = construct(dir.path(), "z3.json", &["quasi-star", "--d", "3"]);
    let a = run(&["invariants", z3.to_str().unwrap()]);
    let b = run(&["invariants", z3.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["verify", "--claim", "Zd-betti"]);
    let b = run(&["verify", "--claim", "Zd-betti"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
