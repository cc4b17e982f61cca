use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn het(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_het")).args(args).output().expect("spawn het")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("jsonl"))
        .collect()
}

#[test]
fn gen_documented_instances() {
    let v = json(&het(&["gen", "subgroup", "--p", "13", "--t", "4"]));
    assert_eq!(v["set"], serde_json::json!([1, 5, 8, 12]));
    let v = json(&het(&["gen", "convex", "--family", "squares", "--n", "5"]));
    assert_eq!(v["set"], serde_json::json!([1, 4, 9, 16, 25]));
    let a = het(&["gen", "random-set", "--n", "64", "--m", "8", "--seed", "11"]);
    let b = het(&["gen", "random-set", "--n", "64", "--m", "8", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["set"].as_array().unwrap().len(), 8);
}

#[test]
fn infeasible_parameters_are_usage_errors() {
    assert_eq!(het(&["gen", "random-set", "--n", "8", "--m", "9"]).status.code(), Some(2));
    assert_eq!(het(&["compute", "energy", "--group", "5", "--elems", "7"]).status.code(), Some(2));
    assert_eq!(het(&["compute", "energy"]).status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_het"))
        .args(["compute", "energy", "--group", "64", "--elems", "1"])
        .env("HET_CAP_N", "32")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compute_energies_and_sets() {
    let v = json(&het(&["compute", "energy", "--group", "7", "--elems", "0,1,2"]));
    assert_eq!(v, serde_json::json!({"kind": "E2", "value": 19}));
    let kl = |k: &str, l: &str| {
        json(&het(&["compute", "energy", "--group", "32", "--elems", "0,3,4,9,17", "--kind", "ekl", "--k", k, "--l", l]))["value"]
            .clone()
    };
    assert_eq!(kl("2", "3"), kl("3", "2"));
    let v = json(&het(&["compute", "sumset", "--group", "5", "--elems", "0,1"]));
    assert_eq!(v["set"], serde_json::json!([0, 1, 2]));
    let v = json(&het(&["compute", "diffset", "--group", "5", "--elems", "0,1"]));
    assert_eq!(v["set"], serde_json::json!([0, 1, 4]));
    let v = json(&het(&["compute", "heilbronn-sum", "--p", "5", "--a", "1"]));
    assert!((v["abs"].as_f64().unwrap() - 2.5625).abs() < 1e-4);
}

#[test]
fn spectrum_squares_sum_to_e3() {
    let args = ["--group", "16", "--elems", "0,1,3,7,12"];
    let mut s = vec!["spectrum"];
    s.extend(args);
    let v = json(&het(&s));
    let mu: Vec<f64> = v["eigenvalues"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let mut e = vec!["compute", "energy", "--kind", "ekl", "--k", "2", "--l", "3"];
    e.extend(args);
    let e3 = json(&het(&e))["value"].as_f64().unwrap();
    let sq: f64 = mu.iter().map(|m| m * m).sum();
    assert!((sq - e3).abs() < 1e-8 * e3, "{sq} vs {e3}");
    // trace = |A| (A o A)(0)
    assert!((mu.iter().sum::<f64>() - 25.0).abs() < 1e-9);
}

#[test]
fn verify_output_is_independent_of_threads() {
    let run = |t: &str| het(&["verify", "--trials", "3", "--seed", "9", "--threads", t, "--deterministic", "--quiet"]);
    let (a, b) = (run("1"), run("4"));
    assert!(a.status.success() && b.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_het"))
        .args(["verify", "--trials", "3", "--seed", "9", "--deterministic", "--quiet"])
        .env("HET_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn zero_trials_is_an_empty_success() {
    let out = het(&["verify", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

#[test]
fn filter_selects_by_glob() {
    let out = het(&["verify", "--filter", "heilbronn*", "--trials", "2", "--quiet"]);
    let reports = lines(&out);
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["check"].as_str().unwrap().starts_with("heilbronn")));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn failure_witness_round_trips_through_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let out = het(&["verify", "--filter", "dense_basis", "--trials", "1", "--quiet"]);
    let mut r = lines(&out).remove(0);
    assert_eq!(r["verdict"], "pass");
    assert!(r.get("witness").is_none(), "passing reports carry no witness");
    // a single point is no basis of any depth
    r["verdict"] = "fail".into();
    r["witness"] = serde_json::json!({"group": [16], "sets": {"A": [0], "B": [0]}, "params": {"k": 1}});
    let file = write(dir.path(), "fail.jsonl", &format!("{r}\n"));

    let again = het(&["rerun", &file]);
    assert_eq!(again.status.code(), Some(1));
    let again = lines(&again);
    assert_eq!(again.len(), 1);
    assert_eq!(again[0]["verdict"], "fail");
    assert_eq!(again[0]["witness"], r["witness"]);

    let rep = het(&["report", &file]);
    assert_eq!(rep.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&rep.stdout).contains("dense_basis"));
}

#[test]
fn report_of_a_clean_run_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("run.jsonl");
    let out = het(&["verify", "--filter", "parseval*", "--trials", "4", "--quiet", "--out", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rep = het(&["report", file.to_str().unwrap(), "--json"]);
    let v = json(&rep);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["runs"] == 4 && r["fail"] == 0));
}

#[test]
fn report_only_failures_do_not_change_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = het(&["verify", "--filter", "convex_e3_ratio", "--trials", "1", "--quiet"]);
    let mut r = lines(&out).remove(0);
    assert_eq!(r["verdict"], "reported");
    r["verdict"] = "fail".into();
    let file = write(dir.path(), "monitor.jsonl", &format!("{r}\n"));
    assert_eq!(het(&["report", &file]).status.code(), Some(0));
}
