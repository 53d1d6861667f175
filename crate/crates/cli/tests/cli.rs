use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pseudoauto")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

/// JSON report with the timing field removed.
fn json_report(args: &[&str]) -> (Value, i32) {
    let o = run(args);
    let mut v: Value = serde_json::from_str(&stdout(&o)).expect("json report");
    v.as_object_mut().unwrap().remove("timing");
    (v, o.status.code().unwrap())
}

fn status_of<'a>(report: &'a Value, name: &str) -> &'a str {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))["status"].as_str().unwrap()
}

#[test]
fn certify_two_passes_and_names_the_octic() {
    let o = run(&["certify", "--ell", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("x^8-x^7-x^5+x^4-x^3-x+1"));
    assert!(text.starts_with("certify "));
    assert!(text.contains("certified:"));
}

#[test]
fn certify_rejects_ell_one() {
    let o = run(&["certify", "--ell", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("δ = 0"), "{err}");
}

#[test]
fn perturbed_certify_fails_the_relation() {
    let (r, code) = json_report(&["certify", "--ell", "2", "--perturb", "--n", "3", "--format", "json"]);
    assert_eq!(code, 1);
    assert_eq!(r["passed"], false);
    assert_eq!(status_of(&r, "ell-relation"), "fail");
    assert_eq!(status_of(&r, "ell-condition-orbit"), "fail");
}

#[test]
fn orbit_three_reaches_e0_after_twelve_steps() {
    let (r, code) = json_report(&["orbit", "--ell", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let steps = r["result"]["steps"].as_array().unwrap();
    let last = steps.last().unwrap();
    assert_eq!(last["k"], 12);
    assert_eq!(last["status"], "reached-e0");
    assert!(steps[..steps.len() - 1].iter().all(|s| s["status"] == "regular"));
}

#[test]
fn classify_literals() {
    let (r, code) = json_report(&["classify", "1,-1,0,-1,1,-1,0,-1,1", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdict"], "salem");
    // Lowest-first reading of x³ − x² − 1 is −1 − x² + x³.
    let (fwd, _) = json_report(&["classify", "1,-1,0,-1", "--format", "json"]);
    let (low, _) = json_report(&["classify", "-1,0,-1,1", "--lowest-first", "--format", "json"]);
    assert_eq!(fwd["result"], low["result"]);
    assert_eq!(fwd["result"]["verdict"], "pisot");
    assert_eq!(status_of(&fwd, "classify-reverse"), "pass");
    let bad = run(&["classify", "1,x,2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn torus_streams_json_lines() {
    let o = run(&["torus", "--bound", "3", "--format", "json"]);
    assert!(o.status.success());
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).expect("json line")).collect();
    let (summary, records) = lines.split_last().unwrap();
    assert_eq!(summary["command"], "torus");
    assert_eq!(summary["result"]["hits"].as_u64().unwrap() as usize, records.len());
    let ex = records.iter().find(|r| r["a"] == 1 && r["b"] == 0 && r["c"] == -2).expect("(1, 0, −2) is a hit");
    assert_eq!(ex["verdict"], "non-fibered");
    assert_eq!(ex["lambda1_equals_lambda2"], true);
    for r in records {
        for key in ["a", "b", "c", "admissible", "verdict", "lambda1_enclosure"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }

    let empty = run(&["torus", "--bound", "0", "--format", "json"]);
    assert!(empty.status.success());
    assert_eq!(stdout(&empty).lines().count(), 1);
    assert_eq!(run(&["torus", "--bound", "-1"]).status.code(), Some(2));
}

#[test]
fn torus_complex_structures() {
    let o = run(&["torus", "--bound", "2", "--verify-J", "--format", "json"]);
    assert!(o.status.success());
    for line in stdout(&o).lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        if let Some(res) = v.get("residuals") {
            let r = res.as_array().expect("residuals recorded");
            assert!(r.iter().all(|x| x.as_f64().unwrap() < 1e-9));
        }
    }
}

#[test]
fn degree_table_csv() {
    let o = run(&["degrees", "--ell", "2", "--n", "4", "--format", "csv"]);
    assert!(o.status.success());
    let mut rd = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rd.headers().unwrap(), vec!["map", "k", "predicted", "symbolic"]);
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r[2] == r[3]));
    let f: Vec<&str> = rows.iter().filter(|r| &r[0] == "f").map(|r| r.get(3).unwrap()).collect();
    assert_eq!(f, ["3", "3", "5", "7"]);
}

#[test]
fn golden_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["certify", "--ell", "2", "--golden-dir", d, "--format", "json"];
    let (first, code) = json_report(&args);
    assert_eq!(code, 0);
    assert!(status_of(&first, "golden-file") == "pass");
    let (second, code) = json_report(&args);
    assert_eq!(code, 0);
    let details = |r: &Value| r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "golden-file").unwrap()["details"].clone();
    assert!(details(&second).as_str().unwrap().ends_with("identical"));

    // A tampered golden file fails the run.
    let path = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let stored = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, stored.replace("\"passed\": true", "\"passed\": false")).unwrap();
    let (_, code) = json_report(&args);
    assert_eq!(code, 1);
}

#[test]
fn reports_do_not_depend_on_scheduling() {
    let args = ["certify", "--ell", "3", "--n", "3", "--format", "json"];
    let (par, _) = json_report(&args);
    let mut seq_args = args.to_vec();
    seq_args.push("--sequential");
    let (seq, _) = json_report(&seq_args);
    assert_eq!(par, seq);
    let names: Vec<&str> = par["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn text_and_csv_reports() {
    let o = run(&["classify", "1,0,-1,-1", "--format", "csv"]);
    let out = stdout(&o);
    assert!(out.starts_with("name,status,claim,details"));
    let o = run(&["classify", "1,0,-1,-1"]);
    assert!(stdout(&o).contains("inside"));
}
