use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_robustprop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gjcr_on_laminar_profile() {
    let out = run(&["elect", "--rule", "gjcr", "--input", &data("laminar.json"), "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "c3,c4");
}

#[test]
fn ejrp_violation_reports_witness() {
    let out = run(&[
        "verify",
        "--axiom",
        "ejr+",
        "--committee",
        "c1,c3,c5,c7",
        "--input",
        &data("laminar.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "violated");
    assert_eq!(v["candidate_name"], "c4");
    assert_eq!(v["ell"], 3);
}

#[test]
fn same_committee_passes_ejr() {
    let out = run(&[
        "verify",
        "--axiom",
        "ejr",
        "--committee",
        "0,2,4,6",
        "--input",
        &data("laminar.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn missing_input_is_usage_error() {
    assert_eq!(run(&["verify", "--axiom", "ejr+"]).status.code(), Some(1));
    assert_eq!(run(&["elect", "--rule", "nope", "--input", "x"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn unreadable_input_is_io_error() {
    let out = run(&["elect", "--rule", "mes", "--input", "/nonexistent/x.json", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_candidate_is_rejected() {
    let out = run(&[
        "verify",
        "--axiom",
        "pjr",
        "--committee",
        "c1,zz",
        "--input",
        &data("laminar.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

fn elect_then_verify(input: &str, rule: &str, axiom: &str, k: &str) {
    let out = run(&["elect", "--rule", rule, "--input", input, "--k", k]);
    assert_eq!(out.status.code(), Some(0), "{rule}: {}", String::from_utf8_lossy(&out.stderr));
    let committee = stdout(&out).lines().next().unwrap_or("").to_string();
    let out = run(&["verify", "--axiom", axiom, "--committee", &committee, "--input", input, "--k", k]);
    assert_eq!(out.status.code(), Some(0), "{rule} -> {axiom} on {committee}: {}", stdout(&out));
}

#[test]
fn round_trips_on_sampled_instances() {
    let dir = std::env::temp_dir().join(format!("robustprop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for seed in 0..4 {
        let seed = seed.to_string();
        let approval = dir.join(format!("a{seed}.json")).display().to_string();
        let out = run(&[
            "sample", "--model", "resampling", "--p", "0.3", "--phi", "0.5", "--n", "12", "--m", "7", "--seed", &seed,
            "--out", &approval,
        ]);
        assert_eq!(out.status.code(), Some(0));
        for (rule, axiom) in [("gjcr", "ejr+"), ("mes", "ejr+"), ("pav", "ejr+"), ("phragmen", "pjr+")] {
            elect_then_verify(&approval, rule, axiom, "3");
        }
        let ranked = dir.join(format!("r{seed}.json")).display().to_string();
        let out = run(&[
            "sample", "--model", "mallows", "--phi", "0.6", "--n", "10", "--m", "6", "--seed", &seed, "--out", &ranked,
        ]);
        assert_eq!(out.status.code(), Some(0));
        elect_then_verify(&ranked, "ear", "rank-pjr+", "3");
        elect_then_verify(&ranked, "ear", "rank-priceable", "3");
        elect_then_verify(&ranked, "stv", "psc", "3");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn pb_round_trip() {
    let input = data("pb.json");
    let out = run(&["elect", "--rule", "mes-pb", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    let committee = stdout(&out).trim().to_string();
    assert_eq!(committee, "library,bikes");
    for axiom in ["pb-ejr+", "pb-pjr+"] {
        let out = run(&["verify", "--axiom", axiom, "--committee", &committee, "--input", &input]);
        assert_eq!(out.status.code(), Some(0), "{axiom}");
    }
}

#[test]
fn experiment_writes_named_csv() {
    let dir = std::env::temp_dir().join(format!("robustprop-exp-{}", std::process::id()));
    let out = run(&["experiment", "--config", &data("grid.toml"), "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.join("tiny.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("model,p,phi,g,alpha,dim,n,m,k,axiom,satisfied,total"));
    assert_eq!(lines.count(), 8);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exact_query_sim_matches_gjcr() {
    let out = run(&["query-sim", "--mode", "exact", "--trials", "3", "--input", &data("laminar.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.contains("\"c3,c4\",true")));
}

#[test]
fn sample_rejects_missing_parameter() {
    let out = run(&["sample", "--model", "resampling", "--phi", "0.5", "--n", "5", "--m", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--p"));
}
