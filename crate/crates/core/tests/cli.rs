use std::path::PathBuf;
use std::process::Command;

use cox_delpezzo::cli::run;
use serde_json::Value;

fn cli(args: &[&str]) -> cox_delpezzo::cli::Outcome {
    run(std::iter::once("cox-delpezzo").chain(args.iter().copied()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cox-delpezzo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_counts_r4() {
    let out = cli(&["verify", "--r", "4", "--suite", "counts"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("PASS  exceptional curves N_4"));
    assert!(out.stdout.contains("expected 10"));
    assert!(out.stdout.contains("expected 20"));
    assert!(out.stdout.contains("rulings of X_4"));
    assert!(out.stdout.ends_with("0 failed\n"));
}

#[test]
fn curves_table_r3_has_six_rows() {
    let out = cli(&["curves", "--r", "3", "--format", "table"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 1 + 6);
    assert!(lines[0].contains("class"));
}

#[test]
fn curves_csv_and_json() {
    let csv = cli(&["curves", "--r", "5", "--format", "csv"]);
    assert_eq!(csv.stdout.lines().count(), 1 + 16);
    let json: Value = serde_json::from_str(&cli(&["curves", "--r", "5", "--format", "json"]).stdout).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 16);
    assert_eq!(json[0]["class"].as_array().unwrap().len(), 6);
}

#[test]
fn enumeration_dumps() {
    let roots: Value = serde_json::from_str(&cli(&["roots", "--r", "6", "--format", "json"]).stdout).unwrap();
    assert_eq!(roots.as_array().unwrap().len(), 72);
    let rulings: Value = serde_json::from_str(&cli(&["rulings", "--r", "5", "--format", "json"]).stdout).unwrap();
    let rulings = rulings.as_array().unwrap();
    assert_eq!(rulings.len(), 10);
    assert!(rulings.iter().all(|r| r["fibers"].as_array().unwrap().len() == 4));
}

#[test]
fn verify_is_deterministic() {
    let a = cli(&["verify", "--r", "5", "--suite", "all", "--seed", "7"]);
    let b = cli(&["verify", "--r", "5", "--suite", "all", "--seed", "7"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);

    let strip = |s: &str| {
        let mut v: Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let args = ["verify", "--r", "5", "--suite", "all", "--seed", "7", "--format", "json"];
    let ja = strip(&cli(&args).stdout);
    let jb = strip(&cli(&args).stdout);
    assert_eq!(serde_json::to_string(&ja).unwrap(), serde_json::to_string(&jb).unwrap());
    assert_eq!(ja["inputs"]["seed"], 7);
    assert!(ja["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn config_round_trip_through_commands() {
    let path = scratch("r4.json");
    let p = path.to_str().unwrap();
    let out = cli(&["sample-config", "--r", "4", "--seed", "3", "--bound", "10", "--out", p]);
    assert_eq!(out.code, 0, "{}", out.stderr);

    let sections = cli(&["sections", "--config", p, "--format", "json"]);
    let v: Value = serde_json::from_str(&sections.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);

    let rel = cli(&["relations", "--config", p, "--ruling", "0", "--format", "json"]);
    assert_eq!(rel.code, 0, "{}", rel.stderr);
    let v: Value = serde_json::from_str(&rel.stdout).unwrap();
    let rels = v.as_array().unwrap();
    assert_eq!(rels.len(), 1);
    assert_eq!(rels[0]["terms"].as_array().unwrap().len(), 3);
    assert!(rels[0]["terms"][0]["c"].is_string());

    let pl = cli(&["pluecker", "--config", p]);
    assert_eq!(pl.code, 0, "{}", pl.stderr);
    assert_eq!(pl.stdout.matches("vanishes").count(), 5);

    let ver = cli(&["verify", "--r", "4", "--config", p, "--suite", "relations"]);
    assert_eq!(ver.code, 0, "{}", ver.stderr);
    assert!(ver.stdout.contains("Grassmannian model"));

    let out_of_range = cli(&["relations", "--config", p, "--ruling", "5"]);
    assert_eq!(out_of_range.code, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["curves"]).code, 2);
    assert_eq!(cli(&["curves", "--r", "9"]).code, 2);
    assert_eq!(cli(&["verify", "--r", "4", "--suite", "bogus"]).code, 2);
    assert_eq!(cli(&["verify", "--r", "7", "--suite", "jacobian"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);

    let path = scratch("float.json");
    std::fs::write(&path, r#"{"r": 3, "points": [[1.5, 0, 0], [0, 1, 0], [0, 0, 1]]}"#).unwrap();
    let out = cli(&["sections", "--config", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("float"));
}

#[test]
fn degenerate_config_fails_with_reason() {
    let path = scratch("collinear.json");
    std::fs::write(&path, r#"{"r": 4, "points": [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]]}"#).unwrap();
    let out = cli(&["verify", "--r", "4", "--config", path.to_str().unwrap(), "--suite", "relations"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("collinear"), "{}", out.stderr);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cox-delpezzo");
    let ok = Command::new(bin)
        .args(["verify", "--r", "3", "--suite", "counts"])
        .env("COX_DELPEZZO_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().contains("N_3"));
    let bad = Command::new(bin).args(["roots", "--r", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
