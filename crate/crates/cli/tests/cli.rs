use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensegrity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn analyze_exact_half() {
    let out = run(&["analyze", "--x", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["pipeline"], "exact");
    assert_eq!(v["point"]["y"], "-1/3");
    assert_eq!(v["intersection"]["tau"], "1/2");
    assert_eq!(v["intersection"]["r1"], "1/6");
    assert_eq!(v["intersection"]["r2"], "1/6");
    assert_eq!(v["cable_lengths_equal"], true);
    let m = v["linking"]["matrix"].as_array().unwrap();
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.as_array().unwrap().iter().enumerate() {
            let e = e.as_i64().unwrap();
            assert_eq!(e.abs(), i64::from(i != j));
        }
    }
}

#[test]
fn analyze_numeric() {
    let out = run(&["analyze", "--x", "0.3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["pipeline"], "numeric");
    assert!(v["equilibrium_residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(v["linking"]["mutual_hopf_link"], true);
    assert_eq!(v["edges"].as_array().unwrap().len(), 36);
}

#[test]
fn analyze_usage_errors() {
    for x in ["2", "0", "1", "-0.5", "1.5", "1/3", "abc", "1/0"] {
        let out = run(&["analyze", "--x", x]);
        assert_eq!(out.status.code(), Some(2), "x = {x}");
    }
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--x", "1/2", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn analyze_obj() {
    let out = run(&["analyze", "--x", "0.25", "--format", "obj"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 12);
    assert_eq!(text.lines().filter(|l| l.starts_with("l ")).count(), 36);
    assert!(text.contains("# strut") && text.contains("# cable"));
}

#[test]
fn sweep_frames_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("frames");
    let out = run(&[
        "sweep",
        "--from",
        "0",
        "--to",
        "1",
        "--steps",
        "11",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let frames: Vec<_> = fs::read_dir(&out_dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.path().extension().is_some_and(|x| x == "obj"))
        .collect();
    assert_eq!(frames.len(), 11);
    let (header, rows) = read_csv(&out_dir.join("summary.csv"));
    assert_eq!(header.len(), 12);
    assert_eq!(rows.len(), 11);
    for (k, row) in rows.iter().enumerate() {
        let x: f64 = row[1].parse().unwrap();
        assert!((x - k as f64 / 10.0).abs() < 1e-15);
    }
    let mid = &rows[5];
    assert_eq!(mid[6], "true");
    let c1: f64 = mid[4].parse().unwrap();
    let c2: f64 = mid[5].parse().unwrap();
    assert!((c1 - c2).abs() < 1e-12);
    assert!(rows[1..10].iter().all(|r| r[11] == "hopf"));
}

#[test]
fn sweep_json_frames_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for d in [&a, &b] {
        let out = run(&[
            "sweep",
            "--from",
            "0.1",
            "--to",
            "0.9",
            "--steps",
            "5",
            "--format",
            "json",
            "--out",
            d.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    for name in ["frame_000.json", "frame_004.json", "summary.csv"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap());
    }
    let v: Value = serde_json::from_slice(&fs::read(a.join("frame_002.json")).unwrap()).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 12);
}

#[test]
fn sweep_rejects_bad_range() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for (from, to) in [("0.5", "0.2"), ("-0.1", "0.5"), ("0.2", "1.5")] {
        let out = run(&["sweep", "--from", from, "--to", to, "--steps", "3", "--out", d]);
        assert_eq!(out.status.code(), Some(2));
    }
}

#[test]
fn verify_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.json");
    let out = run(&["verify", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["det_identity"], "pass");
    assert_eq!(v["torsion_structure"], serde_json::json!([2, 6]));
}

#[test]
fn persistence_report() {
    let out = run(&["persistence"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verdict"], true);
    let d_tau = v["certificate"]["functions"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["name"] == "D_tau")
        .unwrap();
    let roots = d_tau["roots_in_01"].as_array().unwrap();
    assert_eq!(roots.len(), 1);
    assert_eq!(roots[0]["lo"], "1/2");
    assert_eq!(roots[0]["vanishes_on"], "other-branch");
}

#[test]
fn torsion_report() {
    let out = run(&["torsion"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["torsion"]["points"].as_array().unwrap().len(), 12);
    assert_eq!(v["torsion"]["structure"], serde_json::json!([2, 6]));
    assert_eq!(v["isomorphism"]["scale_factor"], "6");
}

#[test]
fn trajectory_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = run(&["trajectory", "--steps", "500", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = read_csv(&path);
    assert_eq!(header, ["x", "y", "u", "v", "K_residual"]);
    assert_eq!(rows.len(), 500);
    let worst = rows
        .iter()
        .map(|r| r[4].parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    assert!(worst < 1e-9);
}
