//! End-to-end runs of the binary: generate/validate/match round trips,
//! report format, exit codes.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_onepmatch"))
}

fn parse_report(out: &Output) -> HashMap<String, String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter_map(|l| {
            l.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("onepmatch-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn generate_validate_match_roundtrip() {
    let out_path = tmp("gamma3.1p");
    let out = bin()
        .args(["generate", "--family", "gamma3", "--s", "8", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let report = parse_report(&out);
    assert_eq!(report["n"], "20");
    assert_eq!(report["mu"], "8");

    let out = bin().arg("validate").arg("--drawing").arg(&out_path).output().unwrap();
    assert!(out.status.success());
    let report = parse_report(&out);
    assert_eq!(report["simple-saturated"], "true");
    assert_eq!(report["triangulated"], "false");
    assert_eq!(report["crossings"], "12");

    let out = bin()
        .args(["match", "--witness-from-meta", "--drawing"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report = parse_report(&out);
    assert_eq!(report["mu"], "8");
    assert_eq!(report["deficiency"], "4");
    assert_eq!(report["witness-tight"], "true");

    let _ = std::fs::remove_file(&out_path);
    let _ = std::fs::remove_file(format!("{}.meta", out_path.display()));
}

#[test]
fn triangulate_then_patches() {
    let g = tmp("g5-src.1p");
    let t = tmp("g5.1p");
    assert!(bin()
        .args(["generate", "--family", "gamma3", "--s", "8", "--out"])
        .arg(&g)
        .status()
        .unwrap()
        .success());
    let out = bin()
        .args(["triangulate", "--out"])
        .arg(&t)
        .arg("--drawing")
        .arg(&g)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(parse_report(&out)["added-edges"], "12");

    let out = bin()
        .args([
            "patches",
            "--set",
            "0,1,2,3,4,5,6,7",
            "--alpha",
            "2/1",
            "--chi-n3",
            "auto",
            "--drawing",
        ])
        .arg(&t)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = parse_report(&out);
    assert_eq!(report["covering-faces-deg-3"], "12");
    assert_eq!(report["total-w0"], "72");
    assert_eq!(report["weight-violations"], "0");
    assert_eq!(report["bound-towards"], "4");

    let _ = std::fs::remove_file(&g);
    let _ = std::fs::remove_file(format!("{}.meta", g.display()));
    let _ = std::fs::remove_file(&t);
}

#[test]
fn bound_and_export() {
    let g = tmp("bound.1p");
    assert!(bin()
        .args(["generate", "--family", "gamma3", "--s", "8", "--out"])
        .arg(&g)
        .status()
        .unwrap()
        .success());
    let out = bin()
        .args(["bound", "--class", "3conn-drawing", "--drawing"])
        .arg(&g)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(parse_report(&out)["passed"], "true");

    // Loop-star fails the preconditions: exit 1 with an error message.
    let star = tmp("star.1p");
    assert!(bin()
        .args(["generate", "--family", "loop-star", "--s", "4", "--out"])
        .arg(&star)
        .status()
        .unwrap()
        .success());
    let out = bin()
        .args(["bound", "--class", "drawing", "--drawing"])
        .arg(&star)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));

    let out = bin().args(["export-dot", "--drawing"]).arg(&g).output().unwrap();
    assert!(out.status.success());
    let dot = String::from_utf8_lossy(&out.stdout);
    assert!(dot.starts_with("graph planarization {"));
    assert!(dot.contains("x0"));

    let _ = std::fs::remove_file(&g);
    let _ = std::fs::remove_file(format!("{}.meta", g.display()));
    let _ = std::fs::remove_file(&star);
    let _ = std::fs::remove_file(format!("{}.meta", star.display()));
}

#[test]
fn verify_acceptance_passes() {
    let out = bin().args(["verify", "--suite", "acceptance"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.matches("PASS").count(), 9); // 8 criteria + the summary
    assert!(text.contains("all = PASS"));

    let out = bin().args(["verify", "--suite", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generated_bipyramid_file_roundtrip() {
    let g = tmp("b6.1p");
    let out = bin()
        .args(["generate", "--family", "bipyramid", "--s", "6", "--out"])
        .arg(&g)
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = bin().arg("validate").arg("--drawing").arg(&g).output().unwrap();
    let report = parse_report(&out);
    assert_eq!(report["n"], "6");
    assert_eq!(report["edges"], "12");
    assert_eq!(report["crossings"], "0");
    assert_eq!(report["cells"], "8");
    assert_eq!(report["triangulated"], "true");

    // Generated files are byte-stable.
    let first = std::fs::read(&g).unwrap();
    assert!(bin()
        .args(["generate", "--family", "bipyramid", "--s", "6", "--out"])
        .arg(&g)
        .status()
        .unwrap()
        .success());
    assert_eq!(first, std::fs::read(&g).unwrap());
    let _ = std::fs::remove_file(&g);
    let _ = std::fs::remove_file(format!("{}.meta", g.display()));
}

#[test]
fn usage_errors_exit_two() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["generate", "--family"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn brute_limit_env_applies() {
    let g = tmp("k6.1p");
    assert!(bin()
        .args(["generate", "--family", "double-k6-a", "--out"])
        .arg(&g)
        .status()
        .unwrap()
        .success());
    // n = 10 < default limit: oracle line appears.
    let out = bin().args(["match", "--drawing"]).arg(&g).output().unwrap();
    assert!(parse_report(&out).contains_key("oracle-deficiency"));
    // Lowering the cap suppresses it.
    let out = bin()
        .env("ONEPMATCH_BRUTE_LIMIT", "4")
        .args(["match", "--drawing"])
        .arg(&g)
        .output()
        .unwrap();
    assert!(!parse_report(&out).contains_key("oracle-deficiency"));
    let _ = std::fs::remove_file(&g);
    let _ = std::fs::remove_file(format!("{}.meta", g.display()));
}
