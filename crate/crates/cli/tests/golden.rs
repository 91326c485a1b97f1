//! Golden-file tests for the quick tier. Run with UPDATE_GOLDEN=1 to rewrite
//! the files after an intended output change.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn nubound(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nubound"));
    c.args(args).env_remove("NUBOUND_CACHE_DIR");
    match cache {
        Some(d) => c.arg("--cache-dir").arg(d),
        None => c.arg("--no-cache"),
    };
    c.output().expect("binary runs")
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Timings change between runs; everything else must not.
fn stable(stdout: &[u8]) -> String {
    let text = String::from_utf8(stdout.to_vec()).unwrap();
    match serde_json::from_str::<Value>(&text) {
        Ok(mut v) => {
            if let Some(o) = v.as_object_mut() {
                o.remove("timings");
            }
            serde_json::to_string_pretty(&v).unwrap() + "\n"
        }
        Err(_) => text,
    }
}

fn check_golden(name: &str, args: &[&str]) {
    let out = nubound(args, None);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let got = stable(&out.stdout);
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(got, want, "output of {args:?} differs from {name}");
}

#[test]
fn golden_cases() {
    check_golden("cases.md", &["cases"]);
}

#[test]
fn golden_compute_quick_tier() {
    for case in ["G2C", "G2S", "FII", "FI", "EIV"] {
        check_golden(&format!("compute_{case}.json"), &["compute", case]);
    }
    check_golden("compute_FII.tex", &["compute", "FII", "--format", "latex"]);
    check_golden("compute_G2S_sqrt.md", &["compute", "G2S", "--format", "md", "--sqrt"]);
}

#[test]
fn golden_verify_quick() {
    check_golden("verify_quick.md", &["verify", "all", "--tier", "quick"]);
    check_golden("verify_quick.csv", &["verify", "all", "--tier", "quick", "--format", "csv"]);
}

#[test]
fn golden_enumerate_and_norms() {
    check_golden("enumerate_G2S_chambers.json", &["enumerate", "G2S", "--what", "chambers"]);
    check_golden("enumerate_G2S_boundary.md", &["enumerate", "G2S", "--what", "boundary", "--format", "md"]);
    check_golden("nondecreasable_FI_6.csv", &["nondecreasable", "FI", "--chamber", "6", "--format", "csv"]);
    check_golden("norms_FI.json", &["norms", "FI", "--mu", "0,0,0,1"]);
}

#[test]
fn exit_codes() {
    assert_eq!(nubound(&["verify", "G2S"], None).status.code(), Some(0));
    assert_eq!(nubound(&["verify", "EI"], None).status.code(), Some(2));
    assert_eq!(nubound(&["compute", "NOPE"], None).status.code(), Some(1));
    assert_eq!(nubound(&["norms", "G2S", "--mu", "1,2,3"], None).status.code(), Some(1));
    assert_eq!(nubound(&["norms", "G2S", "--mu", "-1,2"], None).status.code(), Some(1));
    assert_eq!(nubound(&["enumerate", "G2S", "--chamber", "3"], None).status.code(), Some(1));
    assert_eq!(nubound(&["verify", "G2S", "--tier", "quick"], None).status.code(), Some(1));
    assert_eq!(nubound(&["--help"], None).status.code(), Some(0));
}

#[test]
fn cache_hit_matches_miss() {
    let dir = tempfile::tempdir().unwrap();
    let first = nubound(&["compute", "FI"], Some(dir.path()));
    assert!(dir.path().join("FI.inventory").exists());
    let second = nubound(&["compute", "FI"], Some(dir.path()));
    let t = |o: &Output| serde_json::from_slice::<Value>(&o.stdout).unwrap()["timings"]["inventory_cached"].clone();
    assert_eq!(t(&first), false);
    assert_eq!(t(&second), true);
    assert_eq!(stable(&first.stdout), stable(&second.stdout));
    let fresh = nubound(&["compute", "FI"], None);
    assert_eq!(stable(&fresh.stdout), stable(&second.stdout));
}

#[test]
fn no_cache_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_nubound"))
        .args(["compute", "G2S", "--no-cache"])
        .env("NUBOUND_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn threads_flag_gives_same_report() {
    let one = nubound(&["compute", "FI", "--threads", "1"], None);
    let two = nubound(&["compute", "FI", "--threads", "2"], None);
    assert_eq!(stable(&one.stdout), stable(&two.stdout));
}
