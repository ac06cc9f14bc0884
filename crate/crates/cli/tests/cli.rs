use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const A1: &str = r#"{"cases": [{"name": "a1", "datum": {"rank": 1, "roots": [[1], [-1]], "coroots": [[2], [-2]], "simple": [0]},
    "arithmetic": [{"root": 0, "data": {"f": 1, "case": "nonexceptional"EXTRA}}]}]}"#;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hecke-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, extra: &str) -> PathBuf {
    let path = dir.join("catalog.json");
    fs::write(&path, A1.replace("EXTRA", extra)).unwrap();
    path
}

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_presentation_passes() {
    let dir = scratch("verify");
    let cfg = write_config(&dir, "");
    let out = dir.join("out");
    let o = hecke(&["run", "--config", s(&cfg), "--task", "verify-presentation", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let tsv = fs::read_to_string(out.join("a1/verify-presentation.tsv")).unwrap();
    assert!(tsv.starts_with("# case\ta1\n# task\tverify-presentation\n"));
    assert!(tsv.contains("# verdict\tPASS"));
    let summary = fs::read_to_string(out.join("summary.json")).unwrap();
    assert!(summary.contains("\"verdict\": \"PASS\""));
    assert!(String::from_utf8_lossy(&o.stdout).contains("PASS"));
}

#[test]
fn corrupted_labels_fail_compare_sides() {
    let dir = scratch("corrupt");
    let cfg = write_config(&dir, r#", "halved_galois": true"#);
    let out = dir.join("out");
    let o = hecke(&["run", "--config", s(&cfg), "--task", "compare-sides", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    let tsv = fs::read_to_string(out.join("a1/compare-sides.tsv")).unwrap();
    assert!(tsv.contains("# verdict\tFAIL"));
    assert!(tsv.contains("labels differ on orbit{[1] [-1]}"), "{tsv}");
}

#[test]
fn no_filter_runs_every_task() {
    let dir = scratch("all");
    let cfg = write_config(&dir, "");
    let out = dir.join("out");
    let o = hecke(&["run", "--config", s(&cfg), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    for task in ["verify-presentation", "labels", "compare-sides", "generic-test", "rank1-classify", "graded", "lparam", "match"] {
        assert!(out.join(format!("a1/{task}.tsv")).is_file(), "{task}");
    }
}

#[test]
fn config_errors_exit_two() {
    let dir = scratch("bad");
    let bad = dir.join("bad.json");
    fs::write(&bad, r#"{"cases": [{"name": "x"}"#).unwrap();
    assert_eq!(hecke(&["validate", "--config", s(&bad)]).status.code(), Some(2));
    assert_eq!(hecke(&["run", "--config", s(&bad), "--out", s(&dir.join("out"))]).status.code(), Some(2));
    let missing = dir.join("missing.json");
    assert_eq!(hecke(&["run", "--config", s(&missing)]).status.code(), Some(2));
    let cfg = write_config(&dir, "");
    assert_eq!(hecke(&["run", "--config", s(&cfg), "--task", "nope"]).status.code(), Some(2));
    let o = hecke(&["validate", "--config", s(&cfg)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "ok: 1 cases");
}

#[test]
fn bundled_catalog_validates() {
    let dir = scratch("bundled");
    let o = hecke(&["default-catalog"]);
    assert!(o.status.success());
    let cfg = dir.join("default.json");
    fs::write(&cfg, &o.stdout).unwrap();
    let v = hecke(&["validate", "--config", s(&cfg)]);
    assert_eq!(String::from_utf8_lossy(&v.stdout).trim(), "ok: 8 cases");
}

#[test]
fn runs_are_deterministic() {
    let dir = scratch("det");
    let cfg = write_config(&dir, "");
    let (a, b) = (dir.join("a"), dir.join("b"));
    for out in [&a, &b] {
        let o = hecke(&["run", "--config", s(&cfg), "--task", "compare-sides", "--task", "generic-test", "--out", s(out)]);
        assert_eq!(o.status.code(), Some(0));
    }
    for f in ["a1/compare-sides.tsv", "a1/generic-test.tsv", "summary.json"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}
