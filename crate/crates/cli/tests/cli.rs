use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn awb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_awb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Writes a catalog entry to `dir` and returns its path.
fn catalog(dir: &Path, name: &str, field: &str, extension: bool) -> PathBuf {
    let mut args = vec!["catalog", name, "--field", field];
    if extension {
        args.push("--extension");
    }
    let o = awb(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let path = dir.join(format!("{name}_{field}.json"));
    std::fs::write(&path, o.stdout).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_accepts_and_rejects() {
    let dir = TempDir::new().unwrap();
    let good = catalog(dir.path(), "heis", "q", false);
    assert_eq!(code(&awb(&["validate", s(&good)])), 0);
    // e0 e0 = e0 and [e0, e0] = e0 give [e0 e0, e0] = e0 against 2 e0 on the right
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"name":"bad","field":{"kind":"rational"},"dim":1,"product":[[0,0,0,"1"]],"bracket":[[0,0,0,"1"]]}"#,
    )
    .unwrap();
    let o = awb(&["validate", s(&bad), "--json"]);
    assert_eq!(code(&o), 1);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["valid"], false);
    assert!(!report["violations"].as_array().unwrap().is_empty());
}

#[test]
fn info_on_ab3() {
    let dir = TempDir::new().unwrap();
    let f = catalog(dir.path(), "ab(3)", "q", false);
    let o = awb(&["info", s(&f), "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["center"].as_u64(), v["derived"].as_u64(), v["h1"].as_u64()), (Some(3), Some(0), Some(18)));
    assert_eq!(v["abelian"], true);
}

#[test]
fn homology_degrees() {
    let dir = TempDir::new().unwrap();
    let f = catalog(dir.path(), "idem1", "q", false);
    let v: serde_json::Value = serde_json::from_str(&stdout(&awb(&["homology", s(&f), "--degree", "1", "--json"]))).unwrap();
    assert_eq!(v["dim"], 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&awb(&["homology", s(&f), "--degree", "0", "--json"]))).unwrap();
    assert_eq!(v["dim"], 0);
    assert_eq!(code(&awb(&["homology", s(&f), "--degree", "2"])), 3);
}

#[test]
fn stem_and_cover_checks() {
    let dir = TempDir::new().unwrap();
    let e = catalog(dir.path(), "e_heis", "q", true);
    let o = awb(&["stem-check", s(&e)]);
    assert_eq!((code(&o), stdout(&o).lines().next()), (0, Some("true")));
    assert_eq!(code(&awb(&["cover-check", s(&e)])), 1);
    let c = catalog(dir.path(), "cover_ab1", "q", true);
    assert_eq!(code(&awb(&["cover-check", s(&c)])), 0);
    let split = catalog(dir.path(), "split_ab2", "q", true);
    let o = awb(&["stem-check", s(&split), "--json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["witness"].is_array());
}

#[test]
fn theta_report() {
    let dir = TempDir::new().unwrap();
    let e = catalog(dir.path(), "e_heis", "q", true);
    let v: serde_json::Value = serde_json::from_str(&stdout(&awb(&["theta", s(&e), "--json"]))).unwrap();
    assert_eq!((v["rank"].as_u64(), v["image_dim"].as_u64(), v["kernel_dim"].as_u64()), (Some(1), Some(1), Some(7)));
}

#[test]
fn isoclinic_emits_and_verifies_certificate() {
    let dir = TempDir::new().unwrap();
    let a = catalog(dir.path(), "heis", "2", false);
    let b = catalog(dir.path(), "heis_x_ab1", "2", false);
    let o = awb(&["isoclinic", s(&a), s(&b)]);
    assert_eq!(code(&o), 0);
    let cert = dir.path().join("cert.json");
    std::fs::write(&cert, &o.stdout).unwrap();
    assert_eq!(code(&awb(&["isoclinic", s(&a), s(&b), "--verify", s(&cert)])), 0);
    // the same certificate read against swapped algebras has the wrong bases
    assert_eq!(code(&awb(&["isoclinic", s(&b), s(&a), "--verify", s(&cert)])), 3);
}

#[test]
fn isoclinic_negative_and_undecided() {
    let dir = TempDir::new().unwrap();
    let heis = catalog(dir.path(), "heis", "2", false);
    let ab = catalog(dir.path(), "ab(3)", "2", false);
    let o = awb(&["isoclinic", s(&heis), s(&ab)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("NOT ISOCLINIC ("));
    let (hq, hq1) = (catalog(dir.path(), "heis", "q", false), catalog(dir.path(), "heis_x_ab1", "q", false));
    assert_eq!(code(&awb(&["isoclinic", s(&hq), s(&hq1)])), 2);
    let aq = catalog(dir.path(), "ab(3)", "q", false);
    assert_eq!(code(&awb(&["isoclinic", s(&hq), s(&aq)])), 1);
}

#[test]
fn isoclinic_with_extensions() {
    let dir = TempDir::new().unwrap();
    let g = catalog(dir.path(), "heis", "2", false);
    let e = catalog(dir.path(), "e_heis", "2", true);
    let t = catalog(dir.path(), "trivial_heis", "2", true);
    assert_eq!(code(&awb(&["isoclinic", s(&g), s(&g), "--extensions", s(&e), s(&e)])), 0);
    assert_eq!(code(&awb(&["isoclinic", s(&g), s(&g), "--extensions", s(&e), s(&t)])), 1);
}

#[test]
fn dimension_guard() {
    let dir = TempDir::new().unwrap();
    let a = catalog(dir.path(), "heis", "2", false);
    let b = catalog(dir.path(), "heis_x_ab1", "2", false);
    let o = awb(&["isoclinic", s(&a), s(&b), "--max-dim", "3"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("dimension guard"));
}

#[test]
fn field_mismatch_is_an_error() {
    let dir = TempDir::new().unwrap();
    let a = catalog(dir.path(), "heis", "2", false);
    let b = catalog(dir.path(), "heis", "3", false);
    let o = awb(&["isoclinic", s(&a), s(&b)]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("field mismatch"));
}

#[test]
fn extract_extend_roundtrip() {
    let dir = TempDir::new().unwrap();
    let e = catalog(dir.path(), "cover_ab1", "q", true);
    let o = awb(&["extract", s(&e)]);
    assert_eq!(code(&o), 0);
    let fs = dir.path().join("fs.json");
    std::fs::write(&fs, &o.stdout).unwrap();
    let o = awb(&["extend", "--factorset", s(&fs)]);
    assert_eq!(code(&o), 0);
    let built = dir.path().join("built.json");
    std::fs::write(&built, &o.stdout).unwrap();
    assert_eq!(code(&awb(&["cover-check", s(&built)])), 0);
    // the rebuilt extension has the same factor set; only derived names differ
    let again: serde_json::Value = serde_json::from_str(&stdout(&awb(&["extract", s(&built)]))).unwrap();
    let first: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&fs).unwrap()).unwrap();
    for key in ["kernel_dim", "f", "g"] {
        assert_eq!(again[key], first[key], "{key}");
    }
    assert_eq!(again["quotient"]["product"], first["quotient"]["product"]);
}

#[test]
fn stemify_and_split() {
    let dir = TempDir::new().unwrap();
    let e = catalog(dir.path(), "e_heis_x_ab1", "q", true);
    assert_eq!(code(&awb(&["stem-check", s(&e)])), 1);
    let o = awb(&["stemify", s(&e)]);
    let stem = dir.path().join("stem.json");
    std::fs::write(&stem, &o.stdout).unwrap();
    assert_eq!(code(&awb(&["stem-check", s(&stem)])), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&awb(&["split", s(&e)]))).unwrap();
    assert_eq!(v["abelian_dim"], 1);
}

#[test]
fn parse_errors_carry_context() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("broken.json");
    std::fs::write(&f, "{\n  \"name\": \"x\",\n  \"dim\": }\n").unwrap();
    let o = awb(&["info", s(&f)]);
    assert_eq!(code(&o), 3);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("broken.json") && err.contains("line 3"), "{err}");
    let f = dir.path().join("range.json");
    std::fs::write(&f, r#"{"name":"r","field":{"kind":"prime","p":2},"dim":1,"product":[[0,0,4,1]]}"#).unwrap();
    let err = String::from_utf8_lossy(&awb(&["info", s(&f)]).stderr).into_owned();
    assert!(err.contains("product[0]"), "{err}");
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(code(&awb(&[])), 3);
    assert_eq!(code(&awb(&["no-such-command"])), 3);
    assert_eq!(code(&awb(&["--help"])), 0);
}
