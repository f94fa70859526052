use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn latpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latpoly")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn segment(dir: &Path, name: &str, len: i64) -> PathBuf {
    write(dir, name, &format!(r#"{{"format":"latpoly/1","dim":1,"vrep":{{"vertices":[[0],[{len}]]}}}}"#))
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = latpoly(&all);
    assert!(o.status.success(), "gen {args:?}: {}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn analyze_reports_blowup_failure_point() {
    let dir = TempDir::new().unwrap();
    let f = gen(dir.path(), "b.json", &["blowup", "4", "1", "3"]);
    let o = latpoly(&["analyze", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("codeg: 1"), "{text}");
    assert!(text.contains("tau: 2/1"), "{text}");
    assert!(text.contains("q_normal: false"), "{text}");
    assert!(text.contains("not 1-spanned at (1, 0, 0): shifted point (0, 1, 1)"), "{text}");
}

#[test]
fn analyze_json_is_a_report() {
    let dir = TempDir::new().unwrap();
    let f = gen(dir.path(), "s.json", &["simplex", "2", "3"]);
    let o = latpoly(&["analyze", f.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["codegree"], 2);
    assert_eq!(v["qcodegree"], "2/1");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(latpoly(&[]).status.code(), Some(1));
    assert_eq!(latpoly(&["analyze", "/definitely/missing.json"]).status.code(), Some(1));
    assert_eq!(latpoly(&["gen", "nope", "1"]).status.code(), Some(1));
    assert_eq!(latpoly(&["gen", "blowup", "2", "2", "3"]).status.code(), Some(1));
    let bad = write(dir.path(), "bad.json", "{ not json");
    assert_eq!(latpoly(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    let flat = write(dir.path(), "flat.json", r#"{"format":"latpoly/1","dim":2,"vrep":{"vertices":[[0,0],[1,0]]}}"#);
    assert_eq!(latpoly(&["analyze", flat.to_str().unwrap()]).status.code(), Some(2));
    let frac = write(dir.path(), "frac.json", r#"{"format":"latpoly/1","dim":1,"vrep":{"vertices":[[0],["1/2"]]}}"#);
    assert_eq!(latpoly(&["analyze", frac.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn cayley_build_then_detect() {
    let dir = TempDir::new().unwrap();
    let a = segment(dir.path(), "a.json", 1);
    let b = segment(dir.path(), "b.json", 2);
    let c = segment(dir.path(), "c.json", 3);
    let out = dir.path().join("cay.json");
    let o = latpoly(&[
        "cayley",
        "build",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        c.to_str().unwrap(),
        "--order",
        "1",
        "--strict",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let summands = dir.path().join("parts");
    let o = latpoly(&["cayley", "detect", out.to_str().unwrap(), "-o", summands.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("k: 2"), "{text}");
    assert!(text.contains("strict: true"), "{text}");
    let written = std::fs::read_dir(&summands).unwrap().count();
    assert_eq!(written, 3);
}

#[test]
fn cayley_build_strict_rejects_different_fans() {
    let dir = TempDir::new().unwrap();
    let a = segment(dir.path(), "a.json", 1);
    let p = write(dir.path(), "p.json", r#"{"format":"latpoly/1","dim":1,"vrep":{"vertices":[[0]]}}"#);
    let o = latpoly(&["cayley", "build", a.to_str().unwrap(), p.to_str().unwrap(), "--order", "1", "--strict"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn detect_none_for_dilated_simplex_at_order_one() {
    let dir = TempDir::new().unwrap();
    let f = gen(dir.path(), "s.json", &["simplex", "2", "3"]);
    let o = latpoly(&["cayley", "detect", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "none");
    let o = latpoly(&["cayley", "detect", f.to_str().unwrap(), "--order", "2", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["k"], 3);
}

#[test]
fn localsplit_checks_points() {
    let dir = TempDir::new().unwrap();
    let pt = write(dir.path(), "pt.json", r#"{"format":"latpoly/1","dim":0,"vrep":{"vertices":[[]]}}"#);
    let p = pt.to_str().unwrap();
    let o = latpoly(&["localsplit", p, p, p, p, p, "--order", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["expected"], "5/2");
}

#[test]
fn batch_is_deterministic_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let inputs = dir.path().join("in");
    std::fs::create_dir(&inputs).unwrap();
    gen(&inputs, "a.json", &["simplex", "1", "3"]);
    gen(&inputs, "b.json", &["blowup", "4", "1", "3"]);
    gen(&inputs, "c.json", &["lawrence", "1", "2", "3"]);
    gen(&inputs, "d.json", &["cube", "3"]);
    write(&inputs, "e.json", "{ broken");
    write(&inputs, "notes.txt", "ignored");

    let one = dir.path().join("one.json");
    let many = dir.path().join("many.json");
    let o1 = latpoly(&["batch", inputs.to_str().unwrap(), "--out", one.to_str().unwrap(), "--threads", "1"]);
    let o8 = latpoly(&["batch", inputs.to_str().unwrap(), "--out", many.to_str().unwrap(), "--threads", "8"]);
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o8.status.code(), Some(0));
    let a = std::fs::read(&one).unwrap();
    assert_eq!(a, std::fs::read(&many).unwrap());

    let v: Value = serde_json::from_slice(&a).unwrap();
    let entries = v["entries"].as_array().unwrap();
    let names: Vec<&str> = entries.iter().map(|e| e["input"].as_str().unwrap()).collect();
    assert_eq!(names, ["a.json", "b.json", "c.json", "d.json", "e.json"]);
    assert_eq!(entries[4]["error"]["exit_code"], 2);
    assert!(entries[..4].iter().all(|e| e["violations"].as_array().unwrap().is_empty()));
}

#[test]
fn gen_product_of_files() {
    let dir = TempDir::new().unwrap();
    let a = gen(dir.path(), "a.json", &["simplex", "1", "1"]);
    let b = gen(dir.path(), "b.json", &["simplex", "1", "2"]);
    let o = latpoly(&["gen", "product", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["vrep"]["vertices"].as_array().unwrap().len(), 6);
}
