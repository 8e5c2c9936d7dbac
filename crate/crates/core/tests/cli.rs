//! The installed binary: exit codes, messages and written files.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn modrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn dim_prints_closed_forms() {
    let o = modrep(&["dim", "--algebra", "sym", "--p", "5", "--shape", "4,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "3\n");
    let o = modrep(&["dim", "--algebra", "sergeev", "--p", "5", "--shape", "3,2"]);
    assert_eq!(stdout(&o), "32\n");
}

#[test]
fn errors_have_distinct_codes_and_messages() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    let out = out.to_str().unwrap();

    let bad_shape = modrep(&["build", "--algebra", "sym", "--p", "5", "--shape", "1,1,1,1,1", "--output", out]);
    let bad_p = modrep(&["build", "--algebra", "sym", "--p", "9", "--shape", "2,1", "--output", out]);
    let no_output = modrep(&["build", "--algebra", "sym", "--p", "5", "--shape", "2,1"]);
    let codes = [bad_shape.status.code(), bad_p.status.code(), no_output.status.code()];
    assert_eq!(codes, [Some(4), Some(3), Some(5)]);
    assert!(stderr(&bad_shape).contains("invalid shape"));
    assert!(stderr(&bad_p).contains("not prime"));
    assert!(stderr(&no_output).contains("--output"));
    assert!(!Path::new(out).exists());

    let unparsable = modrep(&["dim", "--p", "5", "--shape", "2,x"]);
    assert_eq!(unparsable.status.code(), Some(4));
    let strict_needed = modrep(&["dim", "--algebra", "sergeev", "--p", "5", "--shape", "2,2,1"]);
    assert_eq!(strict_needed.status.code(), Some(4));
}

#[test]
fn build_writes_documented_schema() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let o = modrep(&["build", "--algebra", "sym", "--p", "5", "--shape", "3,2", "--output", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(doc["p"], 5);
    assert_eq!(doc["delta"], 2);
    assert_eq!(doc["lambda"], serde_json::json!([3, 2]));
    assert_eq!(doc["dim"], 5);
    assert_eq!(doc["basis"].as_array().unwrap().len(), 5);
    let s1 = doc["generators"]["s1"].as_array().unwrap();
    assert_eq!(s1.len(), 5);
    assert!(s1.iter().all(|row| row.as_array().unwrap().len() == 5));
}

#[test]
fn verify_exit_status_tracks_checks() {
    let o = modrep(&["verify", "--algebra", "sym", "--p", "5", "--trials", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 1 + 6);

    let o = modrep(&["verify", "--algebra", "sergeev", "--p", "3", "--trials", "20", "--suite"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("cross-check suite"));

    let o = modrep(&["verify", "--p", "5", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn list_and_residues() {
    let o = modrep(&["list", "--algebra", "sergeev", "--p", "5"]);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("(3,2)") && l.contains("32") && l.ends_with('M')));
    assert!(text.lines().any(|l| l.starts_with("(5)") && l.contains(" - ")));

    let o = modrep(&["list", "--p", "5", "--n", "6"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("(5,1)") && l.contains(" 6 ") && l.contains(" no ")));

    let o = modrep(&["residues", "--p", "3", "--shape", "2,1"]);
    assert_eq!(stdout(&o), "0 1\n2\n");
}
