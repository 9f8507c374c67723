use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn acatlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acatlab"))
        .args(args)
        .env_remove("ACATLAB_CAPS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = acatlab(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_examples() {
    let s3 = json(&["analyze", r#"{"type":"catalog","name":"S3"}"#, "--format", "json"]);
    assert_eq!(s3["schema"], 1);
    let r = &s3["report"];
    assert_eq!((r["lower"].as_u64(), r["upper"].as_u64(), r["exact"].as_u64()), (Some(5), Some(5), Some(5)));
    assert_eq!((r["a_special"].as_u64(), r["sharpness"].as_str()), (Some(2), Some("Sharp")));

    let c45 = json(&["analyze", "C45", "--format", "json"]);
    assert_eq!(c45["report"]["upper"], 26);
    assert_eq!(c45["report"]["sharpness"], "NotSharp");
    assert!(c45["report"]["exact"].is_null());

    let c4 = json(&["analyze", "C4", "--format", "json"]);
    assert_eq!((c4["report"]["exact"].as_u64(), c4["report"]["sharpness"].as_str()), (Some(3), Some("Sharp")));

    let text = stdout(&acatlab(&["analyze", "S3"]));
    assert!(text.contains("exact              5"));
    assert!(text.contains("sharpness          Sharp"));
}

#[test]
fn analyze_reads_spec_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"type":"permutation","generators":[[2,1,3],[2,3,1]]}}"#).unwrap();
    let arg = format!("@{}", file.path().display());
    let v = json(&["analyze", &arg, "--format", "json"]);
    assert_eq!(v["report"]["order"], 6);
    assert_eq!(v["report"]["exact"], 5);

    let missing = acatlab(&["analyze", "@/definitely/not/here.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn certify_reports_absent_certificates() {
    let v = json(&["analyze", "S3", "--certify", "--format", "json"]);
    let has_cert = !v["report"]["certificate_n"].is_null();
    assert!(v["certificate"].is_string());
    if has_cert {
        assert!(v["report"]["certificate_n"].as_u64().unwrap() <= 8);
    }
    let c4 = json(&["analyze", "C4", "--certify", "--format", "json"]);
    assert!(c4["certificate"].as_str().unwrap().starts_with("not applicable"));
}

#[test]
fn survey_tables() {
    let table = stdout(&acatlab(&["survey", "--max-order", "12"]));
    let rows: Vec<&str> = table.lines().collect();
    assert_eq!(rows[0], "group\torder\tq\ta_special\tlower\tupper\tsharpness\td_p");
    let names: Vec<&str> = rows[1..].iter().map(|r| r.split('\t').next().unwrap()).collect();
    for n in 2..=12 {
        assert!(names.contains(&format!("C{n}").as_str()), "C{n}");
    }
    for name in ["S3", "D4", "D5", "D6", "Q8", "A4"] {
        assert!(names.contains(&name), "{name}");
    }

    let empty = stdout(&acatlab(&["survey", "--max-order", "1"]));
    assert_eq!(empty.lines().count(), 1);

    let thirty = stdout(&acatlab(&["survey", "--max-order", "30"]));
    let c30: Vec<&str> = thirty.lines().find(|l| l.starts_with("C30\t")).unwrap().split('\t').collect();
    assert_eq!((c30[4], c30[5]), ("9", "14"));
}

#[test]
fn output_is_deterministic() {
    let a = acatlab(&["--parallel", "1", "survey", "--max-order", "24", "--format", "json"]);
    let b = acatlab(&["--parallel", "3", "survey", "--max-order", "24", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let c = acatlab(&["--parallel", "2", "verify", "lattice", "--format", "json"]);
    let d = acatlab(&["verify", "lattice", "--format", "json"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn verify_suites() {
    let lattice = acatlab(&["verify", "lattice", "--format", "json"]);
    assert_eq!(lattice.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&lattice.stdout).unwrap();
    assert_eq!((v["schema"].as_u64(), v["passed"].as_bool()), (Some(1), Some(true)));
    assert!(v["suites"][0]["cases"].as_u64().unwrap() > 100);

    // the exit status follows the summary
    let construction = acatlab(&["verify", "construction", "--format", "json"]);
    let v: Value = serde_json::from_slice(&construction.stdout).unwrap();
    let expected = if v["passed"].as_bool().unwrap() { 0 } else { 1 };
    assert_eq!(construction.status.code(), Some(expected));
    if expected == 1 {
        assert!(!v["suites"][0]["counterexamples"].as_array().unwrap().is_empty());
    }

    let bogus = acatlab(&["verify", "bogus"]);
    assert_eq!(bogus.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bogus.stderr).contains("unknown suite"));
}

#[test]
fn exit_codes() {
    assert_eq!(acatlab(&["analyze", "nope"]).status.code(), Some(2));
    assert_eq!(acatlab(&["analyze", r#"{"type":"cayley","table":[[0,1],[1,1]]}"#]).status.code(), Some(2));
    assert_eq!(acatlab(&["analyze"]).status.code(), Some(2));
    assert_eq!(acatlab(&["--format", "xml", "analyze", "S3"]).status.code(), Some(2));

    let run = |caps: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_acatlab")).args(args).env("ACATLAB_CAPS", caps).output().unwrap()
    };
    assert_eq!(run("order=10", &["analyze", "C30"]).status.code(), Some(3));
    assert_eq!(run("order=10", &["survey", "--max-order", "30"]).status.code(), Some(3));
    assert_eq!(run("order=1000", &["analyze", "C30"]).status.code(), Some(2));
    assert_eq!(run("order=1000", &["--unsafe-caps", "analyze", "C30"]).status.code(), Some(0));
    assert_eq!(run("bogus=1", &["analyze", "C30"]).status.code(), Some(2));
}
