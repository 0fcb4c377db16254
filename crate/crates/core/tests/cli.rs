use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn gjacobi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gjacobi")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn expand_catalan_four_terms() {
    let o = gjacobi(&["expand", data("catalan.json").to_str().unwrap(), "--max-terms", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let pf: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let terms = pf["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 4);
    for t in terms {
        assert_eq!(t["epsilon"], 1);
        assert_eq!(t["p"], serde_json::json!(["0", "1"]));
    }
    assert_eq!(terms[0]["b_squared"], "1");
}

#[test]
fn expand_degenerate_blocks() {
    let o = gjacobi(&["expand", data("degenerate.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let pf: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let terms = pf["terms"].as_array().unwrap();
    assert_eq!(terms[0]["p"], serde_json::json!(["0", "0", "1"]));
    assert!(terms[1..].iter().all(|t| t["p"] == serde_json::json!(["0", "1"])));
    let log = String::from_utf8(o.stderr).unwrap();
    assert!(log.contains("k_j: 2,1,1,"), "{log}");
}

#[test]
fn all_zero_moments_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_temp(&dir, "zero.json", r#"{"moments":["0","0","0","0"]}"#);
    assert_eq!(gjacobi(&["expand", &path]).status.code(), Some(3));
}

#[test]
fn moments_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let original = std::fs::read_to_string(data("degenerate.json")).unwrap();
    let pf = dir.path().join("pf.json");
    let back = dir.path().join("back.json");
    let o = gjacobi(&["--out", pf.to_str().unwrap(), "expand", data("degenerate.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = gjacobi(&["--out", back.to_str().unwrap(), "moments", pf.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(back).unwrap(), original);
}

#[test]
fn pade_catalan_at_three() {
    let o = gjacobi(&[
        "--format",
        "csv",
        "pade",
        data("catalan.json").to_str().unwrap(),
        "--lambda",
        "3",
        "--orders",
        "1..12",
        "--reference",
        "sqrt-catalan",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("j,n_j,value_re,value_im,abs_error,match_order"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert_eq!(rows.len(), 12);
    let err2: f64 = rows[1][4].parse().unwrap();
    assert!((err2 - 6.966e-3).abs() < 1e-5);
    for (j, row) in rows.iter().enumerate() {
        assert_eq!(row[5], (2 * j + 1).to_string());
    }
    let log = String::from_utf8(o.stderr).unwrap();
    let ratio: f64 = log
        .split("ratio")
        .nth(1)
        .unwrap()
        .trim_start_matches([':', ' '])
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((ratio - 0.1459).abs() < 1e-3, "{log}");
}

#[test]
fn pade_pole_exits_4() {
    let o = gjacobi(&["pade", data("catalan.json").to_str().unwrap(), "--lambda", "0", "--orders", "1"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn spectrum_example() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scan.csv");
    let o = gjacobi(&[
        "--tol",
        "1e-3",
        "--out",
        csv.to_str().unwrap(),
        "spectrum",
        data("example64.json").to_str().unwrap(),
        "--period",
        "1",
        "--grid",
        "400",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let summary: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["counts"]["E_p"], 0);
    assert_eq!(summary["ep_roots"].as_array().unwrap().len(), 0);
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("re,im,label,trace_re,trace_im,w1_abs,w2_abs"));
    assert_eq!(text.lines().count(), 1 + 401 * 401);
    assert_eq!(
        text.lines().filter(|l| l.split(',').nth(2) == Some("E")).count() as u64,
        summary["counts"]["E"].as_u64().unwrap()
    );
}

#[test]
fn spectrum_period_mismatch_exits_5() {
    let dir = tempfile::tempdir().unwrap();
    let term = r#"{"epsilon":1,"b_squared":"1/4","p":["0","0","1"]}"#;
    let path = write_temp(&dir, "four.json", &format!(r#"{{"terms":[{term},{term},{term},{term}]}}"#));
    assert_eq!(gjacobi(&["spectrum", &path, "--period", "3"]).status.code(), Some(5));
}

#[test]
fn certify_catalan() {
    let o = gjacobi(&["certify", data("catalan.json").to_str().unwrap(), "--lambda", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let cert: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["verdict"], "certified_decay");
    let q = cert["q"].as_f64().unwrap();
    assert!((0.35..=0.42).contains(&q));
    assert_eq!(cert["lambda"], serde_json::json!([3.0, 0.0]));
}

#[test]
fn usage_and_io_errors_exit_2() {
    assert_eq!(gjacobi(&["expand", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(gjacobi(&["--exact", "--float", "selftest"]).status.code(), Some(2));
    assert_eq!(gjacobi(&["--tol", "-1", "selftest"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    assert_eq!(gjacobi(&["selftest"]).status.code(), Some(0));
}
