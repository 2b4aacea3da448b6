use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eds-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const NON_MINIMAL: &str = r#"{"field": "Q", "chart": "normalized", "a2": "3/t^2", "a3": "2/t^3", "a4": "(3 + t^6)/t^4", "d": 1}"#;

#[test]
fn kummer_verify_example() {
    let r = json(&[
        "kummer-verify",
        "--field",
        "Q",
        "--f-coeffs",
        "0,0,1",
        "--n-max",
        "10",
    ]);
    let f = &r["findings"];
    let degrees: Vec<i64> = f["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_i64().unwrap())
        .collect();
    let want: Vec<i64> = (2..=10i64)
        .map(|n| {
            if n % 2 == 1 {
                (n * n - 1) / 2
            } else {
                (n * n - 4) / 2
            }
        })
        .collect();
    assert_eq!(degrees, want);
    assert_eq!(f["M"], serde_json::json!([]));
    assert_eq!(f["verified"], Value::Bool(true));
    assert_eq!(f["height"], "1");
    assert_eq!(
        r["version"],
        format!("eds-lab {}", env!("CARGO_PKG_VERSION"))
    );
}

#[test]
fn geography_example() {
    let r = json(&["geography", "--g", "0", "--n", "2"]);
    assert_eq!(r["findings"]["KX2"], "-1");
    assert_eq!(r["findings"]["ampleCertified"], Value::Bool(false));
    let s = json(&["geography-search", "--g", "0", "--N", "1000"]);
    assert_eq!(s["findings"]["ampleCertified"], Value::Bool(true));
}

#[test]
fn invariants_of_non_minimal_model() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "model.json", NON_MINIMAL);
    let r = json(&["invariants", "--field", "Q", "--model-file", &path]);
    let f = &r["findings"];
    assert_eq!(f["c4"], "-48*t^2");
    assert_eq!(f["c6"], "864");
    assert_eq!(
        f["minimality_gap"],
        serde_json::json!({"places": [{"handle": "t", "mult": 1}], "infinity": 0, "degree": 1})
    );
    // the section meets O where the model is not minimal
    assert_eq!(run(&["eds", "--model-file", &path]).status.code(), Some(1));
}

#[test]
fn field_conflict_and_bad_input_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "model.json", NON_MINIMAL);
    assert_eq!(
        run(&["invariants", "--field", "Fp:7", "--model-file", &path])
            .status
            .code(),
        Some(1)
    );
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"chart": "normalized", "a2": "0", "a3": "1", "a4": "t^^4"}"#,
    );
    let out = run(&["invariants", "--model-file", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr)
        .contains("a4: expected a non-negative integer exponent at byte 2"));
    assert_eq!(
        run(&["geography", "--g", "0", "--n", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["witness", "--field", "Fp:9"]).status.code(), Some(1));
    assert_eq!(run(&["witness", "--c", "0"]).status.code(), Some(1));
    assert_eq!(run(&["eds", "--bogus"]).status.code(), Some(1));
    assert_eq!(
        run(&["kummer-verify", "--field", "Fp:7", "--f-coeffs", "1/7,0,1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn findings_are_not_failures() {
    let r = json(&["witness", "--field", "Q", "--c", "1", "--n-max", "6"]);
    assert_eq!(r["findings"]["non_reduced_found"], Value::Bool(true));
    assert_eq!(r["findings"]["degree_law"], Value::Bool(true));
    assert_eq!(
        r["findings"]["routes"]["agree_at_good_places"],
        Value::Bool(true)
    );
    let dir = tempfile::tempdir().unwrap();
    let torsion = write(
        dir.path(),
        "torsion.json",
        r#"{"chart": "normalized", "a2": "0", "a3": "t", "a4": "0", "d": 1}"#,
    );
    let r = json(&["eds", "--model-file", &torsion]);
    assert_eq!(r["findings"]["torsion_order"], 3);
}

#[test]
fn skipped_indices_in_characteristic_p() {
    let r = json(&["witness", "--field", "Fp:7", "--n-max", "8"]);
    assert_eq!(r["findings"]["skipped"], serde_json::json!([7]));
    let ns: Vec<u64> = r["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["n"].as_u64().unwrap())
        .collect();
    assert_eq!(ns, vec![1, 2, 3, 4, 5, 6, 8]);
}

#[test]
fn heights_and_nodal_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(
        dir.path(),
        "w.json",
        r#"{"field": "Fp:101", "chart": "normalized", "a2": "0", "a3": "1", "a4": "t^4", "d": 1}"#,
    );
    let h = json(&["heights", "--model-file", &w, "--n-max", "5"]);
    assert_eq!(h["findings"]["ht"], "2");
    assert_eq!(h["findings"]["class_formula_holds"], Value::Bool(true));
    let n = json(&["nodal-coord", "--field", "Fp:101", "--c", "1"]);
    let recs = n["records"].as_array().unwrap();
    assert_eq!(
        recs.len() as u64,
        n["findings"]["zeros_examined"].as_u64().unwrap()
    );
    assert!(recs.iter().all(|r| r.get("coordinate").is_some()));
    let one = json(&["nodal-coord", "--field", "Fp:101", "--c", "1", "--t0", "1"]);
    assert!(one["records"][0]["note"]
        .as_str()
        .unwrap()
        .contains("smooth"));
}

#[test]
fn text_format_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt").display().to_string();
    assert!(run(&[
        "geography",
        "--g",
        "1",
        "--n",
        "5",
        "--format",
        "text",
        "--out",
        &out
    ])
    .status
    .success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("ampleCertified: true"));
    assert!(text.contains("command: geography"));
}

fn strip_timings(text: &str) -> String {
    let mut v: Value = serde_json::from_str(text).unwrap();
    v.as_object_mut().unwrap().remove("timings");
    serde_json::to_string_pretty(&v).unwrap()
}

#[test]
fn reports_replay_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let model = write(dir.path(), "m.json", NON_MINIMAL);
    let cases: Vec<Vec<String>> = vec![
        vec![
            "sample", "--field", "Fp:101", "--trials", "12", "--n-max", "6", "--seed", "99",
        ],
        vec![
            "sample", "--field", "Q", "--trials", "3", "--n-max", "4", "--seed", "5",
        ],
        vec!["witness", "--field", "Fp:7", "--n-max", "8"],
        vec!["kummer-verify", "--n-max", "6"],
        vec!["invariants", "--model-file", model.as_str()],
        vec!["geography-search", "--g", "2", "--N", "1000000"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    for (i, case) in cases.iter().enumerate() {
        let path = dir.path().join(format!("r{i}.json")).display().to_string();
        let mut args: Vec<&str> = case.iter().map(String::as_str).collect();
        args.extend(["--out", path.as_str()]);
        assert!(run(&args).status.success(), "{args:?}");
        let first = std::fs::read_to_string(&path).unwrap();
        let again = dir.path().join(format!("r{i}b.json")).display().to_string();
        let mut args2: Vec<&str> = case.iter().map(String::as_str).collect();
        args2.extend(["--out", again.as_str()]);
        assert!(run(&args2).status.success());
        assert_eq!(
            strip_timings(&first),
            strip_timings(&std::fs::read_to_string(&again).unwrap())
        );
        let r = run(&["replay", &path]);
        assert!(
            r.status.success(),
            "{case:?}: {}",
            String::from_utf8_lossy(&r.stderr)
        );
        let rep: Value = serde_json::from_slice(&r.stdout).unwrap();
        assert_eq!(rep["findings"]["identical"], Value::Bool(true));
    }
    // the model file is echoed inline, so replay survives its removal
    std::fs::remove_file(&model).unwrap();
    assert!(
        run(&["replay", &dir.path().join("r4.json").display().to_string()])
            .status
            .success()
    );
}

#[test]
fn tampered_report_is_a_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json").display().to_string();
    assert!(run(&["geography", "--g", "0", "--n", "7", "--out", &path])
        .status
        .success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["findings"]["pg"] = Value::from(5);
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    assert_eq!(run(&["replay", &path]).status.code(), Some(2));
}
