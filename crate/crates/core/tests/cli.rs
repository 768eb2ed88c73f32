//! End-to-end runs of the `wpoly` binary.

use std::process::Command;

use serde_json::Value;

fn wpoly(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wpoly")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok_json(args: &[&str]) -> Value {
    let (code, out, err) = wpoly(args);
    assert_eq!(code, 0, "{args:?}: {out}{err}");
    serde_json::from_str(&out).unwrap()
}

fn len(v: &Value) -> usize {
    v.as_array().unwrap().len()
}

#[test]
fn analyze_nine_centers() {
    let expect = [("M22", 2, 2), ("M33", 3, 3), ("M44", 4, 4), ("M24", 2, 4), ("M42", 4, 2)];
    for (c, s, u) in expect {
        let v = ok_json(&["analyze", "fixtures:nine_centers", "--center", c]);
        assert_eq!((len(&v["S"]), len(&v["U"])), (s, u), "{c}");
        assert_eq!(v["maxwell"], Value::Bool(true));
        assert_eq!(len(&v["degenerate"]), 0);
    }
}

#[test]
fn analyze_is_byte_stable() {
    let a = wpoly(&["analyze", "fixtures:seed585"]);
    let b = wpoly(&["analyze", "fixtures:seed585"]);
    assert_eq!(a, b);
    assert_eq!(a.1.trim(), r#"{"S":[3],"H":[],"U":[0],"maxwell":true,"degenerate":[]}"#);
}

#[test]
fn pretty_output_is_indented() {
    let (code, out, _) = wpoly(&["--pretty", "analyze", "fixtures:regular_tetrahedron"]);
    assert_eq!(code, 0);
    assert!(out.lines().count() > 5);
    let (_, compact, _) = wpoly(&["analyze", "fixtures:regular_tetrahedron", "--json"]);
    assert_eq!(compact.lines().count(), 1);
    let a: Value = serde_json::from_str(&out).unwrap();
    let b: Value = serde_json::from_str(&compact).unwrap();
    assert_eq!(a, b);
}

#[test]
fn file_inputs_and_generation() {
    let dir = std::env::temp_dir().join(format!("wpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p86.json");
    let p = path.to_str().unwrap();
    let v = ok_json(&["generate", "--faces", "8", "--vertices", "6", "--out", p]);
    assert_eq!(v["face_vector"], serde_json::json!([8, 12, 6]));
    assert_eq!((len(&v["report"]["S"]), len(&v["report"]["U"])), (1, 1));
    let steps: Vec<&str> = v["trace"].as_array().unwrap().iter().map(|s| s["step"].as_str().unwrap()).collect();
    assert_eq!(steps[0], "seed");
    assert!(steps.contains(&"bend") && steps.contains(&"dual"));

    let a = ok_json(&["analyze", p]);
    assert_eq!((len(&a["S"]), len(&a["H"]), len(&a["U"])), (1, 0, 1));

    let d = ok_json(&["dual", p]);
    assert_eq!(len(&d["dual"]["vertices"]), 8);
    assert_eq!(len(&d["dual"]["faces"]), 6);
    assert_eq!(d["dual"]["center"], serde_json::json!([0, 0, 0]));
    let dual_path = dir.join("dual.json");
    std::fs::write(&dual_path, d["dual"].to_string()).unwrap();
    let da = ok_json(&["analyze", dual_path.to_str().unwrap()]);
    assert_eq!((len(&da["S"]), len(&da["U"])), (1, 1));

    std::fs::write(dir.join("bad.json"), r#"{"vertices": [[0,0,0]], "faces": []}"#).unwrap();
    let (code, out, _) = wpoly(&["analyze", dir.join("bad.json").to_str().unwrap()]);
    assert_eq!(code, 1);
    let e: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(e["error"]["kind"], "invalid_input");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tetrahedron_commands() {
    let s = ok_json(&["signatures", "fixtures:cycle_case_III"]);
    assert_eq!(s["vertices"][3]["signature"], serde_json::json!([2, 1]));
    assert_eq!(len(&s["edges"]), 6);

    let p = ok_json(&["obtuse-path", "fixtures:obtuse_path_demo"]);
    assert_eq!(p["paths"][0], serde_json::json!([0, 1, 2, 3]));
    let c = ok_json(&["obtuse-cycle", "fixtures:cycle_case_I"]);
    assert_eq!(c["exists"], Value::Bool(true));

    let m = ok_json(&["load-monostable", "fixtures:obtuse_path_demo", "--face", "1"]);
    assert_eq!(m["report"]["S"], serde_json::json!([1]));
    let labels: Vec<&str> = m["trace"]["cuts"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    assert_eq!(&labels[..2], ["E", "F"]);

    let u = ok_json(&["load-monounstable", "fixtures:cycle_case_III", "--cycle", "0,1,2,3"]);
    assert_eq!(u["report"]["U"], serde_json::json!([0]));
    assert!(u["trace"]["k"].as_u64().unwrap() >= 1);

    let (code, out, _) = wpoly(&["load-monostable", "fixtures:regular_tetrahedron", "--face", "0"]);
    assert_eq!(code, 1);
    assert!(out.contains("no obtuse path"));
}

#[test]
fn tipping_commands() {
    let all = ok_json(&["tip", "fixtures:obtuse_path_demo", "--all"]);
    for p in all["paths"].as_array().unwrap() {
        assert_eq!(p["terminal_face"], 3);
        assert!(len(&p["steps"]) <= 3);
    }
    let one = ok_json(&["tip", "fixtures:obtuse_path_demo", "--start-face", "1"]);
    assert_eq!(one["start_face"], 1);
    let (code, _, _) = wpoly(&["tip", "fixtures:obtuse_path_demo", "--start-face", "7"]);
    assert_eq!(code, 1);
}

#[test]
fn exit_codes() {
    assert_eq!(wpoly(&["--help"]).0, 0);
    assert_eq!(wpoly(&[]).0, 2);
    assert_eq!(wpoly(&["frobnicate"]).0, 2);
    assert_eq!(wpoly(&["analyze", "fixtures:missing"]).0, 2);
    assert_eq!(wpoly(&["analyze", "fixtures:nine_centers", "--center", "M99"]).0, 2);
    assert_eq!(wpoly(&["tip", "fixtures:seed585", "--start-face", "0", "--all"]).0, 2);
    assert_eq!(wpoly(&["generate", "--faces", "4", "--vertices", "4"]).0, 1);
    assert_eq!(wpoly(&["generate", "--faces", "7", "--vertices", "5"]).0, 1);
    assert_eq!(wpoly(&["analyze", "/nonexistent/file.json"]).0, 1);
}

#[test]
fn verify_paper_reports_every_criterion() {
    let (code, out, _) = wpoly(&["verify-paper", "--quick", "--seed", "3"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let criteria = if code == 0 { &v["criteria"] } else { &v["error"]["details"]["criteria"] };
    assert_eq!(len(criteria), 12);
    let failed = criteria.as_array().unwrap().iter().filter(|c| c["passed"] == Value::Bool(false)).count();
    assert_eq!(code == 0, failed == 0);
}
