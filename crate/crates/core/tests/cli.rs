// End-to-end runs of the `petty` binary: exit codes, JSON output and figures.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn petty(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_petty")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn scenario(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn result(stdout: &str) -> Value {
    let v: Value = serde_json::from_str(stdout).unwrap();
    v["result"].clone()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn verify_accepts_the_l1_four_point_set() {
    let (code, out, _) = petty(&["verify", "--scenario", &scenario("l1_four_points.json")]);
    assert_eq!(code, 0);
    let r = result(&out);
    assert_eq!(r["valid"], true);
    assert_eq!(r["exact"]["p"], "2");
}

#[test]
fn verify_rejects_a_non_equilateral_set_with_exit_2() {
    let (code, out, _) = petty(&[
        "verify",
        "--norm",
        r#"{"type": "lp", "p": 2, "dim": 2}"#,
        "--points",
        "[[0, 0], [1, 0], [0, 1]]",
    ]);
    assert_eq!(code, 2);
    assert_eq!(result(&out)["valid"], false);
}

#[test]
fn malformed_input_exits_1() {
    let (code, _, err) = petty(&["verify", "--scenario", "/definitely/not/here.json"]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot read"));
    let (code, _, _) = petty(&["verify", "--norm", r#"{"type": "lp", "p": 0.5, "dim": 2}"#, "--points", "[[0,0],[1,0]]"]);
    assert_eq!(code, 1);
    let (code, _, _) = petty(&["verify", "--norm", "{not json", "--points", "[[0,0]]"]);
    assert_eq!(code, 1);
    let (code, _, _) = petty(&["circumcircle", "--norm", r#"{"type": "lp", "p": 2, "dim": 2}"#, "--points", "[[0,0],[1,0],[5,5]]"]);
    assert_eq!(code, 1);
}

#[test]
fn extend_numeric_finds_no_fifth_l1_point() {
    let (code, out, _) = petty(&["extend-numeric", "--scenario", &scenario("l1_four_points.json")]);
    assert_eq!(code, 2);
    assert_eq!(result(&out)["status"], "not-found");
}

#[test]
fn extend3_gives_a_fourth_point() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("sweep.svg");
    let json = dir.path().join("out.json");
    let (code, _, err) = petty(&[
        "extend3",
        "--scenario",
        &scenario("l3_triangle_3d.json"),
        "--json",
        json.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let r = result(&std::fs::read_to_string(&json).unwrap());
    let d = floats(&r["d"]);
    let y = 0.875f64.powf(1.0 / 3.0);
    let l3 = |x: &[f64], z: &[f64]| x.iter().zip(z).map(|(a, b)| (a - b).abs().powi(3)).sum::<f64>().cbrt();
    for x in [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, y, 0.0]] {
        assert!((l3(&d, &x) - 1.0).abs() < 1e-8, "{d:?}");
    }
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg"));
}

#[test]
fn extend3_handles_the_max_norm_through_smoothing() {
    let (code, out, err) = petty(&["extend3", "--scenario", &scenario("linf_triangle_3d.json")]);
    assert_eq!(code, 0, "{err}");
    let r = result(&out);
    let d = floats(&r["d"]);
    let linf = |x: &[f64], z: &[f64]| x.iter().zip(z).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    for x in [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]] {
        assert!((linf(&d, &x) - 1.0).abs() < 1e-4, "{d:?}");
    }
}

#[test]
fn circumcircle_figure_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| -> (Value, String) {
        let svg: PathBuf = dir.path().join(name);
        let (code, out, err) = petty(&["circumcircle", "--scenario", &scenario("hexagon_triple.json"), "--svg", svg.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
        (result(&out), std::fs::read_to_string(svg).unwrap())
    };
    let (r1, s1) = run("a.svg");
    let (r2, s2) = run("b.svg");
    assert_eq!(r1, r2);
    assert_eq!(s1, s2);
    assert!(r1["radius"].as_f64().unwrap() <= r1["p"].as_f64().unwrap());
    assert!(s1.starts_with("<?xml") && s1.trim_end().ends_with("</svg>"));
}

#[test]
fn certificates_round_trip_through_audit() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let (code, _, err) = petty(&["certify-l1", "--n", "5", "--json", cert.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = petty(&["audit-cert", "--cert", cert.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(result(&out)["audit"]["verdict"], "maximal");

    // extendable control: exit 2, and the audit re-checks the witness
    let (code, _, _) = petty(&["certify-l1", "--points", "[[0,0],[2,0],[1,1]]", "--p", "2", "--json", cert.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, out, _) = petty(&["audit-cert", "--cert", cert.to_str().unwrap()]);
    assert_eq!(code, 0);
    let audit = &result(&out)["audit"];
    assert_eq!(audit["verdict"], "extendable");
    assert_eq!(audit["witnesses_checked"], 1);

    // a tampered witness is caught
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["result"]["witnesses"][0], serde_json::json!(["1", "-1"]));
    v["result"]["witnesses"][0][0] = Value::String("7/3".into());
    std::fs::write(&cert, serde_json::to_string(&v).unwrap()).unwrap();
    let (code, _, _) = petty(&["audit-cert", "--cert", cert.to_str().unwrap()]);
    assert_ne!(code, 0);
}

#[test]
fn diff_vertices_certifies_a_triangle() {
    let (code, out, err) = petty(&["diff-vertices", "--points", r#"[["0","0"],["3","1/2"],["-1","2"]]"#]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(result(&out)["audited_pairs"], 6);
}

#[test]
fn vertex_certificates_audit_under_either_command_name() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("vertices.json");
    let points = r#"[["0","0","0"],["1","0","0"],["0","2","0"],["1/3","1/3","1"]]"#;
    for name in ["diff-vertices", "lemma7"] {
        let (code, _, err) = petty(&[name, "--points", points, "--json", cert.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
        let (code, out, _) = petty(&["audit-cert", "--cert", cert.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(result(&out)["kind"], "vertex");
        assert_eq!(result(&out)["audited_pairs"], 12);
    }
    // collinear points are rejected as input
    let (code, _, _) = petty(&["diff-vertices", "--points", "[[0,0],[1,1],[2,2]]"]);
    assert_eq!(code, 1);
}

#[test]
fn generate_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cube.json");
    let (code, _, _) = petty(&["generate", "--kind", "linf-cube", "--n", "3", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let set = &v["result"]["set"];
    assert_eq!(set["points"].as_array().unwrap().len(), 8);
    let norm = serde_json::to_string(&set["norm"]).unwrap();
    let points = serde_json::to_string(&set["exact"]).unwrap();
    let (code, out, _) = petty(&["verify", "--norm", &norm, "--points", &points]);
    assert_eq!(code, 0);
    assert_eq!(result(&out)["exact"]["p"], "1");
}

#[test]
fn smoothed_norm_reloads_bit_identically() {
    let (code, out, err) = petty(&[
        "smooth",
        "--norm",
        r#"{"type": "lp", "p": 1, "dim": 3}"#,
        "--points",
        "[[1, 0, 0], [0, 1, 0]]",
        "--epsilon",
        "0.125",
        "--samples",
        "2000",
    ]);
    assert_eq!(code, 0, "{err}");
    let r = result(&out);
    let norm = r["norm"].clone();
    assert_eq!(norm["type"], "smoothed");
    let spec: petty::NormSpec = serde_json::from_value(norm.clone()).unwrap();
    assert_eq!(serde_json::to_value(&spec).unwrap(), norm);
    for a in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]] {
        assert!((spec.eval(&a) - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn quick_reproduction_writes_a_summary() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, err) = petty(&["reproduce-all", "--quick", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{out}\n{err}");
    let summary: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["rows"].as_array().unwrap().len(), 10);
    assert_eq!(summary["all_pass"], true);
    let drift = summary["config_drift"].as_array().unwrap();
    assert!(drift.iter().any(|d| d.as_str().unwrap().contains("scaled")));
    assert!(std::fs::read_to_string(dir.path().join("summary.md")).unwrap().contains("| 10 |"));
}
