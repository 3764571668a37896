use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seat2head"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn single_error_line(out: &Output, code: &str) {
    let stderr = String::from_utf8_lossy(&out.stderr);
    let lines: Vec<&str> = stderr.lines().collect();
    assert_eq!(lines.len(), 1, "{stderr}");
    assert!(lines[0].starts_with(&format!("error[{code}]:")), "{stderr}");
}

#[test]
fn end_to_end_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run(d, &["synth", "--duration", "120", "--rate", "50", "--out", "."]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(d.join("seat.csv").exists());

    let out = run(d, &["--model", "AHM", "transmit", "--trace", "seat.csv", "--out", "head"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(d.join("head/head.csv").exists());

    let out = run(d, &["svc", "--trace", "head/head.csv", "--out", "svc"]);
    assert!(out.status.success());
    assert!(d.join("svc/msi.csv").exists());

    let out = run(d, &["assess", "--trace", "seat.csv", "--model", "EXP", "--out", "rep"]);
    assert!(out.status.success());
    for f in ["report.json", "msi.csv", "report.svg"] {
        assert!(d.join("rep").join(f).exists(), "{f}");
    }
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("rep/report.json")).unwrap()).unwrap();
    assert_eq!(json["model_id"], "EXP");

    let out = run(d, &["compare", "--trace", "seat.csv", "--models", "EXP,NHM", "--out", "cmp"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("RC_total") && stdout.contains("NHM"));
    assert_eq!(fs::read_to_string(d.join("cmp/comparison.csv")).unwrap().lines().count(), 3);
}

#[test]
fn config_drives_run() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(run(d, &["synth", "--duration", "30", "--rate", "50"]).status.success());
    fs::write(d.join("run.json"), r#"{"trace":"seat.csv","model":"EHM","out_dir":"result","svc":{"mu_s":600}}"#).unwrap();
    let out = run(d, &["--config", "run.json", "assess"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("result/report.json")).unwrap()).unwrap();
    assert_eq!(json["model_id"], "EHM");
    assert_eq!(json["config_echo"]["svc"]["mu_s"], 600.0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    // config errors: 2
    fs::write(d.join("bad.json"), r#"{"tarce":"x.csv"}"#).unwrap();
    let out = run(d, &["--config", "bad.json", "assess"]);
    assert_eq!(out.status.code(), Some(2));
    single_error_line(&out, "config");

    let out = run(d, &["assess"]);
    assert_eq!(out.status.code(), Some(2));
    single_error_line(&out, "config");

    let out = run(d, &["--model", "XYZ", "assess"]);
    assert_eq!(out.status.code(), Some(2));
    single_error_line(&out, "usage");

    let out = run(d, &["synth", "--rate", "10", "--spec", "spec.json"]);
    assert_eq!(out.status.code(), Some(3));
    fs::write(d.join("spec.json"), r#"[{"axis":"z","kind":"sine","amplitude":1,"f0":8}]"#).unwrap();
    let out = run(d, &["synth", "--rate", "10", "--spec", "spec.json"]);
    assert_eq!(out.status.code(), Some(2));
    single_error_line(&out, "above_nyquist");

    // data errors: 3
    fs::write(d.join("jitter.csv"), "t_s,ax,ay,az,aroll,apitch,ayaw\n0,0,0,0,0,0,0\n0.0100001,0,0,0,0,0,0\n0.02,0,0,0,0,0,0\n")
        .unwrap();
    let out = run(d, &["assess", "--trace", "jitter.csv"]);
    assert_eq!(out.status.code(), Some(3));
    single_error_line(&out, "non_uniform_sampling");

    // numeric failure: 4
    fs::write(d.join("fast.json"), r#"{"duration_s":1,"sample_rate_hz":100,"model_id":"EXP","samples":100,"transmit_s":0,"assess_s":0,"wall_s":0,"realtime_factor":1e300}"#).unwrap();
    let out = run(d, &["bench", "--duration", "10", "--rate", "50", "--baseline", "fast.json"]);
    assert_eq!(out.status.code(), Some(4));
    single_error_line(&out, "numeric_failure");
}

#[test]
fn help_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for verb in ["transmit", "assess", "compare", "svc", "synth", "bench"] {
        assert!(text.contains(verb), "{verb}");
    }
}
