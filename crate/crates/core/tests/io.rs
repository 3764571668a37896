mod common;

use std::f64::consts::PI;
use std::fs;

use common::random_trace;
use seat2head::io::compare::{compare, ComparisonTable};
use seat2head::io::config::RunConfig;
use seat2head::io::report::{emit_report, load_report, parse_report, report_to_json, ReportPaths};
use seat2head::io::synth::{broadband_trace, synth_trace, SynthComponent};
use seat2head::io::trace::{load_trace, parse_trace, save_trace, trace_to_csv};
use seat2head::{
    builtin_bundle, full_assessment, full_assessment_with, rms, transmit, AssessmentConfig, Axis, Error, FrfChannelId,
    ModelId,
};

#[test]
fn trace_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seat.csv");
    let trace = random_trace(6000, 100.0, 77);
    save_trace(&path, &trace).unwrap();
    let back = load_trace(&path).unwrap();
    assert_eq!(back.sample_rate_hz(), trace.sample_rate_hz());
    for ax in Axis::ALL {
        assert_eq!(back.channel(ax), trace.channel(ax));
    }
}

#[test]
fn trace_without_comment_infers_rate() {
    let trace = random_trace(200, 256.0, 1);
    let csv = trace_to_csv(&trace);
    let stripped: String = csv.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let back = parse_trace(&stripped, "mem").unwrap();
    assert!((back.sample_rate_hz() - 256.0).abs() < 1e-9);
}

#[test]
fn sine_rms() {
    let t = synth_trace(&[SynthComponent::sine(Axis::Z, 1.0, 1.0)], 60.0, 100.0).unwrap();
    assert_eq!(t.len(), 6000);
    assert!((rms(t.channel(Axis::Z)).unwrap() - 0.5f64.sqrt()).abs() < 1e-6);
    assert_eq!(rms(t.channel(Axis::X)).unwrap(), 0.0);
}

#[test]
fn synth_is_deterministic_and_seed_sensitive() {
    let spec = |seed| vec![SynthComponent::noise(Axis::Y, 0.7, 0.1, 2.0, seed), SynthComponent::sweep(Axis::Z, 1.0, 0.1, 5.0)];
    let a = synth_trace(&spec(4), 100.0, 50.0).unwrap();
    let b = synth_trace(&spec(4), 100.0, 50.0).unwrap();
    let c = synth_trace(&spec(5), 100.0, 50.0).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.channel(Axis::Y), c.channel(Axis::Y));
    assert!((rms(a.channel(Axis::Y)).unwrap() - 0.7).abs() < 1e-12);
}

#[test]
fn synth_rejects_above_nyquist() {
    let err = synth_trace(&[SynthComponent::noise(Axis::X, 1.0, 1.0, 60.0, 0)], 10.0, 100.0).unwrap_err();
    assert!(matches!(err, Error::AboveNyquist { .. }));
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn band_noise_energy_stays_in_band() {
    // direct O(n²) DFT periodogram as the oracle
    let (fs, n) = (20.0, 2000);
    let t = synth_trace(&[SynthComponent::noise(Axis::X, 1.0, 0.1, 2.0, 9)], n as f64 / fs, fs).unwrap();
    let x = t.channel(Axis::X);
    let (mut inside, mut total) = (0.0, 0.0);
    for k in 0..=n / 2 {
        let (mut re, mut im) = (0.0, 0.0);
        for (i, v) in x.iter().enumerate() {
            let w = -2.0 * PI * (k * i % n) as f64 / n as f64;
            re += v * w.cos();
            im += v * w.sin();
        }
        let p = re * re + im * im;
        let f = k as f64 * fs / n as f64;
        total += p;
        if (0.1..=2.0).contains(&f) {
            inside += p;
        }
    }
    assert!(inside / total >= 0.99, "{}", inside / total);
}

#[test]
fn report_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let seat = broadband_trace(120.0, 50.0, 3).unwrap();
    let report = full_assessment(&seat, &builtin_bundle(ModelId::Exp)).unwrap();
    let written = emit_report(&report, &ReportPaths::in_dir(dir.path())).unwrap();

    let back = load_report(dir.path().join("report.json")).unwrap();
    assert_eq!(back.rc.total.to_bits(), report.rc.total.to_bits());
    assert_eq!(back.ms.per_axis, report.ms.per_axis);
    assert_eq!(back.msi.final_percent.to_bits(), report.msi.final_percent.to_bits());
    assert_eq!(back.msi.series_path, written.msi.series_path);

    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    for key in ["schema", "model_id", "trace", "rc", "ms", "msi", "config_echo"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["schema"], 1);
    assert!(json["rc"]["per_axis"]["ry"].is_number());
    assert!(json["msi"]["final"].is_number());

    let svg = fs::read_to_string(dir.path().join("report.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 1);
    let points = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
    assert_eq!(points.split_whitespace().count(), seat.len());

    let csv = fs::read_to_string(dir.path().join("msi.csv")).unwrap();
    assert_eq!(csv.lines().count(), seat.len() + 1);
}

#[test]
fn report_json_is_deterministic() {
    let seat = broadband_trace(60.0, 50.0, 8).unwrap();
    let bundle = builtin_bundle(ModelId::Ahm);
    let a = report_to_json(&full_assessment(&seat, &bundle).unwrap()).unwrap();
    let b = report_to_json(&full_assessment(&seat, &bundle).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn tampered_report_fails_validation() {
    let seat = broadband_trace(60.0, 50.0, 8).unwrap();
    let json = report_to_json(&full_assessment(&seat, &builtin_bundle(ModelId::Exp)).unwrap()).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
    v["rc"]["total"] = serde_json::json!(v["rc"]["total"].as_f64().unwrap() * 1.01);
    assert!(parse_report(&v.to_string()).is_err());
    let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
    v["schema"] = serde_json::json!(2);
    assert!(parse_report(&v.to_string()).is_err());
}

#[test]
fn unwritable_report_path_errors() {
    let seat = broadband_trace(20.0, 50.0, 8).unwrap();
    let report = full_assessment(&seat, &builtin_bundle(ModelId::Nhm)).unwrap();
    let paths = ReportPaths::in_dir("/nonexistent/dir/for/report");
    assert!(matches!(emit_report(&report, &paths), Err(Error::Io { .. })));
}

#[test]
fn compare_nhm_with_itself() {
    let seat = broadband_trace(60.0, 50.0, 2).unwrap();
    let cfg = AssessmentConfig::standard().unwrap();
    let nhm = builtin_bundle(ModelId::Nhm);
    let table = compare(&seat, &[nhm.clone(), nhm], &cfg).unwrap();
    assert_eq!(table.rows.len(), 2);
    assert_eq!(table.rows[0], table.rows[1]);
    assert_eq!(table.rows[0].rc_ratio_to_nhm, Some(1.0));
    assert_eq!(table.rows[0].ms_ratio_to_nhm, Some(1.0));
    assert_eq!(table.rows[0].msi_ratio_to_nhm, Some(1.0));
    assert!(compare(&seat, &[builtin_bundle(ModelId::Exp)], &cfg).is_err());
}

#[test]
fn compare_table_layout() {
    let seat = broadband_trace(60.0, 50.0, 2).unwrap();
    let bundles: Vec<_> = ModelId::ALL.iter().map(|&m| builtin_bundle(m)).collect();
    let table = compare(&seat, &bundles, &AssessmentConfig::standard().unwrap()).unwrap();
    let header = ComparisonTable::header();
    for regime in ["rc", "ms"] {
        for label in ["x", "y", "z", "rx", "ry", "rz", "total"] {
            assert!(header.contains(&format!("{regime}_{label}")));
        }
    }
    let csv = table.to_csv();
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.lines().all(|l| l.split(',').count() == header.len()));
    let pretty = table.to_pretty();
    for m in ModelId::ALL {
        assert!(pretty.contains(m.as_str()));
    }
    let nhm_row = table.rows.iter().find(|r| r.model_id == ModelId::Nhm).unwrap();
    assert_eq!(nhm_row.rc_ratio_to_nhm, Some(1.0));
}

#[test]
fn pitch_coupling_raises_rc_over_nhm() {
    let seat = broadband_trace(300.0, 50.0, 21).unwrap();
    let exp = builtin_bundle(ModelId::Exp);
    let cfg = AssessmentConfig::standard().unwrap();
    let table = compare(&seat, &[exp.clone(), builtin_bundle(ModelId::Nhm)], &cfg).unwrap();
    assert!(table.rows[0].rc_ratio_to_nhm.unwrap() > 1.0);

    // the pitch cross terms carry real energy into head pitch
    let (_, breakdown) = transmit(&seat, &exp).unwrap();
    for id in [FrfChannelId::between(Axis::Z, Axis::Pitch).unwrap(), FrfChannelId::between(Axis::X, Axis::Pitch).unwrap()] {
        assert!(rms(breakdown.contribution(id)).unwrap() > 0.0);
    }
}

#[test]
fn config_file_paths_resolve_relative_to_it() {
    let dir = tempfile::tempdir().unwrap();
    save_trace(dir.path().join("seat.csv"), &broadband_trace(30.0, 50.0, 1).unwrap()).unwrap();
    fs::write(dir.path().join("wf2.csv"), "freq_hz,magnitude\n0,1\n100,1\n").unwrap();
    fs::write(
        dir.path().join("run.json"),
        r#"{"trace":"seat.csv","model":"EHM","weighting_files":{"Flat":"wf2.csv"},
            "ms":{"axis_weighting":{"x":"Flat","y":"Flat","z":"Flat","rx":"Flat","ry":"Flat","rz":"Flat"}}}"#,
    )
    .unwrap();
    let cfg = RunConfig::load(dir.path().join("run.json")).unwrap();
    assert_eq!(cfg.trace.as_deref(), Some(dir.path().join("seat.csv").as_path()));
    let seat = load_trace(cfg.trace.as_ref().unwrap()).unwrap();
    let report = full_assessment_with(&seat, &cfg.bundle().unwrap(), &cfg.assessment_config().unwrap()).unwrap();
    assert_eq!(report.model_id, ModelId::Ehm);
    assert_eq!(report.config_echo.ms.weighting_for(Axis::Z), "Flat");

    fs::write(dir.path().join("bad.json"), r#"{"trace":"missing.csv"}"#).unwrap();
    assert_eq!(RunConfig::load(dir.path().join("bad.json")).unwrap_err().exit_code(), 2);
}
