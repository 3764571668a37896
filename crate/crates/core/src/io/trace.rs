//! Trace CSV: `t_s,ax,ay,az,aroll,apitch,ayaw`.
//!
//! Writers prepend a `# sample_rate_hz=<rate>` comment so the rate survives a
//! round trip exactly; readers without it infer the rate from the timestamps.

use std::fmt::Write as _;
use std::path::Path;

use crate::axis::{Axis, AxisValues};
use crate::error::{Error, Result};
use crate::table::read_numeric_table;
use crate::transmission::MotionTrace;

use super::write_atomic;

pub const TRACE_HEADER: [&str; 7] = ["t_s", "ax", "ay", "az", "aroll", "apitch", "ayaw"];

/// Allowed relative deviation of any time step from the nominal step.
pub const UNIFORM_STEP_TOLERANCE: f64 = 1e-6;

pub fn load_trace(path: impl AsRef<Path>) -> Result<MotionTrace> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_trace(&text, &path.display().to_string())
}

pub fn parse_trace(text: &str, origin: &str) -> Result<MotionTrace> {
    let rows = read_numeric_table(text, origin, &TRACE_HEADER)?;
    if rows.len() < 2 {
        return Err(Error::InvalidTrace(format!("{origin}: need at least 2 rows, got {}", rows.len())));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("{origin} row {}", i + 1)));
        }
    }

    let n = rows.len();
    let t0 = rows[0][0];
    let nominal = (rows[n - 1][0] - t0) / (n - 1) as f64;
    if nominal.is_nan() || nominal <= 0.0 {
        return Err(Error::InvalidTrace(format!("{origin}: timestamps must increase")));
    }
    for (i, w) in rows.windows(2).enumerate() {
        let step = w[1][0] - w[0][0];
        if (step - nominal).abs() > UNIFORM_STEP_TOLERANCE * nominal {
            return Err(Error::NonUniformSampling { row: i + 2, step, nominal });
        }
    }

    let mut sample_rate_hz = 1.0 / nominal;
    if let Some(declared) = declared_sample_rate(text) {
        if (declared * nominal - 1.0).abs() > UNIFORM_STEP_TOLERANCE {
            return Err(Error::InvalidTrace(format!(
                "{origin}: declared sample rate {declared} Hz disagrees with timestamps ({sample_rate_hz} Hz)"
            )));
        }
        sample_rate_hz = declared;
    }

    let channels = AxisValues::from_fn(|a| rows.iter().map(|r| r[a.index() + 1]).collect());
    MotionTrace::new(sample_rate_hz, channels, "seat")
}

fn declared_sample_rate(text: &str) -> Option<f64> {
    text.lines()
        .take_while(|l| l.trim_start().starts_with('#') || l.trim().is_empty())
        .find_map(|l| l.trim_start_matches('#').trim().strip_prefix("sample_rate_hz=")?.trim().parse().ok())
}

pub fn trace_to_csv(trace: &MotionTrace) -> String {
    let fs = trace.sample_rate_hz();
    let mut out = String::with_capacity(trace.len() * 80);
    let _ = writeln!(out, "# sample_rate_hz={fs}");
    let _ = writeln!(out, "# frame={}", trace.frame_label());
    out.push_str(&TRACE_HEADER.join(","));
    out.push('\n');
    for k in 0..trace.len() {
        let _ = write!(out, "{}", k as f64 / fs);
        for axis in Axis::ALL {
            let _ = write!(out, ",{}", trace.channel(axis)[k]);
        }
        out.push('\n');
    }
    out
}

pub fn save_trace(path: impl AsRef<Path>, trace: &MotionTrace) -> Result<()> {
    write_atomic(path.as_ref(), trace_to_csv(trace).as_bytes())
}
