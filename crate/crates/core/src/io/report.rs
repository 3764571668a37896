//! Report emission: JSON (authoritative), MSI CSV, and an SVG overview.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::axis::Axis;
use crate::error::{Error, Result};
use crate::metrics::ComfortReport;
use crate::svc::MsiSeries;

use super::write_atomic;

/// Output locations; `None` skips that file.
#[derive(Debug, Clone, Default)]
pub struct ReportPaths {
    pub json: PathBuf,
    pub msi_csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl ReportPaths {
    /// `report.json`, `msi.csv` and `report.svg` inside `dir`.
    pub fn in_dir(dir: impl AsRef<Path>) -> Self {
        let dir = dir.as_ref();
        ReportPaths {
            json: dir.join("report.json"),
            msi_csv: Some(dir.join("msi.csv")),
            svg: Some(dir.join("report.svg")),
        }
    }
}

/// Writes the report files and returns the report as written (with the MSI
/// series path filled in).
pub fn emit_report(report: &ComfortReport, paths: &ReportPaths) -> Result<ComfortReport> {
    let mut report = report.clone();
    if let Some(csv) = &paths.msi_csv {
        write_atomic(csv, msi_to_csv(&report.msi_series).as_bytes())?;
        report.msi.series_path = Some(csv.display().to_string());
    }
    write_atomic(&paths.json, report_to_json(&report)?.as_bytes())?;
    if let Some(svg) = &paths.svg {
        write_atomic(svg, render_svg(&report).as_bytes())?;
    }
    Ok(report)
}

pub fn report_to_json(report: &ComfortReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

/// Parses and validates a report JSON document.
pub fn parse_report(text: &str) -> Result<ComfortReport> {
    let report: ComfortReport = serde_json::from_str(text)?;
    report.validate()?;
    Ok(report)
}

pub fn load_report(path: impl AsRef<Path>) -> Result<ComfortReport> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_report(&text)
}

pub fn msi_to_csv(series: &MsiSeries) -> String {
    let mut out = String::with_capacity(series.len() * 32 + 32);
    out.push_str("time_s,msi_percent\n");
    for (t, m) in series.time_s.iter().zip(&series.msi_percent) {
        let _ = writeln!(out, "{t},{m}");
    }
    out
}

const W: f64 = 900.0;
const H: f64 = 360.0;
const PAD: f64 = 40.0;

/// Left: MSI(t) polyline. Right: per-axis RC and MS bars.
pub fn render_svg(report: &ComfortReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="11">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);

    // MSI panel
    let (px, pw, ph) = (PAD, 440.0, H - 2.0 * PAD);
    let series = &report.msi_series;
    let t_max = series.time_s.last().copied().filter(|t| *t > 0.0).unwrap_or(1.0);
    let m_max = series.msi_percent.iter().copied().fold(0.0, f64::max).max(1e-9);
    let _ = writeln!(s, r#"<text x="{px}" y="{}">MSI (%) {} final {:.3}</text>"#, PAD - 10.0, report.model_id, report.msi.final_percent);
    let _ = writeln!(s, r#"<rect x="{px}" y="{PAD}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
    s.push_str(r#"<polyline fill="none" stroke="steelblue" points=""#);
    for (t, m) in series.time_s.iter().zip(&series.msi_percent) {
        let x = px + pw * t / t_max;
        let y = PAD + ph * (1.0 - m / m_max);
        let _ = write!(s, "{x:.2},{y:.2} ");
    }
    s.push_str("\"/>\n");

    // bar panel
    let bx = px + pw + 2.0 * PAD;
    let bw = W - bx - PAD;
    let v_max = Axis::ALL
        .iter()
        .flat_map(|&a| [report.rc.per_axis[a], report.ms.per_axis[a]])
        .fold(0.0, f64::max)
        .max(1e-12);
    let _ = writeln!(s, r#"<text x="{bx}" y="{}">RC (dark) / MS (light) per axis</text>"#, PAD - 10.0);
    let slot = bw / 6.0;
    for (i, axis) in Axis::ALL.iter().enumerate() {
        let x0 = bx + i as f64 * slot;
        for (j, (v, fill)) in [(report.rc.per_axis[*axis], "#35607a"), (report.ms.per_axis[*axis], "#9cc3d8")].iter().enumerate() {
            let h = ph * v / v_max;
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{h:.2}" fill="{fill}"/>"#,
                x0 + 4.0 + j as f64 * (slot - 8.0) / 2.0,
                PAD + ph - h,
                (slot - 8.0) / 2.0
            );
        }
        let _ = writeln!(s, r#"<text x="{:.2}" y="{}">{}</text>"#, x0 + slot / 2.0 - 6.0, H - PAD + 14.0, axis.metric_label());
    }
    s.push_str("</svg>\n");
    s
}
