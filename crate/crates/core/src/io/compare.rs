//! Side-by-side assessment of several human-model configurations.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::axis::Axis;
use crate::error::{Error, Result};
use crate::frf::{identity_bundle, FrfBundle, ModelId};
use crate::metrics::{full_assessment_with, AssessmentConfig, ComfortReport, RegimeResult};
use crate::transmission::MotionTrace;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub model_id: ModelId,
    pub rc: RegimeResult,
    pub ms: RegimeResult,
    pub msi_final: f64,
    /// Totals divided by the NHM totals; `None` when the NHM value is zero.
    pub rc_ratio_to_nhm: Option<f64>,
    pub ms_ratio_to_nhm: Option<f64>,
    pub msi_ratio_to_nhm: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
}

fn ratio(value: f64, reference: f64) -> Option<f64> {
    (reference > 0.0).then(|| value / reference)
}

/// Runs the full assessment for each bundle. Ratios refer to the no-human-model
/// configuration, which is computed once if not among `bundles`.
pub fn compare(trace: &MotionTrace, bundles: &[FrfBundle], config: &AssessmentConfig) -> Result<ComparisonTable> {
    if bundles.len() < 2 {
        return Err(Error::Config(format!("compare needs at least 2 models, got {}", bundles.len())));
    }
    let reports: Vec<ComfortReport> =
        bundles.iter().map(|b| full_assessment_with(trace, b, config)).collect::<Result<_>>()?;
    let reference = match reports.iter().find(|r| r.model_id == ModelId::Nhm) {
        Some(r) => r.clone(),
        None => full_assessment_with(trace, &identity_bundle(), config)?,
    };
    let rows = reports
        .into_iter()
        .map(|r| ComparisonRow {
            model_id: r.model_id,
            rc_ratio_to_nhm: ratio(r.rc.total, reference.rc.total),
            ms_ratio_to_nhm: ratio(r.ms.total, reference.ms.total),
            msi_ratio_to_nhm: ratio(r.msi.final_percent, reference.msi.final_percent),
            rc: r.rc,
            ms: r.ms,
            msi_final: r.msi.final_percent,
        })
        .collect();
    Ok(ComparisonTable { rows })
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ComparisonTable {
    pub fn header() -> Vec<String> {
        let mut h = vec!["model".to_string()];
        for regime in ["rc", "ms"] {
            h.extend(Axis::ALL.iter().map(|a| format!("{regime}_{}", a.metric_label())));
            h.push(format!("{regime}_total"));
        }
        h.extend(["msi_final", "rc_ratio_to_nhm", "ms_ratio_to_nhm", "msi_ratio_to_nhm"].map(String::from));
        h
    }

    pub fn to_csv(&self) -> String {
        let mut out = Self::header().join(",");
        out.push('\n');
        for row in &self.rows {
            let mut cells = vec![row.model_id.to_string()];
            for r in [&row.rc, &row.ms] {
                cells.extend(Axis::ALL.iter().map(|&a| r.per_axis[a].to_string()));
                cells.push(r.total.to_string());
            }
            cells.push(row.msi_final.to_string());
            cells.extend([opt(row.rc_ratio_to_nhm), opt(row.ms_ratio_to_nhm), opt(row.msi_ratio_to_nhm)]);
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Fixed-width text table, one column per model.
    pub fn to_pretty(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{:<12}", "");
        for row in &self.rows {
            let _ = write!(s, "{:>10}", row.model_id.as_str());
        }
        s.push('\n');
        for (name, pick) in [("RC", 0usize), ("MS", 1)] {
            for axis in Axis::ALL {
                let _ = write!(s, "{:<12}", format!("{name}_{}", axis.metric_label()));
                for row in &self.rows {
                    let r = if pick == 0 { &row.rc } else { &row.ms };
                    let _ = write!(s, "{:>10.3}", r.per_axis[axis]);
                }
                s.push('\n');
            }
            let _ = write!(s, "{:<12}", format!("{name}_total"));
            for row in &self.rows {
                let _ = write!(s, "{:>10.3}", if pick == 0 { row.rc.total } else { row.ms.total });
            }
            s.push('\n');
        }
        let _ = write!(s, "{:<12}", "MSI_final %");
        for row in &self.rows {
            let _ = write!(s, "{:>10.3}", row.msi_final);
        }
        s.push('\n');
        for (label, get) in [
            ("RC/NHM", (|r: &ComparisonRow| r.rc_ratio_to_nhm) as fn(&ComparisonRow) -> Option<f64>),
            ("MS/NHM", |r| r.ms_ratio_to_nhm),
            ("MSI/NHM", |r| r.msi_ratio_to_nhm),
        ] {
            let _ = write!(s, "{label:<12}");
            for row in &self.rows {
                match get(row) {
                    Some(v) => {
                        let _ = write!(s, "{v:>10.3}");
                    }
                    None => {
                        let _ = write!(s, "{:>10}", "-");
                    }
                }
            }
            s.push('\n');
        }
        s
    }
}
