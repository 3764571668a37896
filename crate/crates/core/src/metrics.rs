//! Weighted RMS comfort values per axis and their quadratic combination.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axis::{Axis, AxisValues};
use crate::error::{Error, Result};
use crate::frf::{FrfBundle, ModelId};
use crate::svc::{run_svc, MsiSeries, SvcParams};
use crate::transmission::{transmit_head, MotionTrace};
use crate::weighting::{apply_weighting, builtin_weightings, MetricRegime, WeightingRegistry};

pub const REPORT_SCHEMA: u32 = 1;

/// Root mean square: `sqrt(mean(s²))`.
pub fn rms(signal: &[f64]) -> Result<f64> {
    if signal.is_empty() {
        return Err(Error::Empty("signal"));
    }
    crate::spectral::check_finite(signal, "signal")?;
    Ok((signal.iter().map(|v| v * v).sum::<f64>() / signal.len() as f64).sqrt())
}

/// `sqrt(Σ k_i² v_i²)` over the six axes.
pub fn combine(per_axis: &AxisValues<f64>, k_factors: &AxisValues<f64>) -> Result<f64> {
    let mut sum = 0.0;
    for axis in Axis::ALL {
        let (v, k) = (per_axis[axis], k_factors[axis]);
        if !(v >= 0.0 && k >= 0.0) || !v.is_finite() || !k.is_finite() {
            return Err(Error::Negative(format!("axis {axis}: value {v}, factor {k}")));
        }
        sum += k * k * v * v;
    }
    Ok(sum.sqrt())
}

/// Per-axis weighted RMS values and their combined total.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeResult {
    pub per_axis: AxisValues<f64>,
    pub total: f64,
}

/// Weights each axis per the regime, takes the RMS, and combines.
pub fn assess(trace: &MotionTrace, regime: &MetricRegime, weightings: &WeightingRegistry) -> Result<RegimeResult> {
    regime.validate(weightings)?;
    let fs = trace.sample_rate_hz();
    let values: Vec<f64> = Axis::ALL
        .par_iter()
        .map(|&axis| {
            let curve = weightings.get(regime.weighting_for(axis))?;
            let weighted = apply_weighting(trace.channel(axis), curve, fs)?;
            rms(&weighted)
        })
        .collect::<Result<_>>()?;
    let per_axis = AxisValues(values.try_into().expect("six axes"));
    let total = combine(&per_axis, &regime.k_factors)?;
    Ok(RegimeResult { per_axis, total })
}

/// Everything that parameterizes a full assessment.
#[derive(Debug, Clone)]
pub struct AssessmentConfig {
    pub rc: MetricRegime,
    pub ms: MetricRegime,
    pub weightings: WeightingRegistry,
    pub svc: SvcParams,
}

impl AssessmentConfig {
    pub fn standard() -> Result<Self> {
        Ok(AssessmentConfig {
            rc: MetricRegime::ride_comfort(),
            ms: MetricRegime::motion_sickness(),
            weightings: builtin_weightings()?,
            svc: SvcParams::default(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceInfo {
    pub duration_s: f64,
    pub sample_rate_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MsiSummary {
    #[serde(rename = "final")]
    pub final_percent: f64,
    pub series_path: Option<String>,
}

/// Configuration echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub bundle_source: String,
    pub rc: MetricRegime,
    pub ms: MetricRegime,
    pub svc: SvcParams,
}

/// RC and MS results plus the SVC incidence for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComfortReport {
    pub schema: u32,
    pub model_id: ModelId,
    pub trace: TraceInfo,
    pub rc: RegimeResult,
    pub ms: RegimeResult,
    pub msi: MsiSummary,
    pub config_echo: ConfigEcho,
    #[serde(skip)]
    pub msi_series: MsiSeries,
}

impl ComfortReport {
    /// Checks schema version, sign, and the total/per-axis consistency.
    pub fn validate(&self) -> Result<()> {
        if self.schema != REPORT_SCHEMA {
            return Err(Error::Parse { path: "report".into(), message: format!("unsupported schema {}", self.schema) });
        }
        for (name, result, regime) in [("rc", &self.rc, &self.config_echo.rc), ("ms", &self.ms, &self.config_echo.ms)] {
            combine(&result.per_axis, &regime.k_factors)?;
            let sum: f64 = Axis::ALL.iter().map(|&a| (regime.k_factors[a] * result.per_axis[a]).powi(2)).sum();
            if (result.total * result.total - sum).abs() > 1e-12 * sum {
                return Err(Error::Numeric(format!("{name} total {} inconsistent with per-axis values", result.total)));
            }
        }
        if !(0.0..=100.0).contains(&self.msi.final_percent) {
            return Err(Error::Numeric(format!("MSI {} outside [0, 100]", self.msi.final_percent)));
        }
        Ok(())
    }
}

/// Transmits the seat trace to the head and assesses it with the standard config.
pub fn full_assessment(seat: &MotionTrace, bundle: &FrfBundle) -> Result<ComfortReport> {
    full_assessment_with(seat, bundle, &AssessmentConfig::standard()?)
}

pub fn full_assessment_with(seat: &MotionTrace, bundle: &FrfBundle, config: &AssessmentConfig) -> Result<ComfortReport> {
    let head = transmit_head(seat, bundle)?;
    assess_head(&head, bundle, config)
}

/// Assesses an already-transmitted head trace.
pub fn assess_head(head: &MotionTrace, bundle: &FrfBundle, config: &AssessmentConfig) -> Result<ComfortReport> {
    let rc = assess(head, &config.rc, &config.weightings)?;
    let ms = assess(head, &config.ms, &config.weightings)?;
    let msi_series = run_svc(head, &config.svc)?;
    Ok(ComfortReport {
        schema: REPORT_SCHEMA,
        model_id: bundle.model_id(),
        trace: TraceInfo { duration_s: head.duration_s(), sample_rate_hz: head.sample_rate_hz() },
        rc,
        ms,
        msi: MsiSummary { final_percent: msi_series.final_value(), series_path: None },
        config_echo: ConfigEcho {
            bundle_source: bundle.source().to_string(),
            rc: config.rc.clone(),
            ms: config.ms.clone(),
            svc: config.svc,
        },
        msi_series,
    })
}
