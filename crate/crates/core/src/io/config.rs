//! Run configuration file (JSON).
//!
//! ```json
//! {
//!   "trace": "seat.csv",
//!   "model": "EXP",
//!   "manifest": null,
//!   "frf_grid_step_hz": 0.005,
//!   "weighting_files": { "Wfx": "my_wfx.csv" },
//!   "rc": { "k_factors": { "x": 1, "y": 1, "z": 1, "rx": 0.63, "ry": 0.4, "rz": 0.2 } },
//!   "ms": {},
//!   "svc": { "tau_s": 5.0 },
//!   "out_dir": "out"
//! }
//! ```
//!
//! Relative paths resolve against the config file's directory. Every field is
//! optional.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::axis::AxisValues;
use crate::error::{Error, Result};
use crate::frf::{builtin_bundle, load_frf_bundle, uniform_grid, FrfBundle, ModelId};
use crate::metrics::AssessmentConfig;
use crate::svc::SvcParams;
use crate::weighting::{MetricRegime, WeightingCurve};

/// Resampling step applied to tabulated FRFs before use.
pub const DEFAULT_FRF_GRID_STEP_HZ: f64 = 0.005;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegimeOverride {
    pub axis_weighting: Option<AxisValues<String>>,
    pub k_factors: Option<AxisValues<f64>>,
}

impl RegimeOverride {
    fn apply(&self, mut regime: MetricRegime) -> MetricRegime {
        if let Some(w) = &self.axis_weighting {
            regime.axis_weighting = w.clone();
        }
        if let Some(k) = &self.k_factors {
            regime.k_factors = *k;
        }
        regime
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub trace: Option<PathBuf>,
    pub model: Option<ModelId>,
    pub manifest: Option<PathBuf>,
    /// `null` or `0` uses the tables as tabulated.
    pub frf_grid_step_hz: Option<f64>,
    /// Replacement curve files by weighting name (new names may be added).
    pub weighting_files: BTreeMap<String, PathBuf>,
    pub rc: RegimeOverride,
    pub ms: RegimeOverride,
    pub svc: SvcParams,
    pub out_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            trace: None,
            model: None,
            manifest: None,
            frf_grid_step_hz: Some(DEFAULT_FRF_GRID_STEP_HZ),
            weighting_files: BTreeMap::new(),
            rc: RegimeOverride::default(),
            ms: RegimeOverride::default(),
            svc: SvcParams::default(),
            out_dir: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        cfg.resolve_relative_to(base);
        cfg.validate()?;
        Ok(cfg)
    }

    fn resolve_relative_to(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        self.trace.as_mut().map(fix);
        self.manifest.as_mut().map(fix);
        self.out_dir.as_mut().map(fix);
        self.weighting_files.values_mut().for_each(fix);
    }

    pub fn validate(&self) -> Result<()> {
        let must_exist = self
            .trace
            .iter()
            .chain(self.manifest.iter())
            .chain(self.weighting_files.values());
        for p in must_exist {
            if !p.exists() {
                return Err(Error::Config(format!("referenced file {} does not exist", p.display())));
            }
        }
        if self.model.is_some() && self.manifest.is_some() {
            return Err(Error::Config("set either model or manifest, not both".into()));
        }
        if let Some(step) = self.frf_grid_step_hz {
            if !(step.is_finite() && step >= 0.0) {
                return Err(Error::Config(format!("frf_grid_step_hz must be non-negative, got {step}")));
            }
        }
        self.svc.validate()
    }

    /// The bundle named by `manifest` or `model` (default EXP), resampled onto
    /// the configured grid.
    pub fn bundle(&self) -> Result<FrfBundle> {
        let bundle = match &self.manifest {
            Some(m) => load_frf_bundle(m)?,
            None => builtin_bundle(self.model.unwrap_or(ModelId::Exp)),
        };
        self.resample(bundle)
    }

    pub fn resample(&self, bundle: FrfBundle) -> Result<FrfBundle> {
        match (self.frf_grid_step_hz, bundle.max_tabulated_hz()) {
            (Some(step), Some(fmax)) if step > 0.0 => bundle.resampled(&uniform_grid(fmax, step)),
            _ => Ok(bundle),
        }
    }

    pub fn assessment_config(&self) -> Result<AssessmentConfig> {
        let mut cfg = AssessmentConfig::standard()?;
        for (name, path) in &self.weighting_files {
            cfg.weightings.insert(WeightingCurve::load(name.clone(), path)?);
        }
        cfg.rc = self.rc.apply(cfg.rc);
        cfg.ms = self.ms.apply(cfg.ms);
        cfg.rc.validate(&cfg.weightings)?;
        cfg.ms.validate(&cfg.weightings)?;
        cfg.svc = self.svc;
        Ok(cfg)
    }
}
