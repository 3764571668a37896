//! Frequency weighting for the ride-comfort (RC) and motion-sickness (MS)
//! metric regimes.
//!
//! Weightings are applied as zero-phase magnitude curves in the frequency
//! domain. Since the metrics only use the RMS of the weighted signal, the
//! phase of the standard's causal filters does not enter the result.
//!
//! Bundled tables:
//!
//! - `Wk`, `We`, `Wf`: ISO 2631-1 weightings at one-third-octave centres.
//! - `Wfx`, `Wfy`, `Wfr`: smooth approximations of the published fore-aft,
//!   lateral and roll motion-sickness weightings. Replace them with
//!   authoritative tables through a weighting override when available.
//! - `Unity`: no weighting.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use realfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::axis::{Axis, AxisValues};
use crate::error::{Error, Result};
use crate::frf::interp_hold;
use crate::spectral;
use crate::table::read_numeric_table;

pub const BUILTIN_NAMES: [&str; 7] = ["Wk", "We", "Wf", "Wfx", "Wfy", "Wfr", "Unity"];

const BUILTIN_TABLES: [(&str, &str); 6] = [
    ("Wk", include_str!("../data/weighting/wk.csv")),
    ("We", include_str!("../data/weighting/we.csv")),
    ("Wf", include_str!("../data/weighting/wf.csv")),
    ("Wfx", include_str!("../data/weighting/wfx.csv")),
    ("Wfy", include_str!("../data/weighting/wfy.csv")),
    ("Wfr", include_str!("../data/weighting/wfr.csv")),
];

/// Unitless magnitude weighting against frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightingCurve {
    name: String,
    freq_hz: Vec<f64>,
    magnitude: Vec<f64>,
}

impl WeightingCurve {
    pub fn new(name: impl Into<String>, freq_hz: Vec<f64>, magnitude: Vec<f64>) -> Result<Self> {
        let name = name.into();
        if freq_hz.is_empty() {
            return Err(Error::Empty("weighting frequency column"));
        }
        if freq_hz.len() != magnitude.len() {
            return Err(Error::InvalidCurve(format!("{name}: column lengths differ")));
        }
        if freq_hz.iter().any(|f| !f.is_finite() || *f < 0.0) {
            return Err(Error::InvalidCurve(format!("{name}: frequencies must be finite and non-negative")));
        }
        if let Some(i) = freq_hz.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::NonMonotonic { path: name, row: i + 2 });
        }
        if magnitude.iter().any(|m| !m.is_finite() || *m < 0.0) {
            return Err(Error::InvalidCurve(format!("{name}: magnitudes must be finite and non-negative")));
        }
        Ok(WeightingCurve { name, freq_hz, magnitude })
    }

    pub fn unity() -> Self {
        WeightingCurve { name: "Unity".into(), freq_hz: vec![0.0], magnitude: vec![1.0] }
    }

    /// Parses a `freq_hz,magnitude` table.
    pub fn from_csv(name: impl Into<String>, text: &str, origin: &str) -> Result<Self> {
        let rows = read_numeric_table(text, origin, &["freq_hz", "magnitude"])?;
        let freq = rows.iter().map(|r| r[0]).collect();
        let mag = rows.iter().map(|r| r[1]).collect();
        Self::new(name, freq, mag)
    }

    pub fn load(name: impl Into<String>, path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv(name, &text, &path.display().to_string())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn freq_hz(&self) -> &[f64] {
        &self.freq_hz
    }

    pub fn magnitude(&self) -> &[f64] {
        &self.magnitude
    }

    /// Linear interpolation, holding the end values outside the table.
    pub fn magnitude_at(&self, f: f64) -> f64 {
        interp_hold(&self.freq_hz, &self.magnitude, f)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.magnitude.iter().copied().fold(0.0, f64::max)
    }

    fn response_on_bins(&self, n: usize, sample_rate_hz: f64) -> Vec<Complex64> {
        let df = sample_rate_hz / n as f64;
        (0..=n / 2).map(|k| Complex64::new(self.magnitude_at(k as f64 * df), 0.0)).collect()
    }
}

/// Weights `signal` by `curve` with zero phase. An all-ones curve returns
/// the signal unchanged.
pub fn apply_weighting(signal: &[f64], curve: &WeightingCurve, sample_rate_hz: f64) -> Result<Vec<f64>> {
    if signal.len() < 2 {
        return Err(Error::InvalidTrace(format!("need at least 2 samples, got {}", signal.len())));
    }
    spectral::check_finite(signal, "signal")?;
    if curve.magnitude.iter().all(|m| *m == 1.0) {
        return Ok(signal.to_vec());
    }
    let response = curve.response_on_bins(signal.len(), sample_rate_hz);
    Ok(spectral::filter(signal, &response))
}

/// Named weighting curves.
#[derive(Debug, Clone)]
pub struct WeightingRegistry {
    curves: BTreeMap<String, WeightingCurve>,
}

impl WeightingRegistry {
    pub fn get(&self, name: &str) -> Result<&WeightingCurve> {
        self.curves.get(name).ok_or_else(|| Error::Config(format!("unknown weighting '{name}'")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.curves.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// Adds or replaces a curve under its own name.
    pub fn insert(&mut self, curve: WeightingCurve) {
        self.curves.insert(curve.name.clone(), curve);
    }
}

/// The seven bundled weightings.
pub fn builtin_weightings() -> Result<WeightingRegistry> {
    let mut curves = BTreeMap::new();
    for (name, text) in BUILTIN_TABLES {
        curves.insert(name.to_string(), WeightingCurve::from_csv(name, text, &format!("builtin:{name}"))?);
    }
    curves.insert("Unity".to_string(), WeightingCurve::unity());
    Ok(WeightingRegistry { curves })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegimeKind {
    #[serde(rename = "RC")]
    RideComfort,
    #[serde(rename = "MS")]
    MotionSickness,
}

impl fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegimeKind::RideComfort => "RC",
            RegimeKind::MotionSickness => "MS",
        })
    }
}

/// Which curve weights each axis and how the axes combine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRegime {
    pub kind: RegimeKind,
    pub axis_weighting: AxisValues<String>,
    pub k_factors: AxisValues<f64>,
}

/// Axis multiplying factors `{x: 1, y: 1, z: 1, rx: 0.63, ry: 0.4, rz: 0.2}`.
pub const DEFAULT_K_FACTORS: AxisValues<f64> = AxisValues([1.0, 1.0, 1.0, 0.63, 0.4, 0.2]);

impl MetricRegime {
    /// Unweighted x and y, Wk vertical, We rotations.
    pub fn ride_comfort() -> Self {
        let names = ["Unity", "Unity", "Wk", "We", "We", "We"];
        MetricRegime {
            kind: RegimeKind::RideComfort,
            axis_weighting: AxisValues(names.map(String::from)),
            k_factors: DEFAULT_K_FACTORS,
        }
    }

    /// Wfx, Wfy, Wf translations and Wfr rotations.
    pub fn motion_sickness() -> Self {
        let names = ["Wfx", "Wfy", "Wf", "Wfr", "Wfr", "Wfr"];
        MetricRegime {
            kind: RegimeKind::MotionSickness,
            axis_weighting: AxisValues(names.map(String::from)),
            k_factors: DEFAULT_K_FACTORS,
        }
    }

    /// Unweighted axes with unit factors: the total is the plain 6-axis RMS norm.
    pub fn unity(kind: RegimeKind) -> Self {
        MetricRegime {
            kind,
            axis_weighting: AxisValues::from_fn(|_| "Unity".to_string()),
            k_factors: AxisValues([1.0; 6]),
        }
    }

    pub fn weighting_for(&self, axis: Axis) -> &str {
        &self.axis_weighting[axis]
    }

    pub fn validate(&self, registry: &WeightingRegistry) -> Result<()> {
        for (axis, name) in self.axis_weighting.iter() {
            registry.get(name).map_err(|_| Error::Config(format!("{} axis {axis}: unknown weighting '{name}'", self.kind)))?;
        }
        for (axis, k) in self.k_factors.iter() {
            if !(k.is_finite() && *k >= 0.0) {
                return Err(Error::Config(format!("{} k-factor for {axis} must be non-negative", self.kind)));
            }
        }
        Ok(())
    }
}
