//! Tabulated seat-to-head frequency response functions.
//!
//! A curve stores gain and *unwrapped* phase against frequency. Between
//! tabulated points both are interpolated linearly; outside the tabulated
//! band the nearest end value is held. At 0 Hz the response is forced real
//! (phase 0) so real signals stay real after an inverse transform.
//!
//! Six sets of curves wire the seat axes to the head axes:
//!
//! | set | input | outputs              |
//! |-----|-------|----------------------|
//! | 1   | z     | z, pitch             |
//! | 2   | pitch | x, z, pitch          |
//! | 3   | roll  | y, yaw, roll         |
//! | 4   | x     | x, pitch             |
//! | 5   | y     | y, yaw, roll         |
//! | 6   | yaw   | yaw                  |

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use realfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::axis::{Axis, Unit};
use crate::error::{Error, Result};
use crate::table::read_numeric_table;

/// Tabulated complex frequency response.
#[derive(Debug, Clone, PartialEq)]
pub struct FrfCurve {
    freq_hz: Vec<f64>,
    gain: Vec<f64>,
    phase_rad: Vec<f64>,
    input_unit: Unit,
    output_unit: Unit,
}

impl FrfCurve {
    /// Builds a curve from gain and phase in radians. The phase is unwrapped.
    pub fn new(
        freq_hz: Vec<f64>,
        gain: Vec<f64>,
        mut phase_rad: Vec<f64>,
        input_unit: Unit,
        output_unit: Unit,
    ) -> Result<Self> {
        validate_frequencies(&freq_hz)?;
        if gain.len() != freq_hz.len() || phase_rad.len() != freq_hz.len() {
            return Err(Error::InvalidCurve(format!(
                "column lengths differ: {} freq, {} gain, {} phase",
                freq_hz.len(),
                gain.len(),
                phase_rad.len()
            )));
        }
        if let Some(g) = gain.iter().find(|g| !g.is_finite() || **g < 0.0) {
            return Err(Error::InvalidCurve(format!("gain {g} is not finite and non-negative")));
        }
        if phase_rad.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidCurve("non-finite phase".into()));
        }
        unwrap_phase(&mut phase_rad);
        Ok(FrfCurve { freq_hz, gain, phase_rad, input_unit, output_unit })
    }

    /// Builds a curve from gain and phase in degrees.
    pub fn from_degrees(
        freq_hz: Vec<f64>,
        gain: Vec<f64>,
        phase_deg: Vec<f64>,
        input_unit: Unit,
        output_unit: Unit,
    ) -> Result<Self> {
        let phase = phase_deg.into_iter().map(f64::to_radians).collect();
        Self::new(freq_hz, gain, phase, input_unit, output_unit)
    }

    /// Frequency-independent response.
    pub fn constant(gain: f64, phase_rad: f64, input_unit: Unit, output_unit: Unit) -> Self {
        assert!(gain.is_finite() && gain >= 0.0 && phase_rad.is_finite());
        FrfCurve { freq_hz: vec![0.0], gain: vec![gain], phase_rad: vec![phase_rad], input_unit, output_unit }
    }

    pub fn freq_hz(&self) -> &[f64] {
        &self.freq_hz
    }

    pub fn gain(&self) -> &[f64] {
        &self.gain
    }

    pub fn phase_rad(&self) -> &[f64] {
        &self.phase_rad
    }

    pub fn input_unit(&self) -> Unit {
        self.input_unit
    }

    pub fn output_unit(&self) -> Unit {
        self.output_unit
    }

    pub fn is_constant(&self) -> bool {
        self.freq_hz.len() == 1
    }

    /// Highest tabulated frequency, or `None` for constant curves.
    pub fn max_tabulated_hz(&self) -> Option<f64> {
        (!self.is_constant()).then(|| self.freq_hz[self.freq_hz.len() - 1])
    }

    pub fn gain_at(&self, f: f64) -> f64 {
        interp_hold(&self.freq_hz, &self.gain, f)
    }

    pub fn phase_at(&self, f: f64) -> f64 {
        interp_hold(&self.freq_hz, &self.phase_rad, f)
    }

    /// Complex response at `f` Hz.
    pub fn evaluate(&self, f: f64) -> Complex64 {
        let g = self.gain_at(f);
        if f == 0.0 {
            return Complex64::new(g, 0.0);
        }
        Complex64::from_polar(g, self.phase_at(f))
    }

    /// Resamples gain and unwrapped phase onto `grid`.
    pub fn interpolate(&self, grid: &[f64]) -> Result<FrfCurve> {
        if grid.is_empty() {
            return Err(Error::Empty("interpolation grid"));
        }
        validate_frequencies(grid)?;
        let gain = grid.iter().map(|&f| self.gain_at(f)).collect();
        let phase_rad = grid.iter().map(|&f| self.phase_at(f)).collect();
        FrfCurve::new(grid.to_vec(), gain, phase_rad, self.input_unit, self.output_unit)
    }

    /// Response at the bins `k * sample_rate_hz / n` for `k = 0..=n/2`.
    ///
    /// The Nyquist bin of an even-length transform is projected onto the real
    /// axis, which is what a real inverse transform does with it anyway.
    pub fn response_on_bins(&self, n: usize, sample_rate_hz: f64) -> Vec<Complex64> {
        let bins = n / 2 + 1;
        let df = sample_rate_hz / n as f64;
        let mut cursor = 0usize;
        let mut out = Vec::with_capacity(bins);
        for k in 0..bins {
            let f = k as f64 * df;
            while cursor + 1 < self.freq_hz.len() && self.freq_hz[cursor + 1] <= f {
                cursor += 1;
            }
            let (g, p) = self.sample_from(cursor, f);
            let mut h = if k == 0 { Complex64::new(g, 0.0) } else { Complex64::from_polar(g, p) };
            if n.is_multiple_of(2) && k == bins - 1 {
                h.im = 0.0;
            }
            out.push(h);
        }
        out
    }

    /// Gain and phase at `f`, given that `freq_hz[cursor] <= f` or cursor is 0.
    fn sample_from(&self, cursor: usize, f: f64) -> (f64, f64) {
        let xs = &self.freq_hz;
        if f <= xs[0] {
            return (self.gain[0], self.phase_rad[0]);
        }
        if cursor + 1 >= xs.len() {
            let last = xs.len() - 1;
            return (self.gain[last], self.phase_rad[last]);
        }
        let t = (f - xs[cursor]) / (xs[cursor + 1] - xs[cursor]);
        (
            lerp(self.gain[cursor], self.gain[cursor + 1], t),
            lerp(self.phase_rad[cursor], self.phase_rad[cursor + 1], t),
        )
    }
}

/// Free-function form of [`FrfCurve::interpolate`].
pub fn interpolate_frf(curve: &FrfCurve, grid: &[f64]) -> Result<FrfCurve> {
    curve.interpolate(grid)
}

/// Free-function form of [`FrfCurve::evaluate`].
pub fn evaluate_frf(curve: &FrfCurve, f: f64) -> Complex64 {
    curve.evaluate(f)
}

/// Uniform grid `0, step, 2*step, ...` up to and including `max_hz`.
pub fn uniform_grid(max_hz: f64, step_hz: f64) -> Vec<f64> {
    let n = (max_hz / step_hz + 1e-9).floor() as usize;
    (0..=n).map(|k| k as f64 * step_hz).collect()
}

/// Removes 2π jumps so no two adjacent samples differ by more than π.
pub fn unwrap_phase(phase: &mut [f64]) {
    for i in 1..phase.len() {
        let d = phase[i] - phase[i - 1];
        if d.abs() > PI {
            phase[i] -= 2.0 * PI * (d / (2.0 * PI)).round();
        }
    }
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + (b - a) * t
}

fn validate_frequencies(freq: &[f64]) -> Result<()> {
    if freq.is_empty() {
        return Err(Error::Empty("frequency column"));
    }
    if freq.iter().any(|f| !f.is_finite() || *f < 0.0) {
        return Err(Error::InvalidCurve("frequencies must be finite and non-negative".into()));
    }
    if let Some(i) = freq.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::NonMonotonic { path: "<curve>".into(), row: i + 2 });
    }
    Ok(())
}

/// Linear interpolation on ascending `xs`, holding the end values outside.
pub(crate) fn interp_hold(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let last = xs.len() - 1;
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[last] {
        return ys[last];
    }
    let hi = xs.partition_point(|&v| v <= x);
    let lo = hi - 1;
    lerp(ys[lo], ys[hi], (x - xs[lo]) / (xs[hi] - xs[lo]))
}

/// Parses a `freq_hz,gain,phase_deg` channel file.
pub fn parse_frf_csv(text: &str, origin: &str, input_unit: Unit, output_unit: Unit) -> Result<FrfCurve> {
    let rows = read_numeric_table(text, origin, &["freq_hz", "gain", "phase_deg"])?;
    if rows.is_empty() {
        return Err(Error::Parse { path: origin.into(), message: "no data rows".into() });
    }
    if let Some(i) = rows.windows(2).position(|w| w[1][0] <= w[0][0]) {
        // +1 for the header, +1 for the 1-based row of the second element
        return Err(Error::NonMonotonic { path: origin.into(), row: i + 2 });
    }
    let freq = rows.iter().map(|r| r[0]).collect();
    let gain = rows.iter().map(|r| r[1]).collect();
    let phase = rows.iter().map(|r| r[2]).collect();
    FrfCurve::from_degrees(freq, gain, phase, input_unit, output_unit).map_err(|e| match e {
        Error::InvalidCurve(m) => Error::InvalidCurve(format!("{origin}: {m}")),
        other => other,
    })
}

/// Human-model configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelId {
    #[serde(rename = "EXP")]
    Exp,
    #[serde(rename = "AHM")]
    Ahm,
    #[serde(rename = "EHM")]
    Ehm,
    #[serde(rename = "NHM")]
    Nhm,
}

impl ModelId {
    pub const ALL: [ModelId; 4] = [ModelId::Exp, ModelId::Ahm, ModelId::Ehm, ModelId::Nhm];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelId::Exp => "EXP",
            ModelId::Ahm => "AHM",
            ModelId::Ehm => "EHM",
            ModelId::Nhm => "NHM",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "EXP" => Ok(ModelId::Exp),
            "AHM" => Ok(ModelId::Ahm),
            "EHM" => Ok(ModelId::Ehm),
            "NHM" => Ok(ModelId::Nhm),
            other => Err(Error::Config(format!("unknown model id '{other}'"))),
        }
    }
}

/// One input→output channel of the six transfer-function sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrfChannelId {
    set_id: u8,
    input_axis: Axis,
    output_axis: Axis,
}

impl FrfChannelId {
    /// The 14 legal (set, input, output) channels.
    pub const LEGAL: [FrfChannelId; 14] = [
        FrfChannelId::raw(1, Axis::Z, Axis::Z),
        FrfChannelId::raw(1, Axis::Z, Axis::Pitch),
        FrfChannelId::raw(2, Axis::Pitch, Axis::X),
        FrfChannelId::raw(2, Axis::Pitch, Axis::Z),
        FrfChannelId::raw(2, Axis::Pitch, Axis::Pitch),
        FrfChannelId::raw(3, Axis::Roll, Axis::Y),
        FrfChannelId::raw(3, Axis::Roll, Axis::Yaw),
        FrfChannelId::raw(3, Axis::Roll, Axis::Roll),
        FrfChannelId::raw(4, Axis::X, Axis::X),
        FrfChannelId::raw(4, Axis::X, Axis::Pitch),
        FrfChannelId::raw(5, Axis::Y, Axis::Y),
        FrfChannelId::raw(5, Axis::Y, Axis::Yaw),
        FrfChannelId::raw(5, Axis::Y, Axis::Roll),
        FrfChannelId::raw(6, Axis::Yaw, Axis::Yaw),
    ];

    const fn raw(set_id: u8, input_axis: Axis, output_axis: Axis) -> Self {
        FrfChannelId { set_id, input_axis, output_axis }
    }

    pub fn new(set_id: u8, input_axis: Axis, output_axis: Axis) -> Result<Self> {
        let id = Self::raw(set_id, input_axis, output_axis);
        if Self::LEGAL.contains(&id) {
            Ok(id)
        } else {
            Err(Error::Manifest(format!("{id} is not one of the 14 legal channels")))
        }
    }

    /// Looks up the legal channel for an input/output pair.
    pub fn between(input_axis: Axis, output_axis: Axis) -> Option<Self> {
        Self::LEGAL
            .iter()
            .copied()
            .find(|c| c.input_axis == input_axis && c.output_axis == output_axis)
    }

    pub fn set_id(self) -> u8 {
        self.set_id
    }

    pub fn input_axis(self) -> Axis {
        self.input_axis
    }

    pub fn output_axis(self) -> Axis {
        self.output_axis
    }

    pub fn is_diagonal(self) -> bool {
        self.input_axis == self.output_axis
    }

    /// Channels feeding a head axis.
    pub fn feeding(output_axis: Axis) -> impl Iterator<Item = FrfChannelId> {
        Self::LEGAL.into_iter().filter(move |c| c.output_axis == output_axis)
    }
}

impl fmt::Display for FrfChannelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "set{}:{}->{}", self.set_id, self.input_axis, self.output_axis)
    }
}

/// The 14 channels of one human-model configuration.
#[derive(Debug, Clone)]
pub struct FrfBundle {
    model_id: ModelId,
    channels: BTreeMap<FrfChannelId, FrfCurve>,
    defaulted: Vec<FrfChannelId>,
    source: String,
}

impl FrfBundle {
    pub fn new(
        model_id: ModelId,
        channels: BTreeMap<FrfChannelId, FrfCurve>,
        source: impl Into<String>,
    ) -> Result<Self> {
        for id in FrfChannelId::LEGAL {
            let curve = channels
                .get(&id)
                .ok_or_else(|| Error::InvalidCurve(format!("bundle is missing channel {id}")))?;
            check_units(id, curve.input_unit(), curve.output_unit())?;
        }
        if channels.len() != FrfChannelId::LEGAL.len() {
            return Err(Error::InvalidCurve("bundle has channels outside the legal set".into()));
        }
        if model_id == ModelId::Nhm {
            for (id, curve) in &channels {
                let expect = if id.is_diagonal() { 1.0 } else { 0.0 };
                let ok = curve.is_constant()
                    && curve.gain()[0] == expect
                    && (curve.gain()[0] == 0.0 || curve.phase_rad()[0] == 0.0);
                if !ok {
                    return Err(Error::InvalidCurve(format!(
                        "NHM channel {id} must be the constant gain {expect}"
                    )));
                }
            }
        }
        Ok(FrfBundle { model_id, channels, defaulted: Vec::new(), source: source.into() })
    }

    pub fn model_id(&self) -> ModelId {
        self.model_id
    }

    /// Where the bundle came from (manifest path or builtin label).
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn channel(&self, id: FrfChannelId) -> &FrfCurve {
        &self.channels[&id]
    }

    pub fn channels(&self) -> impl Iterator<Item = (FrfChannelId, &FrfCurve)> {
        self.channels.iter().map(|(k, v)| (*k, v))
    }

    /// Cross-axis channels absent from the manifest and filled with zero.
    pub fn defaulted_channels(&self) -> &[FrfChannelId] {
        &self.defaulted
    }

    pub fn max_tabulated_hz(&self) -> Option<f64> {
        self.channels.values().filter_map(FrfCurve::max_tabulated_hz).reduce(f64::max)
    }

    /// Resamples every channel onto `grid`. Constant curves stay constant.
    pub fn resampled(&self, grid: &[f64]) -> Result<FrfBundle> {
        let mut channels = BTreeMap::new();
        for (id, curve) in &self.channels {
            let c = if curve.is_constant() { curve.clone() } else { curve.interpolate(grid)? };
            channels.insert(*id, c);
        }
        Ok(FrfBundle { channels, defaulted: self.defaulted.clone(), ..self.clone() })
    }
}

fn check_units(id: FrfChannelId, input: Unit, output: Unit) -> Result<()> {
    if input != id.input_axis().unit() || output != id.output_axis().unit() {
        return Err(Error::UnitMismatch {
            channel: id.to_string(),
            message: format!(
                "expected {} -> {}, got {input} -> {output}",
                id.input_axis().unit(),
                id.output_axis().unit()
            ),
        });
    }
    Ok(())
}

/// No human model: head motion equals seat motion.
///
/// Diagonal channels are unity, cross-axis channels are zero.
pub fn identity_bundle() -> FrfBundle {
    let channels = FrfChannelId::LEGAL
        .into_iter()
        .map(|id| {
            let gain = if id.is_diagonal() { 1.0 } else { 0.0 };
            let curve = FrfCurve::constant(gain, 0.0, id.input_axis().unit(), id.output_axis().unit());
            (id, curve)
        })
        .collect();
    FrfBundle::new(ModelId::Nhm, channels, "builtin:NHM").expect("identity bundle is valid")
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    model_id: String,
    channels: Vec<ManifestChannel>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestChannel {
    set: u8,
    #[serde(rename = "in")]
    input: String,
    out: String,
    file: String,
    in_unit: String,
    out_unit: String,
}

/// Loads a bundle from a JSON manifest; channel files resolve relative to it.
pub fn load_frf_bundle(manifest_path: impl AsRef<Path>) -> Result<FrfBundle> {
    let manifest_path = manifest_path.as_ref();
    let text = std::fs::read_to_string(manifest_path).map_err(|e| Error::io(manifest_path, e))?;
    let base = manifest_path.parent().unwrap_or_else(|| Path::new("."));
    load_bundle_with(&text, &manifest_path.display().to_string(), |file| {
        let p = base.join(file);
        std::fs::read_to_string(&p).map_err(|e| Error::io(p, e))
    })
}

/// Manifest loader parameterized over how channel files are read.
pub fn load_bundle_with(
    manifest_text: &str,
    origin: &str,
    read_file: impl Fn(&str) -> Result<String>,
) -> Result<FrfBundle> {
    let manifest: Manifest =
        serde_json::from_str(manifest_text).map_err(|e| Error::Manifest(format!("{origin}: {e}")))?;
    let model_id: ModelId =
        manifest.model_id.parse().map_err(|_| Error::Manifest(format!("unknown model_id '{}'", manifest.model_id)))?;

    let mut channels = BTreeMap::new();
    for entry in &manifest.channels {
        let input: Axis = entry.input.parse().map_err(|_| Error::Manifest(format!("bad input axis '{}'", entry.input)))?;
        let output: Axis = entry.out.parse().map_err(|_| Error::Manifest(format!("bad output axis '{}'", entry.out)))?;
        let id = FrfChannelId::new(entry.set, input, output)?;
        let in_unit: Unit = entry.in_unit.parse()?;
        let out_unit: Unit = entry.out_unit.parse()?;
        check_units(id, in_unit, out_unit)?;
        let text = read_file(&entry.file)?;
        let curve = parse_frf_csv(&text, &entry.file, in_unit, out_unit)?;
        if channels.insert(id, curve).is_some() {
            return Err(Error::Manifest(format!("channel {id} listed twice")));
        }
    }

    let mut defaulted = Vec::new();
    for id in FrfChannelId::LEGAL {
        if channels.contains_key(&id) {
            continue;
        }
        if id.is_diagonal() {
            return Err(Error::MissingDiagonal(id.to_string()));
        }
        log::warn!("{origin}: channel {id} not in manifest, using zero coupling");
        channels.insert(id, FrfCurve::constant(0.0, 0.0, id.input_axis().unit(), id.output_axis().unit()));
        defaulted.push(id);
    }

    let mut bundle = FrfBundle::new(model_id, channels, origin)?;
    bundle.defaulted = defaulted;
    Ok(bundle)
}

macro_rules! embedded_bundle {
    ($dir:literal) => {
        &[
            ("manifest.json", include_str!(concat!("../data/bundles/", $dir, "/manifest.json"))),
            ("set1_z_to_z.csv", include_str!(concat!("../data/bundles/", $dir, "/set1_z_to_z.csv"))),
            ("set1_z_to_pitch.csv", include_str!(concat!("../data/bundles/", $dir, "/set1_z_to_pitch.csv"))),
            ("set2_pitch_to_x.csv", include_str!(concat!("../data/bundles/", $dir, "/set2_pitch_to_x.csv"))),
            ("set2_pitch_to_z.csv", include_str!(concat!("../data/bundles/", $dir, "/set2_pitch_to_z.csv"))),
            ("set2_pitch_to_pitch.csv", include_str!(concat!("../data/bundles/", $dir, "/set2_pitch_to_pitch.csv"))),
            ("set3_roll_to_y.csv", include_str!(concat!("../data/bundles/", $dir, "/set3_roll_to_y.csv"))),
            ("set3_roll_to_yaw.csv", include_str!(concat!("../data/bundles/", $dir, "/set3_roll_to_yaw.csv"))),
            ("set3_roll_to_roll.csv", include_str!(concat!("../data/bundles/", $dir, "/set3_roll_to_roll.csv"))),
            ("set4_x_to_x.csv", include_str!(concat!("../data/bundles/", $dir, "/set4_x_to_x.csv"))),
            ("set4_x_to_pitch.csv", include_str!(concat!("../data/bundles/", $dir, "/set4_x_to_pitch.csv"))),
            ("set5_y_to_y.csv", include_str!(concat!("../data/bundles/", $dir, "/set5_y_to_y.csv"))),
            ("set5_y_to_yaw.csv", include_str!(concat!("../data/bundles/", $dir, "/set5_y_to_yaw.csv"))),
            ("set5_y_to_roll.csv", include_str!(concat!("../data/bundles/", $dir, "/set5_y_to_roll.csv"))),
            ("set6_yaw_to_yaw.csv", include_str!(concat!("../data/bundles/", $dir, "/set6_yaw_to_yaw.csv"))),
        ]
    };
}

const EXP_FILES: &[(&str, &str)] = embedded_bundle!("exp");
const AHM_FILES: &[(&str, &str)] = embedded_bundle!("ahm");
const EHM_FILES: &[(&str, &str)] = embedded_bundle!("ehm");

/// Bundles shipped with the crate.
///
/// EXP, AHM and EHM are SYNTHETIC fixtures (resonant diagonal channels,
/// band-pass cross-axis coupling) that follow the set-sharing pattern of the
/// real configurations: sets 2, 3 and 6 are common, sets 1, 4 and 5 differ.
/// They are not measured data. NHM is [`identity_bundle`].
pub fn builtin_bundle(model_id: ModelId) -> FrfBundle {
    let files = match model_id {
        ModelId::Nhm => return identity_bundle(),
        ModelId::Exp => EXP_FILES,
        ModelId::Ahm => AHM_FILES,
        ModelId::Ehm => EHM_FILES,
    };
    let lookup = |name: &str| -> Result<String> {
        files
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| t.to_string())
            .ok_or_else(|| Error::Manifest(format!("embedded file {name} missing")))
    };
    let origin = format!("builtin:{model_id}");
    load_bundle_with(&lookup("manifest.json").expect("embedded manifest"), &origin, lookup)
        .expect("embedded bundle is valid")
}
