//! Deterministic synthetic seat traces for fixtures and benchmarks.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::axis::{Axis, AxisValues};
use crate::error::{Error, Result};
use crate::spectral;
use crate::transmission::MotionTrace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SynthKind {
    /// `amplitude · sin(2π f0 t)`
    Sine,
    /// Linear chirp from `f0` to `f1` over the trace, peak `amplitude`.
    Sweep,
    /// Gaussian noise restricted to `[f0, f1]`, scaled to RMS `amplitude`.
    Noise,
}

/// One additive component on one axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthComponent {
    #[serde(with = "axis_name")]
    pub axis: Axis,
    pub kind: SynthKind,
    pub amplitude: f64,
    pub f0: f64,
    #[serde(default)]
    pub f1: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

impl SynthComponent {
    pub fn sine(axis: Axis, amplitude: f64, f0: f64) -> Self {
        SynthComponent { axis, kind: SynthKind::Sine, amplitude, f0, f1: None, seed: 0 }
    }

    pub fn sweep(axis: Axis, amplitude: f64, f0: f64, f1: f64) -> Self {
        SynthComponent { axis, kind: SynthKind::Sweep, amplitude, f0, f1: Some(f1), seed: 0 }
    }

    pub fn noise(axis: Axis, rms: f64, f0: f64, f1: f64, seed: u64) -> Self {
        SynthComponent { axis, kind: SynthKind::Noise, amplitude: rms, f0, f1: Some(f1), seed }
    }
}

mod axis_name {
    use super::Axis;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(axis: &Axis, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(axis.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Axis, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn synth_trace(components: &[SynthComponent], duration_s: f64, sample_rate_hz: f64) -> Result<MotionTrace> {
    if !(duration_s > 0.0 && sample_rate_hz > 0.0) || !duration_s.is_finite() || !sample_rate_hz.is_finite() {
        return Err(Error::Config("duration and sample rate must be positive".into()));
    }
    let n = (duration_s * sample_rate_hz).round() as usize;
    let nyquist = sample_rate_hz / 2.0;
    let mut channels: AxisValues<Vec<f64>> = AxisValues::from_fn(|_| vec![0.0; n]);
    for c in components {
        let f1 = c.f1.unwrap_or(c.f0);
        if !(c.amplitude >= 0.0 && c.f0 >= 0.0 && f1 >= c.f0) {
            return Err(Error::Config(format!("{:?} component on {}: need amplitude >= 0 and 0 <= f0 <= f1", c.kind, c.axis)));
        }
        if f1 > nyquist {
            return Err(Error::AboveNyquist { what: format!("{:?} component on {}", c.kind, c.axis), freq_hz: f1, nyquist_hz: nyquist });
        }
        let signal = match c.kind {
            SynthKind::Sine => (0..n).map(|k| c.amplitude * (2.0 * PI * c.f0 * k as f64 / sample_rate_hz).sin()).collect(),
            SynthKind::Sweep => {
                let rate = (f1 - c.f0) / (n as f64 / sample_rate_hz);
                (0..n)
                    .map(|k| {
                        let t = k as f64 / sample_rate_hz;
                        c.amplitude * (2.0 * PI * (c.f0 * t + 0.5 * rate * t * t)).sin()
                    })
                    .collect()
            }
            SynthKind::Noise => band_noise(n, sample_rate_hz, c.f0, f1, c.amplitude, c.seed)?,
        };
        channels[c.axis].iter_mut().zip(signal).for_each(|(a, b): (&mut f64, f64)| *a += b);
    }
    MotionTrace::new(sample_rate_hz, channels, "seat")
}

fn band_noise(n: usize, fs: f64, f0: f64, f1: f64, rms: f64, seed: u64) -> Result<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let white: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let mut spectrum = spectral::forward(&white);
    let df = fs / n as f64;
    for (k, bin) in spectrum.iter_mut().enumerate() {
        let f = k as f64 * df;
        if f < f0 || f > f1 {
            *bin = Default::default();
        }
    }
    let band = spectral::inverse(spectrum, n);
    let current = (band.iter().map(|v| v * v).sum::<f64>() / n as f64).sqrt();
    if current == 0.0 {
        return Err(Error::Config(format!("noise band [{f0}, {f1}] Hz contains no frequency bins")));
    }
    Ok(band.into_iter().map(|v| v * rms / current).collect())
}

/// Broadband noise on every axis: 1 m/s² RMS translational, 0.3 rad/s² rotational.
pub fn broadband_trace(duration_s: f64, sample_rate_hz: f64, seed: u64) -> Result<MotionTrace> {
    let f1 = (sample_rate_hz / 2.0).min(20.0);
    let comps: Vec<SynthComponent> = Axis::ALL
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let level = if a.is_rotational() { 0.3 } else { 1.0 };
            SynthComponent::noise(a, level, 0.05, f1, seed.wrapping_add(i as u64))
        })
        .collect();
    synth_trace(&comps, duration_s, sample_rate_hz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::rms;

    #[test]
    fn sine_rms() {
        let t = synth_trace(&[SynthComponent::sine(Axis::Z, 1.0, 1.0)], 60.0, 100.0).unwrap();
        assert_eq!(t.len(), 6000);
        assert!((rms(t.channel(Axis::Z)).unwrap() - 0.5f64.sqrt()).abs() < 1e-6);
        assert!(t.channel(Axis::X).iter().all(|v| *v == 0.0));
    }

    #[test]
    fn deterministic_given_seed() {
        let c = [SynthComponent::noise(Axis::Y, 0.5, 0.1, 2.0, 42)];
        let a = synth_trace(&c, 30.0, 50.0).unwrap();
        let b = synth_trace(&c, 30.0, 50.0).unwrap();
        assert_eq!(a, b);
        let other = synth_trace(&[SynthComponent::noise(Axis::Y, 0.5, 0.1, 2.0, 43)], 30.0, 50.0).unwrap();
        assert_ne!(a, other);
        assert!((rms(a.channel(Axis::Y)).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn above_nyquist_rejected() {
        let err = synth_trace(&[SynthComponent::noise(Axis::X, 1.0, 1.0, 60.0, 0)], 10.0, 100.0).unwrap_err();
        assert_eq!(err.code(), "above_nyquist");
        assert!(synth_trace(&[SynthComponent::sweep(Axis::X, 1.0, 5.0, 1.0)], 10.0, 100.0).is_err());
    }

    #[test]
    fn component_json() {
        let c: SynthComponent =
            serde_json::from_str(r#"{"axis":"pitch","kind":"noise","amplitude":0.2,"f0":0.1,"f1":5,"seed":3}"#).unwrap();
        assert_eq!(c, SynthComponent::noise(Axis::Pitch, 0.2, 0.1, 5.0, 3));
        let s: SynthComponent = serde_json::from_str(r#"{"axis":"z","kind":"sine","amplitude":1,"f0":2}"#).unwrap();
        assert_eq!(s, SynthComponent::sine(Axis::Z, 1.0, 2.0));
    }
}
