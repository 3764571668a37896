//! Seat-to-head transmission of 6-DOF motion.
//!
//! Each seat channel is transformed once, multiplied by the response of every
//! FRF channel it feeds, and brought back to the time domain. The head axes
//! are the sums of their contributions:
//!
//! ```text
//! x_h     = (x→x) + (pitch→x)
//! y_h     = (y→y) + (roll→y)
//! z_h     = (z→z) + (pitch→z)
//! roll_h  = (roll→roll) + (y→roll)
//! pitch_h = (pitch→pitch) + (z→pitch) + (x→pitch)
//! yaw_h   = (yaw→yaw) + (y→yaw) + (roll→yaw)
//! ```

use rayon::prelude::*;
use realfft::num_complex::Complex64;

use crate::axis::{Axis, AxisValues};
use crate::error::{Error, Result};
use crate::frf::{FrfBundle, FrfChannelId, FrfCurve};
use crate::spectral;

/// Uniformly sampled 6-DOF acceleration record.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionTrace {
    sample_rate_hz: f64,
    channels: AxisValues<Vec<f64>>,
    frame_label: String,
}

impl MotionTrace {
    pub fn new(sample_rate_hz: f64, channels: AxisValues<Vec<f64>>, frame_label: impl Into<String>) -> Result<Self> {
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(Error::InvalidTrace(format!("sample rate {sample_rate_hz} must be positive")));
        }
        let n = channels[Axis::X].len();
        if n < 2 {
            return Err(Error::InvalidTrace(format!("need at least 2 samples, got {n}")));
        }
        for (axis, ch) in channels.iter() {
            if ch.len() != n {
                return Err(Error::InvalidTrace(format!("channel {axis} has {} samples, expected {n}", ch.len())));
            }
            spectral::check_finite(ch, &format!("trace channel {axis}"))?;
        }
        Ok(MotionTrace { sample_rate_hz, channels, frame_label: frame_label.into() })
    }

    /// All-zero trace of `n` samples.
    pub fn zeros(n: usize, sample_rate_hz: f64, frame_label: &str) -> Result<Self> {
        Self::new(sample_rate_hz, AxisValues::from_fn(|_| vec![0.0; n]), frame_label)
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.channels[Axis::X].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn duration_s(&self) -> f64 {
        self.len() as f64 / self.sample_rate_hz
    }

    pub fn channel(&self, axis: Axis) -> &[f64] {
        &self.channels[axis]
    }

    pub fn channels(&self) -> &AxisValues<Vec<f64>> {
        &self.channels
    }

    pub fn frame_label(&self) -> &str {
        &self.frame_label
    }

    pub fn with_frame_label(mut self, label: impl Into<String>) -> Self {
        self.frame_label = label.into();
        self
    }

    pub fn scaled(&self, alpha: f64) -> MotionTrace {
        let channels = self.channels.map(|_, ch| ch.iter().map(|v| v * alpha).collect());
        MotionTrace { channels, ..self.clone() }
    }

    /// Copy with one channel replaced by zeros.
    pub fn without(&self, axis: Axis) -> MotionTrace {
        let mut out = self.clone();
        out.channels[axis].iter_mut().for_each(|v| *v = 0.0);
        out
    }
}

/// Per head axis, the time-domain contribution of every feeding channel.
#[derive(Debug, Clone)]
pub struct ContributionBreakdown {
    parts: AxisValues<Vec<(FrfChannelId, Vec<f64>)>>,
}

impl ContributionBreakdown {
    pub fn contributions(&self, head_axis: Axis) -> &[(FrfChannelId, Vec<f64>)] {
        &self.parts[head_axis]
    }

    pub fn contribution(&self, id: FrfChannelId) -> &[f64] {
        self.parts[id.output_axis()]
            .iter()
            .find(|(c, _)| *c == id)
            .map(|(_, v)| v.as_slice())
            .expect("every legal channel has a contribution")
    }

    /// Element-wise sum of the contributions to `head_axis`.
    pub fn total(&self, head_axis: Axis) -> Vec<f64> {
        let parts = &self.parts[head_axis];
        let mut sum = parts[0].1.clone();
        for (_, p) in &parts[1..] {
            sum.iter_mut().zip(p).for_each(|(s, v)| *s += v);
        }
        sum
    }
}

/// Filters `signal` through `curve` in the frequency domain.
///
/// Bin `k` is scaled by the curve's response at `k * sample_rate_hz / n`.
/// Warns (does not fail) if the sample rate is below twice the highest
/// tabulated frequency.
pub fn fft_apply(signal: &[f64], curve: &FrfCurve, sample_rate_hz: f64) -> Result<Vec<f64>> {
    if signal.len() < 2 {
        return Err(Error::InvalidTrace(format!("need at least 2 samples, got {}", signal.len())));
    }
    spectral::check_finite(signal, "signal")?;
    nyquist_guard(curve.max_tabulated_hz(), sample_rate_hz);
    let response = curve.response_on_bins(signal.len(), sample_rate_hz);
    Ok(spectral::filter(signal, &response))
}

fn nyquist_guard(max_tabulated_hz: Option<f64>, sample_rate_hz: f64) -> bool {
    match max_tabulated_hz {
        Some(fmax) if sample_rate_hz <= 2.0 * fmax => {
            log::warn!(
                "sample rate {sample_rate_hz} Hz does not exceed twice the highest tabulated FRF frequency \
                 {fmax} Hz; bins above the table hold its last value"
            );
            false
        }
        _ => true,
    }
}

fn is_zero(curve: &FrfCurve) -> bool {
    curve.is_constant() && curve.gain()[0] == 0.0
}

struct SeatSpectra {
    n: usize,
    spectra: AxisValues<Vec<Complex64>>,
}

impl SeatSpectra {
    fn compute(seat: &MotionTrace, bundle: &FrfBundle) -> Self {
        nyquist_guard(bundle.max_tabulated_hz(), seat.sample_rate_hz());
        let spectra: Vec<Vec<Complex64>> =
            Axis::ALL.par_iter().map(|&a| spectral::forward(seat.channel(a))).collect();
        let spectra: [Vec<Complex64>; 6] = spectra.try_into().expect("six axes");
        SeatSpectra { n: seat.len(), spectra: AxisValues(spectra) }
    }

    /// Spectrum of one channel's contribution, or `None` for a zero curve.
    fn contribution(&self, id: FrfChannelId, curve: &FrfCurve, sample_rate_hz: f64) -> Option<Vec<Complex64>> {
        if is_zero(curve) {
            return None;
        }
        let response = curve.response_on_bins(self.n, sample_rate_hz);
        Some(self.spectra[id.input_axis()].iter().zip(&response).map(|(s, h)| s * h).collect())
    }
}

/// Predicts the head trace and the per-channel contributions to it.
pub fn transmit(seat: &MotionTrace, bundle: &FrfBundle) -> Result<(MotionTrace, ContributionBreakdown)> {
    let fs = seat.sample_rate_hz();
    let n = seat.len();
    let seat_spectra = SeatSpectra::compute(seat, bundle);

    let computed: Vec<(FrfChannelId, Vec<f64>)> = FrfChannelId::LEGAL
        .par_iter()
        .map(|&id| {
            let signal = match seat_spectra.contribution(id, bundle.channel(id), fs) {
                Some(spec) => spectral::inverse(spec, n),
                None => vec![0.0; n],
            };
            (id, signal)
        })
        .collect();

    let mut parts: AxisValues<Vec<(FrfChannelId, Vec<f64>)>> = AxisValues::default();
    for head_axis in Axis::ALL {
        // diagonal term first, then the cross terms in set order
        let mut feeding: Vec<FrfChannelId> = FrfChannelId::feeding(head_axis).collect();
        feeding.sort_by_key(|c| !c.is_diagonal());
        for id in feeding {
            let (_, sig) = computed.iter().find(|(c, _)| *c == id).expect("computed above");
            parts[head_axis].push((id, sig.clone()));
        }
    }
    let breakdown = ContributionBreakdown { parts };
    let head_channels = AxisValues::from_fn(|a| breakdown.total(a));
    let head = MotionTrace::new(fs, head_channels, "head").map_err(numeric)?;
    Ok((head, breakdown))
}

/// Head trace only; contributions are summed before a single inverse
/// transform per head axis. Agrees with [`transmit`] to rounding.
pub fn transmit_head(seat: &MotionTrace, bundle: &FrfBundle) -> Result<MotionTrace> {
    let fs = seat.sample_rate_hz();
    let n = seat.len();
    let seat_spectra = SeatSpectra::compute(seat, bundle);
    let heads: Vec<Vec<f64>> = Axis::ALL
        .par_iter()
        .map(|&head_axis| {
            let mut total: Option<Vec<Complex64>> = None;
            for id in FrfChannelId::feeding(head_axis) {
                if let Some(spec) = seat_spectra.contribution(id, bundle.channel(id), fs) {
                    match total.as_mut() {
                        None => total = Some(spec),
                        Some(t) => t.iter_mut().zip(&spec).for_each(|(a, b)| *a += b),
                    }
                }
            }
            match total {
                Some(spec) => spectral::inverse(spec, n),
                None => vec![0.0; n],
            }
        })
        .collect();
    let heads: [Vec<f64>; 6] = heads.try_into().expect("six axes");
    MotionTrace::new(fs, AxisValues(heads), "head").map_err(numeric)
}

fn numeric(e: Error) -> Error {
    match e {
        Error::NonFinite(what) => Error::Numeric(format!("non-finite output in {what}")),
        other => other,
    }
}
