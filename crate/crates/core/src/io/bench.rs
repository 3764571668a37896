//! Wall-clock timing of the transmission + assessment pipeline.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::frf::FrfBundle;
use crate::metrics::assess;
use crate::transmission::transmit_head;
use crate::weighting::{builtin_weightings, MetricRegime};

use super::synth::broadband_trace;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub model_id: String,
    pub duration_s: f64,
    pub sample_rate_hz: f64,
    pub samples: usize,
    pub transmit_s: f64,
    pub assess_s: f64,
    pub wall_s: f64,
    /// Simulated duration over wall time.
    pub realtime_factor: f64,
}

/// Times transmit + RC + MS assessment on a broadband synthetic trace.
/// Trace synthesis is not timed.
pub fn benchmark(duration_s: f64, sample_rate_hz: f64, bundle: &FrfBundle) -> Result<BenchReport> {
    let seat = broadband_trace(duration_s, sample_rate_hz, 2023)?;
    let weightings = builtin_weightings()?;
    let (rc, ms) = (MetricRegime::ride_comfort(), MetricRegime::motion_sickness());

    let start = Instant::now();
    let head = transmit_head(&seat, bundle)?;
    let transmit_s = start.elapsed().as_secs_f64();
    let a = Instant::now();
    assess(&head, &rc, &weightings)?;
    assess(&head, &ms, &weightings)?;
    let assess_s = a.elapsed().as_secs_f64();
    let wall_s = start.elapsed().as_secs_f64();

    let simulated = seat.duration_s();
    Ok(BenchReport {
        model_id: bundle.model_id().to_string(),
        duration_s: simulated,
        sample_rate_hz,
        samples: seat.len(),
        transmit_s,
        assess_s,
        wall_s,
        realtime_factor: simulated / wall_s.max(1e-12),
    })
}
