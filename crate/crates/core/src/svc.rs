//! Subjective-vertical-conflict (SVC) motion sickness incidence.
//!
//! The sensed specific force is the head's linear acceleration plus gravity
//! seen in the head frame. The internal estimate of the vertical follows the
//! sensed force through a first-order lag. The magnitude of their difference
//! is the conflict, which passes through a Hill function and accumulates
//! slowly into the incidence percentage:
//!
//! ```text
//! f      = a_head + g · (−sin θ, sin φ cos θ, cos φ cos θ)
//! dv/dt  = (f − v) / tau
//! c      = |f − v|
//! h      = cⁿ / (bⁿ + cⁿ)
//! dy1/dt = h · (1 − y1) / mu
//! dy2/dt = (y1 − y2) / mu
//! MSI    = 100 · y2
//! ```
//!
//! Head roll φ and pitch θ come from integrating the rotational accelerations
//! twice, each integrator leaking with a 30 s time constant so angle drift from
//! acceleration-only inputs stays bounded.
//!
//! The first accumulator saturates at 1 and the second follows it from below,
//! so MSI is bounded by 100 % and never decreases. Integration is explicit
//! Euler at the trace sample rate (optionally with sub-steps).

use serde::{Deserialize, Serialize};

use crate::axis::Axis;
use crate::error::{Error, Result};
use crate::transmission::MotionTrace;

/// Model constants. All are strictly positive; `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SvcParams {
    /// Subjective-vertical lag (s).
    pub tau_s: f64,
    /// Conflict giving half-saturation of the Hill function (m/s²).
    pub b: f64,
    /// Hill exponent.
    pub n: f64,
    /// Accumulator time constant (s).
    pub mu_s: f64,
    /// Gravity magnitude (m/s²).
    pub g: f64,
    /// Leak time constant of the orientation integrators (s).
    pub orientation_leak_s: f64,
}

impl Default for SvcParams {
    fn default() -> Self {
        SvcParams { tau_s: 5.0, b: 0.5, n: 2.0, mu_s: 720.0, g: 9.81, orientation_leak_s: 30.0 }
    }
}

impl SvcParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("tau_s", self.tau_s),
            ("b", self.b),
            ("n", self.n),
            ("mu_s", self.mu_s),
            ("g", self.g),
            ("orientation_leak_s", self.orientation_leak_s),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("svc parameter {name} must be positive, got {v}")));
            }
        }
        if self.n < 1.0 {
            return Err(Error::Config(format!("svc Hill exponent must be >= 1, got {}", self.n)));
        }
        Ok(())
    }
}

/// MSI percentage at each trace sample.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MsiSeries {
    pub time_s: Vec<f64>,
    pub msi_percent: Vec<f64>,
}

impl MsiSeries {
    pub fn final_value(&self) -> f64 {
        self.msi_percent.last().copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.msi_percent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.msi_percent.is_empty()
    }
}

/// Output of one integration step, evaluated at the state before the step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvcStep {
    pub conflict: f64,
    pub msi_percent: f64,
}

/// Incremental SVC state machine.
#[derive(Debug, Clone)]
pub struct SvcModel {
    params: SvcParams,
    roll_rate: f64,
    roll: f64,
    pitch_rate: f64,
    pitch: f64,
    vertical: [f64; 3],
    stage1: f64,
    stage2: f64,
}

impl SvcModel {
    /// Starts at rest: zero angles, subjective vertical equal to gravity.
    pub fn new(params: SvcParams) -> Result<Self> {
        params.validate()?;
        Ok(SvcModel {
            params,
            roll_rate: 0.0,
            roll: 0.0,
            pitch_rate: 0.0,
            pitch: 0.0,
            vertical: [0.0, 0.0, params.g],
            stage1: 0.0,
            stage2: 0.0,
        })
    }

    pub fn msi_percent(&self) -> f64 {
        100.0 * self.stage2
    }

    /// Advances by `dt` seconds with head accelerations `[x, y, z, roll, pitch, yaw]`.
    pub fn step(&mut self, accel: [f64; 6], dt: f64) -> SvcStep {
        let p = &self.params;
        let [ax, ay, az, aroll, apitch, _] = accel;

        let (sr, cr) = self.roll.sin_cos();
        let (sp, cp) = self.pitch.sin_cos();
        let sensed = [ax - p.g * sp, ay + p.g * sr * cp, az + p.g * cr * cp];
        let diff = [sensed[0] - self.vertical[0], sensed[1] - self.vertical[1], sensed[2] - self.vertical[2]];
        let conflict = (diff[0] * diff[0] + diff[1] * diff[1] + diff[2] * diff[2]).sqrt();
        let cn = conflict.powf(p.n);
        let hill = cn / (p.b.powf(p.n) + cn);
        let out = SvcStep { conflict, msi_percent: self.msi_percent() };

        let leak = 1.0 / p.orientation_leak_s;
        let roll_rate = self.roll_rate + dt * (aroll - leak * self.roll_rate);
        let roll = self.roll + dt * (self.roll_rate - leak * self.roll);
        let pitch_rate = self.pitch_rate + dt * (apitch - leak * self.pitch_rate);
        let pitch = self.pitch + dt * (self.pitch_rate - leak * self.pitch);
        for (v, d) in self.vertical.iter_mut().zip(diff) {
            *v += dt * d / p.tau_s;
        }
        let stage1 = self.stage1 + dt * hill * (1.0 - self.stage1) / p.mu_s;
        let stage2 = self.stage2 + dt * (self.stage1 - self.stage2) / p.mu_s;

        self.roll_rate = roll_rate;
        self.roll = roll;
        self.pitch_rate = pitch_rate;
        self.pitch = pitch;
        self.stage1 = stage1;
        self.stage2 = stage2;
        out
    }
}

/// MSI time series for a head trace, one Euler step per sample.
pub fn run_svc(head: &MotionTrace, params: &SvcParams) -> Result<MsiSeries> {
    run_svc_substepped(head, params, 1)
}

/// As [`run_svc`] with `substeps` Euler steps per sample interval; inputs are
/// linearly interpolated between samples.
pub fn run_svc_substepped(head: &MotionTrace, params: &SvcParams, substeps: usize) -> Result<MsiSeries> {
    if substeps == 0 {
        return Err(Error::Config("svc substeps must be at least 1".into()));
    }
    let mut model = SvcModel::new(*params)?;
    let n = head.len();
    let fs = head.sample_rate_hz();
    let dt = 1.0 / (fs * substeps as f64);
    let ch: Vec<&[f64]> = Axis::ALL.iter().map(|&a| head.channel(a)).collect();
    let sample = |k: usize| -> [f64; 6] { std::array::from_fn(|i| ch[i][k]) };

    let mut time_s = Vec::with_capacity(n);
    let mut msi = Vec::with_capacity(n);
    time_s.push(0.0);
    msi.push(model.msi_percent());
    for k in 0..n - 1 {
        let (a0, a1) = (sample(k), sample(k + 1));
        for s in 0..substeps {
            let w = s as f64 / substeps as f64;
            let input = std::array::from_fn(|i| a0[i] + w * (a1[i] - a0[i]));
            model.step(input, dt);
        }
        let m = model.msi_percent();
        if !m.is_finite() {
            return Err(Error::Numeric(format!("svc state became non-finite at sample {}", k + 1)));
        }
        time_s.push((k + 1) as f64 / fs);
        msi.push(m);
    }
    Ok(MsiSeries { time_s, msi_percent: msi })
}
