//! Seat-to-head motion transmission and motion comfort assessment.
//!
//! A 6-DOF seat acceleration trace is carried to the head through tabulated
//! frequency response functions ([`frf`], [`transmission`]). The head motion
//! is then scored with frequency-weighted RMS metrics for ride comfort and
//! motion sickness ([`weighting`], [`metrics`]) and with a
//! subjective-vertical-conflict incidence model ([`svc`]).
//!
//! ```no_run
//! use seat2head::{builtin_bundle, full_assessment, io::trace::load_trace, ModelId};
//!
//! let seat = load_trace("seat.csv")?;
//! let report = full_assessment(&seat, &builtin_bundle(ModelId::Exp))?;
//! println!("RC total {:.3}, MSI {:.1} %", report.rc.total, report.msi.final_percent);
//! # Ok::<(), seat2head::Error>(())
//! ```

pub mod axis;
pub mod error;
pub mod frf;
pub mod io;
pub mod metrics;
mod spectral;
pub mod svc;
mod table;
pub mod transmission;
pub mod weighting;

pub use axis::{Axis, AxisValues, Unit};
pub use error::{Error, Result};
pub use frf::{
    builtin_bundle, evaluate_frf, identity_bundle, interpolate_frf, load_frf_bundle, FrfBundle, FrfChannelId,
    FrfCurve, ModelId,
};
pub use metrics::{assess, combine, full_assessment, full_assessment_with, rms, AssessmentConfig, ComfortReport, RegimeResult};
pub use svc::{run_svc, MsiSeries, SvcParams};
pub use transmission::{fft_apply, transmit, transmit_head, ContributionBreakdown, MotionTrace};
pub use weighting::{apply_weighting, builtin_weightings, MetricRegime, RegimeKind, WeightingCurve, WeightingRegistry};

pub use realfft::num_complex::Complex64;
