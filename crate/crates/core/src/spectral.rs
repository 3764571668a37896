//! Real FFT plumbing shared by transmission and weighting.
//!
//! Transforms run at the signal's own length with no padding, so filtering is
//! circular convolution over the trace. Lengths with large prime factors are
//! handled by the planner's prime-size algorithms.

use std::cell::RefCell;

use realfft::num_complex::Complex64;
use realfft::RealFftPlanner;

use crate::error::{Error, Result};

thread_local! {
    static PLANNER: RefCell<RealFftPlanner<f64>> = RefCell::new(RealFftPlanner::new());
}

pub(crate) fn check_finite(signal: &[f64], what: &str) -> Result<()> {
    if signal.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}

/// Forward real FFT, `n/2 + 1` bins, unnormalized.
pub(crate) fn forward(signal: &[f64]) -> Vec<Complex64> {
    let n = signal.len();
    let plan = PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n));
    let mut input = signal.to_vec();
    let mut spectrum = plan.make_output_vec();
    plan.process(&mut input, &mut spectrum).expect("buffer sizes match the plan");
    spectrum
}

/// Inverse real FFT of an `n/2 + 1` bin spectrum, normalized by `1/n`.
pub(crate) fn inverse(mut spectrum: Vec<Complex64>, n: usize) -> Vec<f64> {
    debug_assert_eq!(spectrum.len(), n / 2 + 1);
    spectrum[0].im = 0.0;
    if n.is_multiple_of(2) {
        spectrum[n / 2].im = 0.0;
    }
    let plan = PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n));
    let mut out = plan.make_output_vec();
    plan.process(&mut spectrum, &mut out).expect("buffer sizes match the plan");
    let scale = 1.0 / n as f64;
    out.iter_mut().for_each(|v| *v *= scale);
    out
}

/// `inverse(response · forward(signal))`.
pub(crate) fn filter(signal: &[f64], response: &[Complex64]) -> Vec<f64> {
    let mut spectrum = forward(signal);
    for (s, h) in spectrum.iter_mut().zip(response) {
        *s *= h;
    }
    inverse(spectrum, signal.len())
}
