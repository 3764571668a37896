//! Python bindings for `seat2head`.
//!
//! Traces and bundles are wrapped as classes; reports come back as plain
//! dicts (the same layout as the report JSON).
//!
//! ```text
//! import pyseat2head as s2h
//! seat = s2h.broadband_trace(600.0, 100.0, seed=1)
//! report = s2h.full_assessment(seat, s2h.FrfBundle.builtin("EXP"))
//! print(report["rc"]["total"], report["msi"]["final"])
//! ```

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict};

use seat2head::io::report::report_to_json;
use seat2head::io::synth::SynthComponent;
use seat2head::io::trace::{load_trace, save_trace, trace_to_csv};
use seat2head::{Axis, AxisValues, FrfChannelId, MetricRegime, ModelId, SvcParams, WeightingRegistry};

create_exception!(pyseat2head, Seat2HeadError, PyException);

fn to_py(e: seat2head::Error) -> PyErr {
    Seat2HeadError::new_err(format!("[{}] {e}", e.code()))
}

fn parse_axis(name: &str) -> PyResult<Axis> {
    name.parse().map_err(to_py)
}

fn parse_model(name: &str) -> PyResult<ModelId> {
    name.parse().map_err(to_py)
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

// -----------------------------------------------------------------------------
// MotionTrace
// -----------------------------------------------------------------------------

/// Uniformly sampled 6-DOF acceleration trace.
///
/// Args:
///     sample_rate_hz: Sampling rate.
///     channels: dict keyed by axis name or label (x, y, z, roll/rx,
///         pitch/ry, yaw/rz). Missing axes are zero.
///     frame_label: Free-form frame name, e.g. "seat" or "head".
#[pyclass(name = "MotionTrace", frozen)]
struct PyMotionTrace {
    inner: seat2head::MotionTrace,
}

#[pymethods]
impl PyMotionTrace {
    #[new]
    #[pyo3(signature = (sample_rate_hz, channels, frame_label="seat"))]
    fn new(sample_rate_hz: f64, channels: &Bound<'_, PyDict>, frame_label: &str) -> PyResult<Self> {
        let mut values: AxisValues<Option<Vec<f64>>> = AxisValues::from_fn(|_| None);
        for (k, v) in channels.iter() {
            let axis = parse_axis(&k.extract::<String>()?)?;
            values[axis] = Some(v.extract()?);
        }
        let n = values.iter().filter_map(|(_, v)| v.as_ref().map(Vec::len)).max().unwrap_or(0);
        let filled = values.map(|_, v| v.clone().unwrap_or_else(|| vec![0.0; n]));
        let inner = seat2head::MotionTrace::new(sample_rate_hz, filled, frame_label).map_err(to_py)?;
        Ok(Self { inner })
    }

    /// Read a trace CSV (`t_s,ax,ay,az,aroll,apitch,ayaw`).
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self { inner: load_trace(path).map_err(to_py)? })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        save_trace(path, &self.inner).map_err(to_py)
    }

    fn to_csv(&self) -> String {
        trace_to_csv(&self.inner)
    }

    #[getter]
    fn sample_rate_hz(&self) -> f64 {
        self.inner.sample_rate_hz()
    }

    #[getter]
    fn duration_s(&self) -> f64 {
        self.inner.duration_s()
    }

    #[getter]
    fn frame_label(&self) -> &str {
        self.inner.frame_label()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Samples of one axis as a list.
    fn channel(&self, axis: &str) -> PyResult<Vec<f64>> {
        Ok(self.inner.channel(parse_axis(axis)?).to_vec())
    }

    fn __repr__(&self) -> String {
        format!(
            "MotionTrace(frame={:?}, n={}, sample_rate_hz={})",
            self.inner.frame_label(),
            self.inner.len(),
            self.inner.sample_rate_hz()
        )
    }
}

// -----------------------------------------------------------------------------
// FrfBundle
// -----------------------------------------------------------------------------

/// The 14 seat-to-head FRF channels of one human-model configuration.
#[pyclass(name = "FrfBundle", frozen)]
struct PyFrfBundle {
    inner: seat2head::FrfBundle,
}

#[pymethods]
impl PyFrfBundle {
    /// Shipped bundle: "EXP", "AHM", "EHM" (synthetic fixtures) or "NHM".
    #[staticmethod]
    fn builtin(model: &str) -> PyResult<Self> {
        Ok(Self { inner: seat2head::builtin_bundle(parse_model(model)?) })
    }

    /// Load a bundle from a manifest JSON file.
    #[staticmethod]
    fn load(manifest: &str) -> PyResult<Self> {
        Ok(Self { inner: seat2head::load_frf_bundle(manifest).map_err(to_py)? })
    }

    #[getter]
    fn model_id(&self) -> &'static str {
        self.inner.model_id().as_str()
    }

    #[getter]
    fn source(&self) -> &str {
        self.inner.source()
    }

    /// Channels that were absent from the manifest and set to zero.
    #[getter]
    fn defaulted_channels(&self) -> Vec<String> {
        self.inner.defaulted_channels().iter().map(ToString::to_string).collect()
    }

    /// Complex response of channel `input -> output` at `f_hz`.
    fn evaluate<'py>(
        &self,
        py: Python<'py>,
        input_axis: &str,
        output_axis: &str,
        f_hz: f64,
    ) -> PyResult<Bound<'py, PyComplex>> {
        let (i, o) = (parse_axis(input_axis)?, parse_axis(output_axis)?);
        let id = FrfChannelId::between(i, o).ok_or_else(|| {
            Seat2HeadError::new_err(format!("[config] no FRF channel {} -> {}", i.name(), o.name()))
        })?;
        let h = self.inner.channel(id).evaluate(f_hz);
        Ok(PyComplex::from_doubles(py, h.re, h.im))
    }

    fn __repr__(&self) -> String {
        format!("FrfBundle({}, source={:?})", self.inner.model_id(), self.inner.source())
    }
}

// -----------------------------------------------------------------------------
// Functions
// -----------------------------------------------------------------------------

/// Carry a seat trace to the head.
#[pyfunction]
fn transmit(py: Python<'_>, seat: &PyMotionTrace, bundle: &PyFrfBundle) -> PyResult<PyMotionTrace> {
    let head = py
        .detach(|| seat2head::transmit_head(&seat.inner, &bundle.inner))
        .map_err(to_py)?;
    Ok(PyMotionTrace { inner: head.with_frame_label("head") })
}

fn regime(name: &str) -> PyResult<MetricRegime> {
    match name.to_ascii_uppercase().as_str() {
        "RC" => Ok(MetricRegime::ride_comfort()),
        "MS" => Ok(MetricRegime::motion_sickness()),
        _ => Err(Seat2HeadError::new_err(format!("[config] unknown regime {name:?} (expected RC or MS)"))),
    }
}

/// Weighted RMS per axis and k-combined total of an already-transmitted trace.
///
/// Returns:
///     {"per_axis": {"x": .., ..., "rz": ..}, "total": ..}
#[pyfunction]
#[pyo3(signature = (trace, regime_name="RC"))]
fn assess<'py>(py: Python<'py>, trace: &PyMotionTrace, regime_name: &str) -> PyResult<Bound<'py, PyAny>> {
    let regime = regime(regime_name)?;
    let registry: WeightingRegistry = seat2head::builtin_weightings().map_err(to_py)?;
    let result = py.detach(|| seat2head::assess(&trace.inner, &regime, &registry)).map_err(to_py)?;
    let json = serde_json::to_string(&result).map_err(|e| to_py(e.into()))?;
    json_to_py(py, &json)
}

/// Transmit + RC + MS + SVC. Returns the report as a dict, plus the MSI series
/// under "msi_series" as (time_s, msi_percent).
#[pyfunction]
fn full_assessment<'py>(py: Python<'py>, seat: &PyMotionTrace, bundle: &PyFrfBundle) -> PyResult<Bound<'py, PyAny>> {
    let report = py
        .detach(|| seat2head::full_assessment(&seat.inner, &bundle.inner))
        .map_err(to_py)?;
    let dict = json_to_py(py, &report_to_json(&report).map_err(to_py)?)?;
    let series = (report.msi_series.time_s, report.msi_series.msi_percent);
    dict.set_item("msi_series", series)?;
    Ok(dict)
}

/// SVC motion-sickness incidence over a head trace.
///
/// Returns:
///     (time_s, msi_percent) lists.
#[pyfunction]
#[pyo3(signature = (head, tau_s=None, b=None, n=None, mu_s=None))]
fn run_svc(
    py: Python<'_>,
    head: &PyMotionTrace,
    tau_s: Option<f64>,
    b: Option<f64>,
    n: Option<f64>,
    mu_s: Option<f64>,
) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let d = SvcParams::default();
    let params = SvcParams {
        tau_s: tau_s.unwrap_or(d.tau_s),
        b: b.unwrap_or(d.b),
        n: n.unwrap_or(d.n),
        mu_s: mu_s.unwrap_or(d.mu_s),
        ..d
    };
    let series = py.detach(|| seat2head::run_svc(&head.inner, &params)).map_err(to_py)?;
    Ok((series.time_s, series.msi_percent))
}

#[pyfunction]
fn rms(signal: Vec<f64>) -> PyResult<f64> {
    seat2head::rms(&signal).map_err(to_py)
}

/// sqrt(sum (k_i v_i)^2) over the six axes (x, y, z, rx, ry, rz).
#[pyfunction]
#[pyo3(signature = (per_axis, k_factors=None))]
fn combine(per_axis: [f64; 6], k_factors: Option<[f64; 6]>) -> PyResult<f64> {
    let k = k_factors.map(AxisValues).unwrap_or(seat2head::weighting::DEFAULT_K_FACTORS);
    seat2head::combine(&AxisValues(per_axis), &k).map_err(to_py)
}

/// Seeded broadband noise on all six axes.
#[pyfunction]
#[pyo3(signature = (duration_s, sample_rate_hz, seed=1))]
fn broadband_trace(duration_s: f64, sample_rate_hz: f64, seed: u64) -> PyResult<PyMotionTrace> {
    let inner = seat2head::io::synth::broadband_trace(duration_s, sample_rate_hz, seed).map_err(to_py)?;
    Ok(PyMotionTrace { inner })
}

/// Synthesize a trace from component dicts, e.g.
/// `[{"axis": "z", "kind": "sine", "amplitude": 1.0, "f0": 1.0}]`.
#[pyfunction]
fn synth_trace(py: Python<'_>, components: &Bound<'_, PyAny>, duration_s: f64, sample_rate_hz: f64) -> PyResult<PyMotionTrace> {
    let text: String = py.import("json")?.call_method1("dumps", (components,))?.extract()?;
    let comps: Vec<SynthComponent> =
        serde_json::from_str(&text).map_err(|e| Seat2HeadError::new_err(format!("[config] {e}")))?;
    let inner = seat2head::io::synth::synth_trace(&comps, duration_s, sample_rate_hz).map_err(to_py)?;
    Ok(PyMotionTrace { inner })
}

#[pymodule]
fn pyseat2head(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("Seat2HeadError", m.py().get_type::<Seat2HeadError>())?;
    m.add_class::<PyMotionTrace>()?;
    m.add_class::<PyFrfBundle>()?;
    m.add_function(wrap_pyfunction!(transmit, m)?)?;
    m.add_function(wrap_pyfunction!(assess, m)?)?;
    m.add_function(wrap_pyfunction!(full_assessment, m)?)?;
    m.add_function(wrap_pyfunction!(run_svc, m)?)?;
    m.add_function(wrap_pyfunction!(rms, m)?)?;
    m.add_function(wrap_pyfunction!(combine, m)?)?;
    m.add_function(wrap_pyfunction!(broadband_trace, m)?)?;
    m.add_function(wrap_pyfunction!(synth_trace, m)?)?;
    Ok(())
}
