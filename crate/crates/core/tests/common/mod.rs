#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seat2head::{Axis, AxisValues, MotionTrace, SvcParams};

/// Independent uniform noise on each axis, no band limiting.
pub fn random_trace(n: usize, fs: f64, seed: u64) -> MotionTrace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ch = AxisValues::from_fn(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect());
    MotionTrace::new(fs, ch, "seat").unwrap()
}

/// ‖a − b‖₂ / max(‖b‖₂, tiny)
pub fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let den: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt();
    num / den.max(1e-300)
}

pub fn rel_scalar(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Classic RK4 on the same ODE, written out separately, with inputs linearly
/// interpolated between samples.
pub fn rk4_final_msi(head: &MotionTrace, p: &SvcParams, substeps: usize) -> f64 {
    const N: usize = 9;
    let deriv = |s: &[f64; N], a: [f64; 6]| -> [f64; N] {
        let [roll_rate, roll, pitch_rate, pitch, vx, vy, vz, y1, y2] = *s;
        let leak = 1.0 / p.orientation_leak_s;
        let f = [
            a[0] - p.g * pitch.sin(),
            a[1] + p.g * roll.sin() * pitch.cos(),
            a[2] + p.g * roll.cos() * pitch.cos(),
        ];
        let d = [f[0] - vx, f[1] - vy, f[2] - vz];
        let c = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        let h = c.powf(p.n) / (p.b.powf(p.n) + c.powf(p.n));
        [
            a[3] - leak * roll_rate,
            roll_rate - leak * roll,
            a[4] - leak * pitch_rate,
            pitch_rate - leak * pitch,
            d[0] / p.tau_s,
            d[1] / p.tau_s,
            d[2] / p.tau_s,
            h * (1.0 - y1) / p.mu_s,
            (y1 - y2) / p.mu_s,
        ]
    };
    let input = |t: f64| -> [f64; 6] {
        let k = (t.floor() as usize).min(head.len() - 2);
        let w = t - k as f64;
        std::array::from_fn(|i| {
            let c = head.channel(Axis::ALL[i]);
            c[k] + w * (c[k + 1] - c[k])
        })
    };
    let fs = head.sample_rate_hz();
    let h = 1.0 / (fs * substeps as f64);
    let mut s = [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, p.g, 0.0, 0.0];
    let steps = (head.len() - 1) * substeps;
    for i in 0..steps {
        let t = i as f64 / substeps as f64; // in samples
        let dt_samples = 1.0 / substeps as f64;
        let add = |s: &[f64; N], k: &[f64; N], c: f64| -> [f64; N] { std::array::from_fn(|j| s[j] + c * k[j]) };
        let k1 = deriv(&s, input(t));
        let k2 = deriv(&add(&s, &k1, h / 2.0), input(t + dt_samples / 2.0));
        let k3 = deriv(&add(&s, &k2, h / 2.0), input(t + dt_samples / 2.0));
        let k4 = deriv(&add(&s, &k3, h), input(t + dt_samples));
        s = std::array::from_fn(|j| s[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]));
    }
    100.0 * s[8]
}
