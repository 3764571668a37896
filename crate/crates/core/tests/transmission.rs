mod common;

use std::f64::consts::PI;

use common::{random_trace, rel_err};
use proptest::prelude::*;
use seat2head::{
    builtin_bundle, fft_apply, identity_bundle, transmit, transmit_head, Axis, AxisValues, FrfChannelId, FrfCurve,
    ModelId, MotionTrace, Unit,
};

fn combo(a: f64, s1: &MotionTrace, b: f64, s2: &MotionTrace) -> MotionTrace {
    let ch = AxisValues::from_fn(|ax| s1.channel(ax).iter().zip(s2.channel(ax)).map(|(x, y)| a * x + b * y).collect());
    MotionTrace::new(s1.sample_rate_hz(), ch, "seat").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn superposition(seed in 0u64..1_000_000, n in 16usize..700, a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let bundle = builtin_bundle(ModelId::Exp);
        let s1 = random_trace(n, 100.0, seed);
        let s2 = random_trace(n, 100.0, seed ^ 0xdead_beef);
        let (h1, _) = transmit(&s1, &bundle).unwrap();
        let (h2, _) = transmit(&s2, &bundle).unwrap();
        let (h, _) = transmit(&combo(a, &s1, b, &s2), &bundle).unwrap();
        for ax in Axis::ALL {
            let expect: Vec<f64> = h1.channel(ax).iter().zip(h2.channel(ax)).map(|(x, y)| a * x + b * y).collect();
            let scale = expect.iter().chain(h.channel(ax)).map(|v| v * v).sum::<f64>();
            if scale > 1e-20 {
                prop_assert!(rel_err(h.channel(ax), &expect) < 1e-9, "{ax:?}");
            }
        }
    }

    #[test]
    fn breakdown_sums_to_head(seed in 0u64..1_000_000, n in 16usize..700) {
        for model in [ModelId::Exp, ModelId::Ahm, ModelId::Ehm] {
            let bundle = builtin_bundle(model);
            let (head, breakdown) = transmit(&random_trace(n, 100.0, seed), &bundle).unwrap();
            for ax in Axis::ALL {
                let mut sum = vec![0.0; n];
                for (id, part) in breakdown.contributions(ax) {
                    prop_assert_eq!(id.output_axis(), ax);
                    sum.iter_mut().zip(part).for_each(|(s, p)| *s += p);
                }
                prop_assert!(rel_err(&sum, head.channel(ax)) < 1e-9);
            }
        }
    }

    #[test]
    fn fast_path_matches_breakdown(seed in 0u64..1_000_000, n in 16usize..700) {
        let bundle = builtin_bundle(ModelId::Ehm);
        let seat = random_trace(n, 100.0, seed);
        let (slow, _) = transmit(&seat, &bundle).unwrap();
        let fast = transmit_head(&seat, &bundle).unwrap();
        for ax in Axis::ALL {
            prop_assert!(rel_err(fast.channel(ax), slow.channel(ax)) < 1e-9);
        }
    }
}

#[test]
fn breakdown_has_every_legal_channel_once() {
    let (_, breakdown) = transmit(&random_trace(128, 100.0, 3), &builtin_bundle(ModelId::Exp)).unwrap();
    let mut seen: Vec<FrfChannelId> =
        Axis::ALL.iter().flat_map(|&a| breakdown.contributions(a).iter().map(|(id, _)| *id)).collect();
    seen.sort();
    let mut legal = FrfChannelId::LEGAL.to_vec();
    legal.sort();
    assert_eq!(seen, legal);
    for ax in Axis::ALL {
        assert!(breakdown.contributions(ax)[0].0.is_diagonal());
    }
}

#[test]
fn homogeneity_and_axis_independence() {
    let bundle = builtin_bundle(ModelId::Ahm);
    let seat = random_trace(500, 100.0, 11);
    let (h, _) = transmit(&seat, &bundle).unwrap();
    let (h3, _) = transmit(&seat.scaled(-2.5), &bundle).unwrap();
    for ax in Axis::ALL {
        let expect: Vec<f64> = h.channel(ax).iter().map(|v| -2.5 * v).collect();
        assert!(rel_err(h3.channel(ax), &expect) < 1e-12);
    }
    // yaw input reaches only the yaw head axis
    let mut only_yaw = MotionTrace::zeros(500, 100.0, "seat").unwrap().channels().clone();
    only_yaw[Axis::Yaw] = seat.channel(Axis::Yaw).to_vec();
    let (hy, _) = transmit(&MotionTrace::new(100.0, only_yaw, "seat").unwrap(), &bundle).unwrap();
    for ax in [Axis::X, Axis::Y, Axis::Z, Axis::Roll, Axis::Pitch] {
        assert!(hy.channel(ax).iter().all(|v| *v == 0.0), "{ax:?}");
    }
    // removing x input changes only x and pitch at the head
    let (hx, _) = transmit(&seat.without(Axis::X), &bundle).unwrap();
    for ax in [Axis::Y, Axis::Z, Axis::Roll, Axis::Yaw] {
        assert!(rel_err(hx.channel(ax), h.channel(ax)) < 1e-12, "{ax:?}");
    }
    assert!(rel_err(hx.channel(Axis::Pitch), h.channel(Axis::Pitch)) > 1e-3);
}

#[test]
fn circular_shift_commutes() {
    let bundle = builtin_bundle(ModelId::Exp);
    let curve = bundle.channel(FrfChannelId::between(Axis::Z, Axis::Z).unwrap());
    let n = 1000;
    let seat = random_trace(n, 100.0, 5);
    let x = seat.channel(Axis::Z);
    let y = fft_apply(x, curve, 100.0).unwrap();
    for shift in [1usize, 37, 999] {
        let xs: Vec<f64> = (0..n).map(|i| x[(i + n - shift) % n]).collect();
        let ys = fft_apply(&xs, curve, 100.0).unwrap();
        let expect: Vec<f64> = (0..n).map(|i| y[(i + n - shift) % n]).collect();
        assert!(rel_err(&ys, &expect) < 1e-12);
    }
}

#[test]
fn bin_centred_sinusoid_gets_gain_and_phase() {
    let bundle = builtin_bundle(ModelId::Exp);
    let fs = 100.0;
    let n = 4096;
    for id in FrfChannelId::LEGAL {
        let curve = bundle.channel(id);
        for k0 in [7usize, 80, 500] {
            let f = k0 as f64 * fs / n as f64;
            let h = curve.evaluate(f);
            let x: Vec<f64> = (0..n).map(|i| (2.0 * PI * f * i as f64 / fs).cos()).collect();
            let expect: Vec<f64> =
                (0..n).map(|i| h.norm() * (2.0 * PI * f * i as f64 / fs + h.arg()).cos()).collect();
            let y = fft_apply(&x, curve, fs).unwrap();
            let err = y.iter().zip(&expect).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err <= 1e-9 * h.norm().max(1e-12) + 1e-13, "{id} at {f} Hz: {err}");
        }
    }
}

#[test]
fn identity_bundle_returns_seat() {
    let seat = random_trace(777, 50.0, 9);
    let (head, breakdown) = transmit(&seat, &identity_bundle()).unwrap();
    for ax in Axis::ALL {
        assert!(rel_err(head.channel(ax), seat.channel(ax)) < 1e-12);
        for (id, part) in breakdown.contributions(ax) {
            if !id.is_diagonal() {
                assert!(part.iter().all(|v| *v == 0.0));
            }
        }
    }
}

#[test]
fn dc_passes_at_gain_without_sign_flip() {
    // tabulated phase of 180° at DC would otherwise invert a constant input
    let curve = FrfCurve::from_degrees(vec![0.0, 10.0], vec![2.0, 2.0], vec![180.0, 180.0], Unit::MPerS2, Unit::MPerS2)
        .unwrap();
    let y = fft_apply(&[1.5; 64], &curve, 100.0).unwrap();
    assert!(y.iter().all(|v| (v - 3.0).abs() < 1e-12));
}

#[test]
fn rejects_bad_input() {
    let curve = FrfCurve::constant(1.0, 0.0, Unit::MPerS2, Unit::MPerS2);
    assert!(fft_apply(&[1.0], &curve, 100.0).is_err());
    assert_eq!(fft_apply(&[1.0, f64::NAN, 0.0], &curve, 100.0).unwrap_err().exit_code(), 3);
}
