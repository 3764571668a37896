"""Smoke test for the pyseat2head extension module.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist && pip install dist/pyseat2head-*.whl
"""
import math

import pyseat2head as s2h


def main():
    seat = s2h.synth_trace(
        [{"axis": "z", "kind": "sine", "amplitude": 1.0, "f0": 1.0}], duration_s=60.0, sample_rate_hz=100.0
    )
    assert len(seat) == 6000
    assert abs(s2h.rms(seat.channel("z")) - 1 / math.sqrt(2)) < 1e-6

    exp = s2h.FrfBundle.builtin("EXP")
    nhm = s2h.FrfBundle.builtin("NHM")
    assert exp.model_id == "EXP" and exp.defaulted_channels == []
    assert nhm.evaluate("z", "z", 3.0) == 1 + 0j
    assert abs(exp.evaluate("z", "pitch", 3.0)) > 0

    head = s2h.transmit(seat, nhm)
    assert head.frame_label == "head"
    assert max(abs(a - b) for a, b in zip(head.channel("z"), seat.channel("z"))) < 1e-12

    broadband = s2h.broadband_trace(600.0, 50.0, seed=3)
    r_exp = s2h.full_assessment(broadband, exp)
    r_nhm = s2h.full_assessment(broadband, nhm)
    assert r_exp["schema"] == 1 and r_exp["model_id"] == "EXP"
    assert r_exp["rc"]["total"] > r_nhm["rc"]["total"]
    t, msi = r_exp["msi_series"]
    assert len(t) == len(broadband) and msi[-1] == r_exp["msi"]["final"]

    rc = s2h.assess(broadband, "RC")
    assert set(rc["per_axis"]) == {"x", "y", "z", "rx", "ry", "rz"}

    t, msi = s2h.run_svc(s2h.transmit(broadband, exp), mu_s=300.0)
    assert all(b >= a for a, b in zip(msi, msi[1:])) and 0.0 <= msi[-1] <= 100.0

    k = [1, 1, 1, 0.63, 0.4, 0.2]
    assert abs(s2h.combine([0.536, 0.070, 2.717, 0.169, 6.099, 0.090], k) - 3.693) < 0.002

    trace = s2h.MotionTrace(100.0, {"z": [0.0, 1.0, 0.0, -1.0], "pitch": [0.1] * 4})
    assert trace.channel("x") == [0.0] * 4
    try:
        s2h.synth_trace([{"axis": "x", "kind": "sine", "amplitude": 1, "f0": 80}], 1.0, 100.0)
    except s2h.Seat2HeadError as e:
        assert "[above_nyquist]" in str(e)
    else:
        raise AssertionError("expected Seat2HeadError")

    print("pyseat2head smoke test passed: RC_total EXP %.3f, NHM %.3f, MSI EXP %.2f %%"
          % (r_exp["rc"]["total"], r_nhm["rc"]["total"], r_exp["msi"]["final"]))


if __name__ == "__main__":
    main()
