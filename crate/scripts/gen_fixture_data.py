#!/usr/bin/env python3
"""Regenerate the bundled weighting tables and synthetic FRF bundles.

Weighting curves Wk, We and Wf are the magnitudes of the ISO 2631-1 (Annex A)
band-limiting / acceleration-velocity / upward-step filter products, evaluated
at the nominal one-third-octave centre frequencies. Wfx, Wfy and Wfr are smooth
approximations of the published fore-aft, lateral and roll motion-sickness
weightings; replace them with authoritative tables where available.

The FRF bundles are synthetic seat-to-head transmissibilities (mild peaking
resonances and band-pass cross-axis couplings). They are NOT measured data.

Usage: python3 scripts/gen_fixture_data.py  (writes into crates/core/data)
"""

import cmath
import json
import math
import os

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "crates", "core", "data")

NOMINAL_DECADE = [1.0, 1.25, 1.6, 2.0, 2.5, 3.15, 4.0, 5.0, 6.3, 8.0]


def third_octave_bands(lo_exp=-2, hi=400.0):
    out = []
    for e in range(lo_exp, 3):
        for m in NOMINAL_DECADE:
            f = round(m * 10.0 ** e, 6)
            if f <= hi:
                out.append(f)
    return out


def iso_weight(f, f1, f2, f3, f4, q4, f5=None, q5=None, f6=None, q6=None):
    """|H(j 2 pi f)| of the ISO 2631-1 weighting filter product."""
    if f == 0.0:
        return 0.0
    p = 2j * math.pi * f
    w = lambda x: 2.0 * math.pi * x
    h = 1.0
    if f1 is not None:
        r = w(f1) / p
        h *= 1.0 / (1.0 + math.sqrt(2.0) * r + r * r)
    if f2 is not None:
        r = p / w(f2)
        h *= 1.0 / (1.0 + math.sqrt(2.0) * r + r * r)
    if f4 is not None:
        num = 1.0 + (p / w(f3) if f3 is not None else 0.0)
        h *= num / (1.0 + p / (q4 * w(f4)) + (p / w(f4)) ** 2)
    if f5 is not None:
        num = 1.0 + p / (q5 * w(f5)) + (p / w(f5)) ** 2
        den = 1.0 + p / (q6 * w(f6)) + (p / w(f6)) ** 2
        h *= num / den * (w(f5) / w(f6)) ** 2
    return abs(h)


def sickness_weight(f, f_hp, f_t, f_lp):
    """Acceleration-flat below f_t, velocity-like above, band-limited."""
    if f == 0.0:
        return 0.0
    p = 2j * math.pi * f
    w = lambda x: 2.0 * math.pi * x
    r = w(f_hp) / p
    h = 1.0 / (1.0 + math.sqrt(2.0) * r + r * r)
    h *= 1.0 / (1.0 + p / w(f_t))
    r = p / w(f_lp)
    h *= 1.0 / (1.0 + math.sqrt(2.0) * r + r * r)
    return abs(h)


WEIGHTINGS = {
    "Wk": ("ISO 2631-1 Wk (vertical, comfort)",
           lambda f: iso_weight(f, 0.4, 100.0, 12.5, 12.5, 0.63, 2.37, 0.91, 3.35, 0.91)),
    "We": ("ISO 2631-1 We (rotational, comfort)",
           lambda f: iso_weight(f, 0.4, 100.0, 1.0, 1.0, 0.63)),
    "Wf": ("ISO 2631-1 Wf (vertical, motion sickness)",
           lambda f: iso_weight(f, 0.08, 0.63, None, 0.25, 0.86, 0.0625, 0.80, 0.1, 0.80)),
    "Wfx": ("approximation of fore-aft motion-sickness weighting (substitute authoritative table)",
            lambda f: sickness_weight(f, 0.02, 0.25, 2.0)),
    "Wfy": ("approximation of lateral motion-sickness weighting (substitute authoritative table)",
            lambda f: sickness_weight(f, 0.02, 0.2, 2.0)),
    "Wfr": ("approximation of roll motion-sickness weighting (substitute authoritative table)",
            lambda f: sickness_weight(f, 0.02, 0.2, 1.6)),
}


def write_weightings():
    d = os.path.join(ROOT, "weighting")
    os.makedirs(d, exist_ok=True)
    bands = third_octave_bands()
    for name, (label, fn) in WEIGHTINGS.items():
        with open(os.path.join(d, name.lower() + ".csv"), "w") as fh:
            fh.write("# %s\n" % label)
            fh.write("# magnitudes at nominal one-third-octave centres; 0 Hz row is the DC limit\n")
            fh.write("freq_hz,magnitude\n")
            fh.write("0,0\n")
            for f in bands:
                fh.write("%s,%.6g\n" % (repr(f), fn(f)))


def transmissibility(f, fn, zeta, zeta_num=None):
    """Unity at DC and at high frequency, peak zeta_num/zeta at fn."""
    if zeta_num is None:
        zeta_num = 1.4 * zeta
    r = f / fn
    return (1.0 - r * r + 2j * zeta_num * r) / (1.0 - r * r + 2j * zeta * r)


def coupling(f, gain, fn, zeta):
    r = f / fn
    return gain * (2j * zeta * r) / (1.0 - r * r + 2j * zeta * r)


TRANSLATIONAL = {"x", "y", "z"}

# (set, in, out) -> per-model factory; shared sets use the same parameters in every model.
SHARED = {
    (2, "pitch", "x"): lambda f: coupling(f, 0.15, 3.0, 0.35),
    (2, "pitch", "z"): lambda f: coupling(f, 0.05, 3.0, 0.35),
    (2, "pitch", "pitch"): lambda f: transmissibility(f, 3.5, 0.3),
    (3, "roll", "y"): lambda f: coupling(f, 0.6, 2.5, 0.35),
    (3, "roll", "yaw"): lambda f: coupling(f, 0.1, 2.5, 0.35),
    (3, "roll", "roll"): lambda f: transmissibility(f, 3.0, 0.3),
    (6, "yaw", "yaw"): lambda f: transmissibility(f, 3.5, 0.35),
}

PER_MODEL = {
    #        z fn, z->pitch G, x fn, x->pitch G, y fn, y->roll G, y->yaw G, peak
    "EXP": (3.6, 0.9, 2.5, 1.2, 2.0, 0.8, 0.2, 1.7),
    "AHM": (3.9, 0.7, 2.7, 1.0, 2.1, 0.75, 0.18, 1.5),
    "EHM": (4.0, 0.65, 2.8, 0.95, 2.1, 0.72, 0.17, 1.45),
}


def model_channels(model):
    zf, zp, xf, xp, yf, yr, yy, peak = PER_MODEL[model]
    ch = dict(SHARED)
    ch[(1, "z", "z")] = lambda f: transmissibility(f, zf, 0.35, 0.35 * peak)
    ch[(1, "z", "pitch")] = lambda f: coupling(f, zp, zf, 0.4)
    ch[(4, "x", "x")] = lambda f: transmissibility(f, xf, 0.35, 0.35 * peak)
    ch[(4, "x", "pitch")] = lambda f: coupling(f, xp, xf * 0.9, 0.4)
    ch[(5, "y", "y")] = lambda f: transmissibility(f, yf, 0.35, 0.35 * peak)
    ch[(5, "y", "yaw")] = lambda f: coupling(f, yy, yf, 0.4)
    ch[(5, "y", "roll")] = lambda f: coupling(f, yr, yf * 0.9, 0.4)
    return ch


def unit(axis):
    return "m/s2" if axis in TRANSLATIONAL else "rad/s2"


def write_bundles():
    freqs = [round(0.4 * k, 6) for k in range(0, 51)]
    for model in PER_MODEL:
        d = os.path.join(ROOT, "bundles", model.lower())
        os.makedirs(d, exist_ok=True)
        entries = []
        for (s, i, o), fn in sorted(model_channels(model).items()):
            fname = "set%d_%s_to_%s.csv" % (s, i, o)
            with open(os.path.join(d, fname), "w") as fh:
                fh.write("# SYNTHETIC %s-like seat-to-head FRF, set %d, %s -> %s\n" % (model, s, i, o))
                fh.write("freq_hz,gain,phase_deg\n")
                for f in freqs:
                    h = fn(f)
                    fh.write("%s,%.9g,%.9g\n" % (repr(f), abs(h), math.degrees(cmath.phase(h))))
            entries.append({"set": s, "in": i, "out": o, "file": fname,
                            "in_unit": unit(i), "out_unit": unit(o)})
        with open(os.path.join(d, "manifest.json"), "w") as fh:
            json.dump({"model_id": model, "channels": entries}, fh, indent=2)
            fh.write("\n")


if __name__ == "__main__":
    write_weightings()
    write_bundles()
