#!/usr/bin/env python3
"""Generate the material fixtures under tests/fixtures/.

Two-oscillator designs: given transverse frequencies (omega_T1, omega_T2)
and target surface-mode positions (73, 90 cm^-1), the plasma frequencies
solve the linear system Re eps(73) = Re eps(90) = -1 (undamped), which pins
the combined material's surface-polariton modes at exactly the targets.

* material_narrow.json — omega_T = (70, 85) cm^-1, mode FWHM ~ 1% of the
  mode frequency.  With this oscillator placement each mode's reflection
  peak is close to what its own oscillator alone would produce, which is
  the regime where the two-resonance closed form is quantitative.
* material_broad.json — omega_T = (65, 85) cm^-1, FWHM ~ 3% of the mode
  frequency; the strongly-coupled broad-resonance scenario.
* material_toy.json — single oscillator (1e13, 8e12, 2e11 rad/s) used by
  the brute-force golden comparisons.
* material_ldos.json — single oscillator (1.884e13, 1.5e13, Gamma =
  0.02 omega_T) used by the local-density-of-states magnitude checks.

Run from the repository root:  python3 tools/make_material_fixtures.py
"""

import json
import os

import numpy as np

MODE_LO, MODE_HI = 73.0, 90.0  # target mode positions (cm^-1)


def solve_plasma(t1, t2):
    """omega_P (cm^-1) placing the combined modes at (73, 90) cm^-1."""
    A = np.array([[1.0 / (t1 * t1 - MODE_LO ** 2), 1.0 / (t2 * t2 - MODE_LO ** 2)],
                  [1.0 / (t1 * t1 - MODE_HI ** 2), 1.0 / (t2 * t2 - MODE_HI ** 2)]])
    P = np.linalg.solve(A, np.array([-2.0, -2.0]))
    if not (P > 0).all():
        raise ValueError(f"design ({t1}, {t2}) has no positive solution")
    return np.sqrt(P)


def two_oscillator(name, t1, t2, gamma_frac, notes):
    p1, p2 = solve_plasma(t1, t2)
    return {
        "schema_version": 1,
        "name": name,
        "notes": notes,
        "oscillators": [
            {"omega_P": float(p1), "omega_T": t1,
             "gamma": gamma_frac * MODE_LO, "unit": "cm^-1"},
            {"omega_P": float(p2), "omega_T": t2,
             "gamma": gamma_frac * MODE_HI, "unit": "cm^-1"},
        ],
    }


def single_oscillator(name, omega_P, omega_T, gamma, notes):
    return {
        "schema_version": 1,
        "name": name,
        "notes": notes,
        "oscillators": [
            {"omega_P": omega_P, "omega_T": omega_T,
             "gamma": gamma, "unit": "rad/s"},
        ],
    }


def main():
    out_dir = os.path.normpath(os.path.join(
        os.path.dirname(__file__), os.pardir, "tests", "fixtures"))
    os.makedirs(out_dir, exist_ok=True)

    docs = {
        "material_narrow.json": two_oscillator(
            "two-resonance narrow", 70.0, 85.0, 0.01,
            "Surface modes at 73 and 90 cm^-1 with ~1% fractional widths; "
            "oscillator placement keeps each mode well described by its own "
            "oscillator, the regime of the two-resonance closed form."),
        "material_broad.json": two_oscillator(
            "two-resonance broad", 65.0, 85.0, 0.03,
            "Surface modes at 73 and 90 cm^-1 with ~3% fractional widths; "
            "the strongly-dissipative scenario used for the rubidium "
            "headline estimates."),
        "material_toy.json": single_oscillator(
            "single-oscillator toy", 8e12, 1e13, 2e11,
            "Single-resonance material for brute-force golden comparisons."),
        "material_ldos.json": single_oscillator(
            "ldos fixture", 1.5e13, 1.884e13, 0.02 * 1.884e13,
            "Single-resonance material for mode-density magnitude checks."),
    }
    for fname, doc in docs.items():
        path = os.path.join(out_dir, fname)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        print(f"wrote {path}")
        for osc in doc["oscillators"]:
            print(f"  omega_P={osc['omega_P']!r} omega_T={osc['omega_T']!r} "
                  f"gamma={osc['gamma']!r} [{osc['unit']}]")


if __name__ == "__main__":
    main()
