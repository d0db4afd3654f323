#!/usr/bin/env python3
"""Generate the rubidium Rydberg fixture (tests/fixtures/rb_rydberg.json).

Level energies come from the standard quantum-defect expansion

    E(n, L, j) / hc = -R_Rb / (n - delta_Lj(n))^2,
    delta_Lj(n) = delta0 + delta2 / (n - delta0)^2,

with the measured 85Rb defects for S1/2, P1/2 and P3/2 series and the
reduced-mass Rydberg constant.  Radial matrix elements are computed in the
Coulomb approximation: the valence electron moves in a pure -1/r potential
with energy -1/(2 n*^2), and the radial equation is integrated inward with
the Numerov scheme on a logarithmic grid (r = e^s, u(r) = w(s) e^{s/2}):

    w''(s) = g(s) w(s),   g(s) = (l + 1/2)^2 - 2 r + r^2 / n*^2.

Inward integration from far outside the classical turning point is stable;
the solution is normalized by int u^2 dr = int w^2 e^{2s} ds and the radial
integral is int u1 u2 r dr = int w1 w2 e^{3s} ds.

Line strengths: for an alkali nS1/2 state the total S -> P strength e^2 R^2
splits between the fine-structure components as 1/3 (P1/2) and 2/3 (P3/2),
so the stored isotropic magnitudes are sqrt(1/3) |R| and sqrt(2/3) |R| in
units of e*a0.

Run from the repository root:  python3 tools/make_rb_fixture.py
"""

import json
import math
import os

import numpy as np

# 85Rb quantum defects (S1/2, P1/2, P3/2 series) and reduced-mass Rydberg
# constant in cm^-1
DEFECTS = {
    "S1/2": (3.1311804, 0.1784),
    "P1/2": (2.6548849, 0.2900),
    "P3/2": (2.6416737, 0.2950),
}
RYDBERG_CM = 109736.6067

H_STEP = 1e-3       # Numerov step in s = ln r
R_INNER = 2.0       # inner cutoff (a0); core region is negligible for n ~ 26
SEED = (1e-10, 2e-10)


def quantum_defect(series, n):
    d0, d2 = DEFECTS[series]
    return d0 + d2 / (n - d0) ** 2


def level_energy_cm(series, n):
    return -RYDBERG_CM / (n - quantum_defect(series, n)) ** 2


def numerov_inward(n_star, ell, s_grid):
    """w(s) on s_grid for the Coulomb-approximation radial problem."""
    r = np.exp(s_grid)
    g = (ell + 0.5) ** 2 - 2.0 * r + (r / n_star) ** 2
    f = 1.0 - (H_STEP ** 2 / 12.0) * g
    w = np.zeros_like(s_grid)
    w[-1] = SEED[0]
    w[-2] = SEED[1]
    for i in range(len(s_grid) - 2, 0, -1):
        w[i - 1] = ((12.0 - 10.0 * f[i]) * w[i] - f[i + 1] * w[i + 1]) / f[i - 1]
        # rescale to dodge overflow deep in the classically allowed region
        if abs(w[i - 1]) > 1e50:
            w[i - 1:] /= 1e50
    norm = np.trapezoid(w * w * np.exp(2.0 * s_grid), s_grid)
    return w / math.sqrt(norm)


def radial_integral(w1, w2, s_grid):
    return float(np.trapezoid(w1 * w2 * np.exp(3.0 * s_grid), s_grid))


def main():
    states = []
    for n in (26, 27):
        states.append((f"{n}S1/2", "S1/2", n, 0))
    for n in (24, 25, 26, 27, 28):
        states.append((f"{n}P1/2", "P1/2", n, 1))
        states.append((f"{n}P3/2", "P3/2", n, 1))

    n_star = {lab: n - quantum_defect(series, n)
              for lab, series, n, _ in states}
    energy = {lab: level_energy_cm(series, n)
              for lab, series, n, _ in states}

    r_max = 2.0 * max(n_star.values()) * (max(n_star.values()) + 15.0)
    s_lo, s_hi = math.log(R_INNER), math.log(r_max)
    npts = int(math.ceil((s_hi - s_lo) / H_STEP)) + 1
    s_grid = np.linspace(s_lo, s_hi, npts)

    wave = {lab: numerov_inward(n_star[lab], ell, s_grid)
            for lab, _, _, ell in states}

    dipoles = []
    radials = {}
    for s_lab in ("26S1/2", "27S1/2"):
        for lab, series, n, ell in states:
            if ell != 1:
                continue
            rad = radial_integral(wave[s_lab], wave[lab], s_grid)
            radials[(s_lab, lab)] = rad
            weight = 1.0 / 3.0 if series == "P1/2" else 2.0 / 3.0
            dipoles.append({
                "from": s_lab,
                "to": lab,
                "magnitude": math.sqrt(weight) * abs(rad),
                "unit": "e*a0",
            })

    doc = {
        "schema_version": 1,
        "name": "Rb85 Rydberg 27S-26S block",
        "notes": ("Quantum-defect level energies (85Rb S1/2, P1/2, P3/2 "
                  "series) and Coulomb-approximation Numerov radial "
                  "integrals; isotropic magnitudes carry the 1/3 and 2/3 "
                  "fine-structure weights of the S -> P line strength."),
        "states": [{"label": lab, "energy": energy[lab], "unit": "cm^-1"}
                   for lab, *_ in states],
        "dipoles": dipoles,
    }

    out = os.path.join(os.path.dirname(__file__), os.pardir,
                       "tests", "fixtures", "rb_rydberg.json")
    out = os.path.normpath(out)
    os.makedirs(os.path.dirname(out), exist_ok=True)
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    print(f"wrote {out}")

    print("\nlevels (cm^-1):")
    for lab, *_ in states:
        print(f"  {lab:7s} E = {energy[lab]:+12.4f}   n* = {n_star[lab]:.4f}")
    print("\nradial integrals (a0):")
    for (s_lab, p_lab), rad in sorted(radials.items()):
        print(f"  <{s_lab}|r|{p_lab}> = {rad:+12.3f}")


if __name__ == "__main__":
    main()
