#!/usr/bin/env python3
"""Compute the brute-force golden numbers (tests/fixtures/golden.json).

Every value here is evaluated with mpmath at 50 significant digits, from
formulas written independently of the library, sharing only the numeric
values of the physical constants (taken as the exact binary doubles the
library also uses, via repr round-trip).  The goldens pin:

* thermal occupation and the thermal weight sqrt[(nbar1 + 1) nbar2];
* the first Matsubara frequency at 300 K;
* the nonresonant shift of the two-level toy atom over the single-
  oscillator toy material (both lines, primed sum truncated at j = 200 —
  the tail beyond that is ~1e-11 relative, far below the comparison
  tolerance);
* the single-channel resonant amplitude for frozen mode/atom inputs;
* the mode-density (Im trace) peak for the ldos fixture material.

Run from the repository root:  python3 tools/make_golden.py
"""

import json
import math
import os

import mpmath as mp
import scipy.constants as sc

mp.mp.dps = 50

# exact binary doubles of the physical constants, promoted to mp
C = mp.mpf(repr(sc.c))
HBAR = mp.mpf(repr(sc.hbar))
KB = mp.mpf(repr(sc.k))
MU0 = mp.mpf(repr(sc.mu_0))
PI = mp.pi

# wavenumber conversion done in double precision first, exactly as a float
# caller would produce it, then promoted
CM1_F = 2.0 * math.pi * 299792458.0 * 100.0


def f(x):
    """Promote a binary double to mp exactly."""
    return mp.mpf(repr(float(x)))


def nbar(omega, T):
    return 1 / mp.expm1(HBAR * omega / (KB * T))


def eps_imag_axis(oscs, xi):
    return 1 + mp.fsum(P * P / (T * T + xi * xi + xi * G) for P, T, G in oscs)


def eps_real(oscs, w):
    return 1 + mp.fsum(P * P / (T * T - w * w - 1j * w * G)
                       for P, T, G in oscs)


def refl(e):
    return (e - 1) / (e + 1)


# --- fixtures -------------------------------------------------------------------

TOY_OSC = [(f(8e12), f(1e13), f(2e11))]          # (omega_P, omega_T, Gamma)
LDOS_OSC = [(f(1.5e13), f(1.884e13), f(0.02 * 1.884e13))]

OMEGA1_F = float(90.0 * CM1_F)   # upper mode (rad/s as a double)
OMEGA2_F = float(73.0 * CM1_F)   # lower mode


def golden_thermal():
    T = f(500.0)
    w1, w2 = f(OMEGA1_F), f(OMEGA2_F)
    n1, n2 = nbar(w1, T), nbar(w2, T)
    factor = mp.sqrt((n1 + 1) * n2)
    return {
        "inputs": {"omega1": OMEGA1_F, "omega2": OMEGA2_F, "T": 500.0},
        "nbar_omega2": float(n2),
        "thermal_factor": float(factor),
    }


def golden_matsubara_xi():
    val = 2 * PI * KB * f(300.0) / HBAR
    return {"inputs": {"T": 300.0, "j": 1}, "xi": float(val)}


def golden_nonresonant_toy():
    z, T = f(1e-6), f(400.0)
    w10, d = f(2.4e14), f(1e-29)
    xi1 = 2 * PI * KB * T / HBAR
    terms = []
    for j in range(201):
        xi = j * xi1
        rt = refl(eps_imag_axis(TOY_OSC, xi))
        t = (w10 / (w10 * w10 + xi * xi)) * rt
        terms.append(t / 2 if j == 0 else t)
    mats = -(MU0 * C ** 2 * KB * T / (12 * PI * HBAR * z ** 3)) \
        * d * d * mp.fsum(terms)
    rp = refl(eps_real(TOY_OSC, w10))
    photon = (MU0 * C ** 2 / (24 * PI * z ** 3)) \
        * nbar(w10, T) * d * d * rp.real
    return {
        "inputs": {"omega_10": 2.4e14, "dipole": 1e-29, "z": 1e-6, "T": 400.0,
                   "cutoff": 200, "material": "material_toy.json"},
        "matsubara": float(mats),
        "resonant_photon": float(photon),
        "total": float(mats + photon),
    }


def golden_u_eff():
    z = f(1e-6)
    w1, w2 = f(OMEGA1_F), f(OMEGA2_F)
    g1, g2 = f(0.01 * OMEGA1_F), f(0.01 * OMEGA2_F)
    omega_10 = f(OMEGA1_F - OMEGA2_F)   # exact resonance in doubles
    omega_k = f(-2e13)
    d0k, dk1 = f(2e-29), f(3e-29)

    def im_g_diag(w):
        pref = (C ** 2 / (32 * PI * w * w * z ** 3)) * refl(eps_real(TOY_OSC, w)).imag
        return [pref, pref, 2 * pref]

    ga, gb = im_g_diag(w1), im_g_diag(w2)
    tr1, tr2 = mp.fsum(ga), mp.fsum(gb)
    geom = (d0k * dk1 / 3) * mp.fsum(a * b for a, b in zip(ga, gb))
    # state 0 is the lower (final) state at zero energy, state 1 the upper
    # (initial) one at omega_10: omega_0k = -omega_k, omega_k1 = omega_k - omega_10
    w_0k = -omega_k
    w_k1 = omega_k - omega_10
    def lw(x):
        return x / (x * x + g1 * g1 / 4)
    u = -(MU0 * w1 * w2 / 2) * mp.sqrt(g1 * g2 / (tr1 * tr2)) \
        * geom * (lw(w1 + w_0k) - lw(w1 + w_k1))
    return {
        "inputs": {"Omega1": OMEGA1_F, "gamma1": 0.01 * OMEGA1_F,
                   "Omega2": OMEGA2_F, "gamma2": 0.01 * OMEGA2_F,
                   "omega_10": float(OMEGA1_F - OMEGA2_F),
                   "omega_k": -2e13, "d_0k": 2e-29, "d_k1": 3e-29,
                   "z": 1e-6, "material": "material_toy.json"},
        "u_eff": float(u),
    }


def golden_ldos_peak():
    z = f(1e-6)
    wT, wP = f(1.884e13), f(1.5e13)
    omega_c = float(math.sqrt(1.884e13 ** 2 + 1.5e13 ** 2 / 2.0))
    w = f(omega_c)
    val = (4 * C ** 2 / (32 * PI * w * w * z ** 3)) \
        * refl(eps_real(LDOS_OSC, w)).imag
    return {
        "inputs": {"omega": omega_c, "z": 1e-6,
                   "material": "material_ldos.json"},
        "im_trace": float(val),
    }


def main():
    doc = {
        "schema_version": 1,
        "notes": ("Brute-force reference values computed with 50-digit "
                  "arithmetic from independently written formulas; inputs "
                  "are exact binary doubles (repr round-trip)."),
        "thermal": golden_thermal(),
        "matsubara_xi_j1_300K": golden_matsubara_xi(),
        "nonresonant_toy": golden_nonresonant_toy(),
        "u_eff_single_channel": golden_u_eff(),
        "ldos_peak": golden_ldos_peak(),
    }
    out = os.path.normpath(os.path.join(
        os.path.dirname(__file__), os.pardir, "tests", "fixtures",
        "golden.json"))
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    print(f"wrote {out}")
    for key, val in doc.items():
        if isinstance(val, dict) and "inputs" in val:
            shown = {k: v for k, v in val.items() if k != "inputs"}
            print(f"  {key}: {shown}")


if __name__ == "__main__":
    main()
