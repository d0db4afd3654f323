"""Energy-shift formulas.

Nonresonant Casimir-Polder shift at finite temperature (Matsubara sum plus a
resonant-photon line), the resonant second-order atom-polariton amplitude
U_eff and its thermal weighting, the two-resonance closed form, the
one-polariton nonresonant estimate, and the composed total.

Conventions used throughout:

* omega_ab = omega_a - omega_b (signed transition frequencies);
* the thermal occupation in the resonant-photon line is evaluated at the
  signed transition frequency, so a downward transition (omega_kn < 0)
  contributes with weight -(nbar(|omega_kn|) + 1) -- emission plus stimulated
  emission -- while an upward transition contributes +nbar(omega_kn);
* the primed Matsubara sum takes the j = 0 term at half weight, and its
  integrand is evaluated in the analytically cancelled form (the 1/xi^2 of
  the Green tensor against the xi^2 prefactor), so there is no 0/0 at j = 0;
* energies are joules; reports carry s^-1 (E/hbar), Hz and cm^-1 alongside.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .atoms import channels as atom_channels
from .atoms import polarizability_iso, transitions_from
from .errors import (ConvergenceFailure, ModeAttributionError, NoChannels,
                     NoModeFound, OffResonance, ZeroTemperature)
from .greens import green_full, green_full_imag_axis, green_nonretarded, gprime
from .material import (find_polariton_modes, reflection_imag_axis,
                       reflection_nonretarded)
from .units import C, HBAR, KB, MU0, energy_report


@dataclass(frozen=True)
class Environment:
    """Atom-surface distance z (m) and temperature T (K)."""

    z: float
    T: float

    def __post_init__(self):
        if not self.z > 0:
            raise ValueError("z must be > 0")
        if self.T < 0:
            raise ValueError("T must be >= 0")


@dataclass(frozen=True)
class MatsubaraConfig:
    """Cutoff (max j) and relative tolerance for the Matsubara tail."""

    cutoff: int = 20000
    convergence_tol: float = 1e-9

    def __post_init__(self):
        if self.cutoff < 1:
            raise ValueError("cutoff must be >= 1")
        if not self.convergence_tol > 0:
            raise ValueError("convergence_tol must be > 0")


@dataclass
class ShiftReport:
    """Decomposed shift (all energies in J).

    total = nr_matsubara + nr_resonant_photon + r_shift holds exactly.
    """

    nr_matsubara: float
    nr_resonant_photon: float
    u_eff: float
    thermal_factor: float
    r_shift: float
    total: float
    meta: dict = field(default_factory=dict)

    def to_dict(self):
        doc = {
            "nr_matsubara": energy_report(self.nr_matsubara),
            "nr_resonant_photon": energy_report(self.nr_resonant_photon),
            "u_eff": energy_report(self.u_eff),
            "thermal_factor": self.thermal_factor,
            "r_shift": energy_report(self.r_shift),
            "total": energy_report(self.total),
        }
        if self.meta:
            doc["meta"] = dict(self.meta)
        return doc


def matsubara_xi(T, j):
    """Matsubara frequency xi_j = 2 pi j k_B T / hbar (rad/s)."""
    if T < 0:
        raise ValueError("T must be >= 0")
    if T == 0:
        raise ZeroTemperature(
            "Matsubara frequencies are undefined at T = 0; "
            "use a zero-temperature integral instead")
    if j < 0:
        raise ValueError("j must be >= 0")
    return 2.0 * math.pi * j * KB * T / HBAR


def thermal_occupation(omega, T):
    """Bose-Einstein occupation nbar(omega, T) = 1/(exp(hbar omega/kT) - 1).

    Returns 0 for T = 0 (and -1 for omega < 0, the T -> 0 limit of the same
    expression).  For omega < 0 at T > 0 the formula itself evaluates to
    -(nbar(|omega|) + 1), which is exactly the weight needed for downward
    transitions in the resonant-photon line.
    """
    if T < 0:
        raise ValueError("T must be >= 0")
    if omega == 0:
        raise ValueError("omega must be nonzero")
    if T == 0:
        return 0.0 if omega > 0 else -1.0
    x = HBAR * omega / (KB * T)
    if x > 700.0:  # expm1 overflows near 709.78; nbar underflows to 0 anyway
        return 0.0
    return 1.0 / math.expm1(x)


def _matsubara_sum(term, cutoff, tol):
    """Primed sum over j of term(j) with a power-law tail stop rule.

    term(0) enters at half weight.  Terms decay like j^-p with p >= 2 for
    every integrand used here, so once |t_j| * j drops below tol * |sum| the
    remaining tail is bounded by that same quantity (up to the 1/(p-1) < 1
    factor).  Raises ConvergenceFailure if the rule is not met by ``cutoff``.
    """
    t0 = 0.5 * term(0)
    total = t0
    scale = abs(t0)
    for j in range(1, cutoff + 1):
        tj = term(j)
        total += tj
        scale = max(scale, abs(total))
        if j >= 4 and abs(tj) * j <= tol * max(scale, 1e-300):
            return total
    raise ConvergenceFailure(
        f"Matsubara tail estimate exceeds convergence_tol={tol:g} "
        f"at cutoff={cutoff}")


def nonresonant_shift_parts(atom, n, m, env, cfg=None,
                            mode="nonretarded", green_mode="nonretarded"):
    """Nonresonant shift of level n, returned as (matsubara, resonant_photon).

    mode="nonretarded" sums the per-transition closed form built on
    z^-3 G'(omega):

        -(mu0 c^2 kB T)/(12 pi hbar z^3) * sum_k |d_nk|^2 *
            sum'_j [omega_kn/(omega_kn^2+xi_j^2)] (eps(i xi_j)-1)/(eps(i xi_j)+1)
        + (mu0 c^2)/(24 pi z^3) * sum_k nbar(omega_kn) |d_nk|^2 Re r_p(|omega_kn|)

    mode="general" evaluates the same physics through the tensor route
    mu0 kB T sum'_j xi_j^2 alpha(i xi_j) Tr G(i xi_j)
    + mu0 sum_k omega_kn^2 nbar(omega_kn) d.Re G(|omega_kn|).d,
    with G either the nonretarded closed form or the full quadrature,
    selected by green_mode.  The two modes are independent code paths and
    must agree in the nonretarded regime.
    """
    if env.T == 0:
        raise ZeroTemperature("nonresonant shift is defined here for T > 0")
    cfg = cfg or MatsubaraConfig()
    trans = transitions_from(atom, n)
    if not trans:
        return 0.0, 0.0
    z, T = env.z, env.T
    xi1 = matsubara_xi(T, 1)

    if mode == "nonretarded":
        d2 = [(w_kn, d * d) for _, w_kn, d in trans]

        def term(j):
            xi = j * xi1
            rt = float(reflection_imag_axis(m, xi))
            s = sum(dd * w / (w * w + xi * xi) for w, dd in d2)
            return s * rt

        mats = -(MU0 * C**2 * KB * T / (12.0 * math.pi * HBAR * z**3)) \
            * _matsubara_sum(term, cfg.cutoff, cfg.convergence_tol)

        photon = 0.0
        for _, w_kn, d in trans:
            occ = thermal_occupation(w_kn, T)
            rp = complex(reflection_nonretarded(m, abs(w_kn)))
            photon += occ * d * d * rp.real
        photon *= MU0 * C**2 / (24.0 * math.pi * z**3)
        return mats, photon

    if mode != "general":
        raise ValueError(f"unknown mode {mode!r}")

    # tensor route: xi^2 Tr G(i xi) with the 1/xi^2 of the nonretarded tensor
    # cancelled analytically, so j = 0 is regular
    def xi2_tr_g(xi):
        if green_mode == "nonretarded" or xi == 0.0:
            rt = float(reflection_imag_axis(m, xi))
            return -(C**2 / (8.0 * math.pi * z**3)) * rt
        if green_mode == "full":
            return xi * xi * float(np.real(
                green_full_imag_axis(m, z, xi).trace))
        raise ValueError(f"unknown green_mode {green_mode!r}")

    def term(j):
        xi = j * xi1
        return polarizability_iso(atom, n, xi) * xi2_tr_g(xi)

    mats = MU0 * KB * T * _matsubara_sum(term, cfg.cutoff, cfg.convergence_tol)

    photon = 0.0
    for k_label, w_kn, d in trans:
        occ = thermal_occupation(w_kn, T)
        if green_mode == "nonretarded":
            g = green_nonretarded(m, z, abs(w_kn))
        else:
            g = green_full(m, z, abs(w_kn))
        dip = atom.dipole(n, k_label)
        re_diag = np.real(g.diagonal)
        if dip.components is not None:
            coupling = sum(c * c * gd for c, gd in
                           zip(dip.components, re_diag))
        else:
            coupling = d * d / 3.0 * float(np.sum(re_diag))
        photon += w_kn * w_kn * occ * coupling
    photon *= MU0
    return mats, photon


def nonresonant_shift(atom, n, m, env, cfg=None,
                      mode="nonretarded", green_mode="nonretarded"):
    """Total nonresonant Casimir-Polder shift of level n (J)."""
    mats, photon = nonresonant_shift_parts(atom, n, m, env, cfg, mode,
                                           green_mode)
    return mats + photon


def _lorentz_weight(x, gamma1):
    """x / (x^2 + gamma1^2/4) -- the detuning weight of the channel sum."""
    return x / (x * x + 0.25 * gamma1 * gamma1)


def _check_resonance(omega_10, mode1, mode2, resonance_tol):
    detuning = mode1.omega_center - (omega_10 + mode2.omega_center)
    window = resonance_tol * (mode1.linewidth + mode2.linewidth)
    if abs(detuning) > window:
        raise OffResonance(
            f"detuning {detuning:.6g} rad/s exceeds tolerance "
            f"{window:.6g} rad/s for Omega1 ~ omega_10 + Omega2")
    return detuning


def u_eff(atom, upper, lower, mode1, mode2, m, env,
          green_mode="nonretarded", resonance_tol=1.0):
    """Resonant second-order atom-polariton amplitude (J).

    Evaluates

        U = -(mu0 Omega1 Omega2 / 2)
            sqrt(gamma1 gamma2 / (Tr ImG(Omega1) Tr ImG(Omega2)))
            sum_k { Tr[ImG(O1) d_0k(x)d_k1 ImG(O2)] W(O1 + omega_0k)
                  - Tr[ImG(O1) d_k1(x)d_0k ImG(O2)] W(O1 + omega_k1) },

    with W(x) = x/(x^2 + gamma1^2/4), on the polariton pair (mode1, mode2)
    satisfying Omega1 ~ omega_10 + Omega2 within resonance_tol*(gamma1+gamma2).
    green_mode selects the Im G tensors (nonretarded closed form or full
    quadrature); with "nonretarded" this must agree identically with
    u_eff_nonretarded_form.
    """
    omega_10 = atom.transition_frequency(upper, lower)
    _check_resonance(omega_10, mode1, mode2, resonance_tol)
    chans = atom_channels(atom, upper, lower)
    if not chans:
        raise NoChannels(
            f"no intermediate state couples {lower!r} and {upper!r}")

    o1, o2 = mode1.omega_center, mode2.omega_center
    g1, g2 = mode1.linewidth, mode2.linewidth
    if green_mode == "nonretarded":
        t1 = green_nonretarded(m, env.z, o1)
        t2 = green_nonretarded(m, env.z, o2)
    elif green_mode == "full":
        t1 = green_full(m, env.z, o1)
        t2 = green_full(m, env.z, o2)
    else:
        raise ValueError(f"unknown green_mode {green_mode!r}")
    im1 = np.imag(t1.diagonal)
    im2 = np.imag(t2.diagonal)
    tr1, tr2 = float(np.sum(im1)), float(np.sum(im2))
    if tr1 <= 0.0 or tr2 <= 0.0:
        raise NoModeFound(
            "Tr Im G vanishes at a mode center (lossless material?); "
            "no polariton line density to couple to")

    total = 0.0
    for ch in chans:
        dip0 = atom.dipole(lower, ch.k_label)
        dip1 = atom.dipole(ch.k_label, upper)
        if dip0.components is not None and dip1.components is not None:
            geom = sum(a * u * v * b for a, u, v, b in
                       zip(im1, dip0.components, dip1.components, im2))
        else:
            geom = ch.d_0k * ch.d_k1 / 3.0 * float(np.sum(im1 * im2))
        total += geom * (_lorentz_weight(o1 + ch.omega_0k, g1)
                         - _lorentz_weight(o1 + ch.omega_k1, g1))
    pref = -0.5 * MU0 * o1 * o2 * math.sqrt(g1 * g2 / (tr1 * tr2))
    return pref * total


def u_eff_nonretarded_form(atom, upper, lower, mode1, mode2, m, z,
                           resonance_tol=1.0):
    """Second, independent route for the nonretarded amplitude.

    Uses the z-free G'(omega) tensors with the explicit z^-3 prefactor:

        U = -(mu0 Omega1 Omega2 / (2 z^3))
            sqrt(gamma1 gamma2 / (Tr ImG'(O1) Tr ImG'(O2)))
            sum_k { ... same channel braces on ImG' ... }.

    Must agree with u_eff(green_mode="nonretarded") to machine precision.
    """
    omega_10 = atom.transition_frequency(upper, lower)
    _check_resonance(omega_10, mode1, mode2, resonance_tol)
    chans = atom_channels(atom, upper, lower)
    if not chans:
        raise NoChannels(
            f"no intermediate state couples {lower!r} and {upper!r}")

    o1, o2 = mode1.omega_center, mode2.omega_center
    g1, g2 = mode1.linewidth, mode2.linewidth
    gp1 = np.imag(np.diag(gprime(m, o1).tensor()))
    gp2 = np.imag(np.diag(gprime(m, o2).tensor()))
    tr1, tr2 = float(np.sum(gp1)), float(np.sum(gp2))
    if tr1 <= 0.0 or tr2 <= 0.0:
        raise NoModeFound(
            "Tr Im G' vanishes at a mode center (lossless material?)")

    total = 0.0
    for ch in chans:
        dip0 = atom.dipole(lower, ch.k_label)
        dip1 = atom.dipole(ch.k_label, upper)
        if dip0.components is not None and dip1.components is not None:
            geom = sum(a * u * v * b for a, u, v, b in
                       zip(gp1, dip0.components, dip1.components, gp2))
        else:
            geom = ch.d_0k * ch.d_k1 / 3.0 * float(np.sum(gp1 * gp2))
        total += geom * (_lorentz_weight(o1 + ch.omega_0k, g1)
                         - _lorentz_weight(o1 + ch.omega_k1, g1))
    pref = -0.5 * MU0 * o1 * o2 / z**3 * math.sqrt(g1 * g2 / (tr1 * tr2))
    return pref * total


def thermal_factor(mode1, mode2, T):
    """sqrt[(nbar(Omega1) + 1) nbar(Omega2)]; zero at T = 0."""
    if T == 0:
        return 0.0
    n1 = thermal_occupation(mode1.omega_center, T)
    n2 = thermal_occupation(mode2.omega_center, T)
    return math.sqrt((n1 + 1.0) * n2)


def resonant_shift(u, mode1, mode2, T):
    """Thermal resonant shift U_eff * sqrt[(nbar(Omega1)+1) nbar(Omega2)].

    Exactly zero at T = 0: the polariton at Omega2 must be thermally
    populated before the resonant exchange can happen.
    """
    if T == 0:
        return 0.0
    return u * thermal_factor(mode1, mode2, T)


def resonant_shift_closed_form(*, omega_P1, omega_P2, Omega1, Omega2, gamma1,
                               channels, z, T, include_thermal=True):
    """Two-resonance closed form of the resonant shift.

        -(mu0 c^2 / (128 pi z^3)) (omega_P1 omega_P2 / sqrt(Omega1 Omega2))
        * sqrt[(nbar(Omega1)+1) nbar(Omega2)]
        * sum_k (5 |d_0k| |d_k1| / 12)
              { W(Omega1+omega_0k) - W(Omega1+omega_k1) },

    W(x) = x/(x^2 + gamma1^2/4).  ``channels`` is an iterable of
    TransitionChannel (or anything with d_0k, d_k1, omega_0k, omega_k1).
    With include_thermal=False the thermal square root is left out, giving
    the bare closed-form amplitude.
    """
    if not z > 0:
        raise ValueError("z must be > 0")
    acc = 0.0
    for ch in channels:
        acc += (5.0 * ch.d_0k * ch.d_k1 / 12.0) * (
            _lorentz_weight(Omega1 + ch.omega_0k, gamma1)
            - _lorentz_weight(Omega1 + ch.omega_k1, gamma1))
    pref = -(MU0 * C**2 / (128.0 * math.pi * z**3)) \
        * omega_P1 * omega_P2 / math.sqrt(Omega1 * Omega2)
    out = pref * acc
    if include_thermal:
        if T == 0:
            return 0.0
        n1 = thermal_occupation(Omega1, T)
        n2 = thermal_occupation(Omega2, T)
        out *= math.sqrt((n1 + 1.0) * n2)
    return out


def attribute_modes(m, modes):
    """Pair each polariton mode with the material oscillator it belongs to.

    A mode at Omega is attributed to the oscillator with the largest
    omega_T below Omega (surface modes sit above their oscillator's
    transverse resonance).  Raises ModeAttributionError when the pairing is
    not one-to-one.
    """
    oscs = m.oscillators
    picks = []
    for mode in modes:
        below = [o for o in oscs if o.omega_T < mode.omega_center]
        if not below:
            raise ModeAttributionError(
                f"mode at {mode.omega_center:.6g} rad/s lies below every "
                "oscillator resonance")
        picks.append(max(below, key=lambda o: o.omega_T))
    if len({id(o) for o in picks}) != len(picks):
        raise ModeAttributionError(
            "two modes attribute to the same oscillator; "
            "closed form needs a one-to-one pairing")
    return picks


def find_resonant_pair(modes, omega_10):
    """Ordered mode pair (mode1, mode2) minimizing |Omega1-(omega_10+Omega2)|.

    Returns None when fewer than two modes are available.  Tolerance checks
    are left to the caller.
    """
    if len(modes) < 2:
        return None
    best = None
    for a in modes:
        for b in modes:
            if a is b:
                continue
            det = abs(a.omega_center - (omega_10 + b.omega_center))
            if best is None or det < best[0]:
                best = (det, a, b)
    return best[1], best[2]


def nonresonant_one_polariton(*, omega_P, omega_T, gamma_damp, transitions,
                              z, T, Omega=None):
    """One-polariton nonresonant estimate for a single-oscillator material.

        -(mu0 c^2 / (48 pi z^3)) (kB T / hbar)
            sum_nu omega_P^2 |d_1nu|^2 / (Omega^2 omega_nu1)
        + (mu0 c^2 / (24 pi z^3))
            sum_nu nbar(omega_nu1) |d_1nu|^2
                Re[ omega_P^2 / (2(omega_T^2 - omega_1nu^2
                                    - i omega_1nu Gamma) + omega_P^2) ],

    with omega_1nu = -omega_nu1 and Omega = sqrt(omega_T^2 + omega_P^2/2)
    unless given.  The first line is the leading (j = 0) Matsubara behaviour
    of the per-transition sum; note r_p(i*0) = omega_P^2/(2 Omega^2), which
    fixes the Omega^2 in the denominator on dimensional grounds.
    ``transitions`` is an iterable of (|d_1nu| in C.m, omega_nu1 in rad/s).
    """
    if not z > 0:
        raise ValueError("z must be > 0")
    if Omega is None:
        Omega = math.sqrt(omega_T**2 + 0.5 * omega_P**2)
    line1 = 0.0
    line2 = 0.0
    for d, w_nu1 in transitions:
        line1 += omega_P**2 * d * d / (Omega**2 * w_nu1)
        w_1nu = -w_nu1
        r = omega_P**2 / (2.0 * (omega_T**2 - w_1nu**2 - 1j * w_1nu
                                 * gamma_damp) + omega_P**2)
        occ = thermal_occupation(w_nu1, T) if T > 0 else (
            0.0 if w_nu1 > 0 else -1.0)
        line2 += occ * d * d * r.real
    out1 = -(MU0 * C**2 / (48.0 * math.pi * z**3)) * (KB * T / HBAR) * line1
    out2 = (MU0 * C**2 / (24.0 * math.pi * z**3)) * line2
    return out1 + out2


def total_shift(atom, upper, lower, m, env, cfg=None,
                green_mode="nonretarded", resonance_tol=1.0,
                use_closed_form=False, modes=None, linewidth_override=None):
    """Compose the nonresonant and resonant parts into a ShiftReport.

    The nonresonant part is the shift of the ``upper`` level.  The resonant
    part needs a polariton pair with Omega1 ~ omega_10 + Omega2: if the
    material has fewer than two modes the resonant part is reported as zero;
    if a pair exists but violates the resonance window, OffResonance
    propagates.  With use_closed_form=True the amplitude comes from the
    two-resonance closed form (modes paired one-to-one with oscillators)
    instead of the Green-tensor channel sum.
    """
    nr_mode = "nonretarded" if green_mode == "nonretarded" else "general"
    mats, photon = nonresonant_shift_parts(
        atom, upper, m, env, cfg, mode=nr_mode, green_mode=green_mode)

    if modes is None:
        modes = find_polariton_modes(m, linewidth_override=linewidth_override)
    omega_10 = atom.transition_frequency(upper, lower)
    pair = find_resonant_pair(modes, omega_10)

    meta = {"z": env.z, "T": env.T, "upper": upper, "lower": lower,
            "omega_10": omega_10, "green_mode": green_mode,
            "n_modes": len(modes)}
    u = 0.0
    tf = 0.0
    r = 0.0
    if pair is not None:
        mode1, mode2 = pair
        meta.update({
            "Omega1": mode1.omega_center, "gamma1": mode1.linewidth,
            "Omega2": mode2.omega_center, "gamma2": mode2.linewidth,
            "detuning": mode1.omega_center
            - (omega_10 + mode2.omega_center),
        })
        tf = thermal_factor(mode1, mode2, env.T)
        try:
            if use_closed_form:
                osc1, osc2 = attribute_modes(m, [mode1, mode2])
                chans = atom_channels(atom, upper, lower)
                if not chans:
                    raise NoChannels(
                        f"no intermediate state couples {lower!r} and "
                        f"{upper!r}")
                _check_resonance(omega_10, mode1, mode2, resonance_tol)
                u = resonant_shift_closed_form(
                    omega_P1=osc1.omega_P, omega_P2=osc2.omega_P,
                    Omega1=mode1.omega_center, Omega2=mode2.omega_center,
                    gamma1=mode1.linewidth, channels=chans,
                    z=env.z, T=env.T, include_thermal=False)
            else:
                u = u_eff(atom, upper, lower, mode1, mode2, m, env,
                          green_mode=green_mode,
                          resonance_tol=resonance_tol)
            r = resonant_shift(u, mode1, mode2, env.T)
        except NoChannels:
            meta["resonant_skipped"] = "no channels"
            u = tf = r = 0.0
    else:
        meta["resonant_skipped"] = "fewer than two polariton modes"

    return ShiftReport(
        nr_matsubara=mats, nr_resonant_photon=photon, u_eff=u,
        thermal_factor=tf, r_shift=r, total=mats + photon + r, meta=meta)
