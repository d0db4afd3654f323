"""Dielectric response of the half-space.

Drude-Lorentz permittivity on the real and imaginary frequency axes, Fresnel
and nonretarded reflection coefficients, and extraction of the surface-mode
(polariton) resonances as peaks of Im r_p.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .errors import NoModeFound, ParseError, PoleHit, SurfaceModePole
from .units import C, angular_frequency

SCHEMA_VERSION = 1

#: default relative tolerance below which |eps + 1| counts as "on the pole"
POLE_RTOL = 1e-9


@dataclass(frozen=True)
class Oscillator:
    """One Drude-Lorentz term (all parameters in rad/s)."""

    omega_P: float
    omega_T: float
    gamma_damp: float = 0.0

    def __post_init__(self):
        if not self.omega_P > 0:
            raise ValueError("omega_P must be > 0")
        if not self.omega_T > 0:
            raise ValueError("omega_T must be > 0")
        if self.gamma_damp < 0:
            raise ValueError("gamma_damp must be >= 0")

    @property
    def omega_L(self):
        """Longitudinal frequency sqrt(omega_T^2 + omega_P^2)."""
        return math.hypot(self.omega_T, self.omega_P)

    @property
    def omega_surface(self):
        """Surface-mode frequency sqrt(omega_T^2 + omega_P^2/2) of this term
        alone in the undamped limit (root of eps = -1)."""
        return math.sqrt(self.omega_T**2 + 0.5 * self.omega_P**2)


@dataclass(frozen=True)
class MaterialModel:
    """A half-space described by a sum of Drude-Lorentz oscillators.

    Oscillators are stored sorted ascending by omega_T (canonical form).
    """

    name: str
    oscillators: tuple

    def __post_init__(self):
        # An empty oscillator tuple is the vacuum half-space (eps = 1).
        oscs = tuple(self.oscillators)
        if any(not isinstance(o, Oscillator) for o in oscs):
            raise TypeError("oscillators must be Oscillator instances")
        object.__setattr__(self, "oscillators",
                           tuple(sorted(oscs, key=lambda o: o.omega_T)))

    @property
    def undamped(self):
        return all(o.gamma_damp == 0.0 for o in self.oscillators)


@dataclass(frozen=True)
class PolaritonMode:
    """One surface-polariton resonance.

    omega_center is the location of the Im r_p peak, linewidth its FWHM,
    [band_lo, band_hi] the frequency interval attributed to the mode, and
    narrow is set when the linewidth is small compared to the distance to
    the neighbouring mode centers.
    """

    omega_center: float
    linewidth: float
    band_lo: float
    band_hi: float
    narrow: bool = True
    im_rp_peak: float = float("nan")

    def __post_init__(self):
        if not self.linewidth > 0:
            raise ValueError("linewidth must be > 0")
        if not (self.band_lo < self.omega_center < self.band_hi):
            raise ValueError("band must bracket omega_center")


# --- permittivity -------------------------------------------------------------

def permittivity(m, omega):
    """Drude-Lorentz permittivity eps(omega) for complex angular frequency.

    eps = 1 + sum_j omega_Pj^2 / (omega_Tj^2 - omega^2 - i omega Gamma_j).
    Raises PoleHit when an undamped oscillator is evaluated exactly on its
    resonance.  Accepts scalars or numpy arrays.
    """
    omega = np.asarray(omega)
    eps = np.ones(omega.shape, dtype=complex)
    for j, o in enumerate(m.oscillators):
        denom = o.omega_T**2 - omega.astype(complex)**2 - 1j * omega * o.gamma_damp
        if np.any(denom == 0):
            raise PoleHit(
                f"permittivity pole of undamped oscillator {j} "
                f"(omega_T={o.omega_T!r}) hit exactly")
        eps = eps + o.omega_P**2 / denom
    return eps[()] if eps.ndim == 0 else eps


def permittivity_imag_axis(m, xi):
    """eps(i*xi) on the imaginary axis: real, > 1, decreasing in xi >= 0."""
    xi = np.asarray(xi, dtype=float)
    if np.any(xi < 0):
        raise ValueError("xi must be >= 0")
    eps = np.ones(xi.shape)
    for o in m.oscillators:
        eps = eps + o.omega_P**2 / (o.omega_T**2 + xi**2 + xi * o.gamma_damp)
    return eps[()] if eps.ndim == 0 else eps


def permittivity_derivative(m, omega):
    """Analytic d eps / d omega (complex)."""
    omega = np.asarray(omega)
    d = np.zeros(omega.shape, dtype=complex)
    for o in m.oscillators:
        denom = o.omega_T**2 - omega.astype(complex)**2 - 1j * omega * o.gamma_damp
        d = d + o.omega_P**2 * (2.0 * omega + 1j * o.gamma_damp) / denom**2
    return d[()] if d.ndim == 0 else d


# --- reflection ---------------------------------------------------------------

def reflection_nonretarded(m, omega, pole_rtol=POLE_RTOL):
    """Nonretarded p-reflection (eps - 1)/(eps + 1).

    Raises SurfaceModePole when |eps + 1| < pole_rtol * |eps - 1|, i.e. the
    evaluation sits numerically on a surface-mode pole.
    """
    eps = permittivity(m, omega)
    num = eps - 1.0
    den = eps + 1.0
    if np.any(np.abs(den) < pole_rtol * np.abs(num)):
        raise SurfaceModePole(
            "reflection_nonretarded evaluated on a surface-mode pole "
            f"(|eps+1| < {pole_rtol:g}*|eps-1|)")
    return num / den


def reflection_imag_axis(m, xi):
    """(eps(i xi) - 1)/(eps(i xi) + 1): real, in (0, 1), decreasing."""
    eps = permittivity_imag_axis(m, xi)
    return (eps - 1.0) / (eps + 1.0)


def _upper_halfplane_sqrt(arg):
    """Principal sqrt flipped so that Im >= 0 (decay away from the interface)."""
    root = np.sqrt(np.asarray(arg, dtype=complex))
    return np.where(root.imag < 0, -root, root)


def fresnel(m, omega, k_rho):
    """Fresnel reflection coefficients (r_s, r_p) of the half-space.

    k_vz = sqrt(omega^2/c^2 - k_rho^2), k_dz = sqrt(eps omega^2/c^2 - k_rho^2),
    both on the branch Im k >= 0;
    r_p = (eps k_vz - k_dz)/(eps k_vz + k_dz), r_s = (k_vz - k_dz)/(k_vz + k_dz).
    """
    if np.any(np.asarray(omega) <= 0):
        raise ValueError("omega must be > 0")
    k_rho = np.asarray(k_rho, dtype=float)
    if np.any(k_rho < 0):
        raise ValueError("k_rho must be >= 0")
    eps = permittivity(m, omega)
    k2 = (np.asarray(omega) / C) ** 2
    k_vz = _upper_halfplane_sqrt(k2 - k_rho**2)
    k_dz = _upper_halfplane_sqrt(eps * k2 - k_rho**2)
    r_s = (k_vz - k_dz) / (k_vz + k_dz)
    r_p = (eps * k_vz - k_dz) / (eps * k_vz + k_dz)
    if r_s.ndim == 0:
        return r_s[()], r_p[()]
    return r_s, r_p


# --- surface-mode extraction ----------------------------------------------------

def _im_rp(m, omega):
    return np.imag(reflection_nonretarded(m, omega))


def _ascending_eps_roots(m):
    """Real frequencies where Re eps crosses -1 from below (ascending).

    These are the surface-mode locations; the descending crossings just above
    each omega_T carry negligible Im r_p weight.
    """
    lo = 0.2 * min(o.omega_T for o in m.oscillators)
    hi = 1.5 * max(o.omega_L for o in m.oscillators)
    grid = np.linspace(lo, hi, 20001)
    f = np.real(permittivity(m, grid)) + 1.0
    roots = []
    sign_change = (f[:-1] < 0) & (f[1:] >= 0)
    for i in np.nonzero(sign_change)[0]:
        r = optimize.brentq(
            lambda w: np.real(permittivity(m, w)) + 1.0,
            grid[i], grid[i + 1], xtol=1e-13 * grid[i + 1], rtol=8.9e-16)
        roots.append(r)
    return roots


def _width_estimate(m, omega0):
    """FWHM estimate 2 Im eps / Re eps' at an ascending eps = -1 crossing."""
    im_eps = float(np.imag(permittivity(m, omega0)))
    deps = float(np.real(permittivity_derivative(m, omega0)))
    if im_eps <= 0 or deps <= 0:
        return None
    return 2.0 * im_eps / deps


def _bracket_half_max(m, center, half, step, direction, limit):
    """March from the peak until Im r_p drops below half; return bracket."""
    prev = center
    width = step
    for _ in range(80):
        w = center + direction * width
        if w <= limit[0] or w >= limit[1]:
            return None
        if _im_rp(m, w) < half:
            return (min(prev, w), max(prev, w))
        prev = w
        width *= 2.0
    return None


def find_polariton_modes(m, *, linewidth_override=None, pole_rtol=POLE_RTOL):
    """Locate surface-polariton modes of the material.

    Centers are the interior local maxima of Im r_p (refined from the
    ascending roots of Re eps = -1); linewidths are the full widths at half
    maximum of the Im r_p peak, found by bracketed root finding.  Modes are
    returned ascending in center frequency.  Band edges are the midpoints
    between neighbouring centers; the outermost edges are clipped at
    center +/- 5*linewidth.

    For a fully undamped material Im r_p vanishes identically, so there is no
    interior maximum; centers are then the eps = -1 roots and the linewidth
    must be supplied through ``linewidth_override`` (scalar or one value per
    mode), otherwise NoModeFound is raised.
    """
    if not m.oscillators:
        raise NoModeFound("vacuum half-space: r_p vanishes identically")
    roots = _ascending_eps_roots(m)
    if not roots:
        raise NoModeFound("Im r_p has no interior local maximum "
                          "(no ascending eps = -1 crossing)")

    if m.undamped:
        if linewidth_override is None:
            raise NoModeFound(
                "undamped material: Im r_p vanishes identically, no peak to "
                "measure; pass linewidth_override to set mode widths")
        overrides = np.broadcast_to(
            np.asarray(linewidth_override, dtype=float), (len(roots),))
        centers = list(roots)
        widths = [float(g) for g in overrides]
        peaks = [float("inf")] * len(roots)
    else:
        centers, widths, peaks = [], [], []
        for r in roots:
            g0 = _width_estimate(m, r)
            if g0 is None:
                continue
            # refine the peak of Im r_p inside a window around the crossing
            wlo, whi = r - 5.0 * g0, r + 5.0 * g0
            res = optimize.minimize_scalar(
                lambda w: -_im_rp(m, w), bounds=(wlo, whi), method="bounded",
                options={"xatol": 1e-13 * r})
            center = float(res.x)
            peak = -float(res.fun)
            half = 0.5 * peak
            lb = _bracket_half_max(m, center, half, g0, -1.0, (0.0, np.inf))
            rb = _bracket_half_max(m, center, half, g0, +1.0, (0.0, np.inf))
            if lb is None or rb is None:
                continue
            wl = optimize.brentq(lambda w: _im_rp(m, w) - half, *lb,
                                 xtol=1e-13 * center, rtol=8.9e-16)
            wr = optimize.brentq(lambda w: _im_rp(m, w) - half, *rb,
                                 xtol=1e-13 * center, rtol=8.9e-16)
            centers.append(center)
            widths.append(wr - wl)
            peaks.append(peak)
        if not centers:
            raise NoModeFound("Im r_p has no resolvable interior local maximum")

    order = np.argsort(centers)
    centers = [centers[i] for i in order]
    widths = [widths[i] for i in order]
    peaks = [peaks[i] for i in order]

    modes = []
    n = len(centers)
    for i in range(n):
        lo = (centers[i - 1] + centers[i]) / 2.0 if i > 0 \
            else centers[i] - 5.0 * widths[i]
        hi = (centers[i] + centers[i + 1]) / 2.0 if i < n - 1 \
            else centers[i] + 5.0 * widths[i]
        if n == 1:
            sep = math.inf
        elif 0 < i < n - 1:
            sep = (centers[i + 1] - centers[i - 1]) / 2.0
        else:
            sep = centers[1] - centers[0] if i == 0 \
                else centers[n - 1] - centers[n - 2]
        modes.append(PolaritonMode(
            omega_center=centers[i], linewidth=widths[i],
            band_lo=max(lo, 0.0), band_hi=hi,
            narrow=widths[i] < sep, im_rp_peak=peaks[i]))
    return modes


def mode_width_from_pole(m, mode, max_iter=100):
    """Alternative width estimate from the complex root of eps(omega) = -1.

    Newton iteration started at omega_center - i*linewidth/2; the FWHM
    equivalent is 2 |Im omega_pole|.  Returns (center, width) so it can be
    compared directly with the Im r_p fit used by find_polariton_modes.
    """
    w = complex(mode.omega_center, -0.5 * mode.linewidth)
    scale = abs(w)
    for _ in range(max_iter):
        f = permittivity(m, w) + 1.0
        df = permittivity_derivative(m, w)
        step = f / df
        w = w - step
        if abs(step) < 1e-14 * scale:
            break
    else:
        raise NoModeFound("complex-root iteration for eps = -1 did not converge")
    return abs(w.real), 2.0 * abs(w.imag)


def lorentzian_ldos_factor(mode, omega):
    """Lorentzian line-shape factor (gamma^2/4)/((omega-Omega)^2 + gamma^2/4).

    Equals 1 at the mode center and 1/2 at center +/- gamma/2.
    """
    if not mode.linewidth > 0:
        raise ValueError("mode linewidth must be > 0")
    q = 0.25 * mode.linewidth**2
    return q / ((np.asarray(omega) - mode.omega_center) ** 2 + q)


# --- JSON ingestion -------------------------------------------------------------

def _require(doc, key, path):
    if key not in doc:
        raise ParseError("missing required field", field=f"{path}{key}")
    return doc[key]


def material_from_dict(doc, path=""):
    """Build a MaterialModel from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise ParseError("material document must be an object", field=path or ".")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version!r}",
                         field=f"{path}schema_version")
    name = _require(doc, "name", path)
    oscs_doc = _require(doc, "oscillators", path)
    if not isinstance(oscs_doc, list) or not oscs_doc:
        raise ParseError("oscillators must be a non-empty list",
                         field=f"{path}oscillators")
    oscs = []
    for i, entry in enumerate(oscs_doc):
        p = f"{path}oscillators[{i}]."
        if not isinstance(entry, dict):
            raise ParseError("oscillator entry must be an object", field=p[:-1])
        unit = _require(entry, "unit", p)
        try:
            omega_P = angular_frequency(_require(entry, "omega_P", p), unit)
            omega_T = angular_frequency(_require(entry, "omega_T", p), unit)
            gamma = angular_frequency(entry.get("gamma", 0.0), unit)
        except (TypeError, ValueError) as exc:
            raise ParseError(str(exc), field=p[:-1]) from None
        try:
            oscs.append(Oscillator(omega_P=omega_P, omega_T=omega_T,
                                   gamma_damp=gamma))
        except ValueError as exc:
            raise ParseError(str(exc), field=p[:-1]) from None
    return MaterialModel(name=str(name), oscillators=tuple(oscs))


def material_to_dict(m):
    """Serialize a MaterialModel (frequencies in rad/s)."""
    return {
        "schema_version": SCHEMA_VERSION,
        "name": m.name,
        "oscillators": [
            {"omega_P": o.omega_P, "omega_T": o.omega_T,
             "gamma": o.gamma_damp, "unit": "rad/s"}
            for o in m.oscillators
        ],
    }


def load_material(path):
    """Load a material JSON file; parse errors carry the offending field path."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from None
    return material_from_dict(doc)
