"""Coincident-point scattering Green tensor above the half-space.

Two routes are provided on purpose and kept independent: the full k_rho
quadrature of the reflected-wave integral, and the nonretarded closed form
G = z^-3 * (c^2/(32 pi w^2)) r_p * diag(1,1,2).  Their agreement for
w z / c << 1 is a consistency check, not a shared code path.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import QuadratureFailure
from .material import fresnel, permittivity_imag_axis, reflection_nonretarded
from .units import C


@dataclass
class GreenTensor3:
    """3x3 complex Green tensor value at coincident points.

    For the planar geometry the tensor is diagonal with xx = yy.
    """

    components: np.ndarray
    omega: complex
    z: float

    def __post_init__(self):
        comp = np.asarray(self.components, dtype=complex)
        if comp.shape != (3, 3):
            raise ValueError("components must be 3x3")
        off = comp[~np.eye(3, dtype=bool)]
        if np.any(off != 0):
            raise ValueError("off-diagonal components must vanish")
        if comp[0, 0] != comp[1, 1]:
            raise ValueError("xx and yy components must be equal")
        comp.flags.writeable = False
        self.components = comp

    @property
    def diagonal(self):
        return np.diag(self.components)

    @property
    def trace(self):
        return complex(np.trace(self.components))

    @property
    def im_trace(self):
        return float(np.imag(np.trace(self.components)))

    def to_jsonable(self):
        """Nested lists of [re, im] pairs, ready for json.dumps."""
        return [[[float(c.real), float(c.imag)] for c in row]
                for row in self.components]


@dataclass(frozen=True)
class GPrime:
    """The z-independent nonretarded tensor (c^2/(32 pi w^2)) r_p diag(1,1,2)."""

    prefactor: complex
    diag_pattern: tuple = (1.0, 1.0, 2.0)

    def tensor(self):
        return self.prefactor * np.diag(self.diag_pattern)

    @property
    def trace(self):
        return self.prefactor * sum(self.diag_pattern)


def gprime(m, omega, pole_rtol=None):
    """G'(omega): prefactor (c^2/(32 pi omega^2)) * r_p(omega)."""
    kwargs = {} if pole_rtol is None else {"pole_rtol": pole_rtol}
    rp = reflection_nonretarded(m, omega, **kwargs)
    return GPrime(prefactor=C**2 / (32.0 * math.pi * omega**2) * rp)


def green_nonretarded(m, z, omega, pole_rtol=None):
    """Nonretarded closed form z^-3 G'(omega); omega may be complex."""
    if not z > 0:
        raise ValueError("z must be > 0")
    gp = gprime(m, omega, pole_rtol=pole_rtol)
    return GreenTensor3(components=gp.tensor() / z**3, omega=omega, z=z)


def _quad_complex(f, a, b, epsabs, epsrel, limit, label):
    """quad wrapper that escalates the subdivision limit once, then raises."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        for lim in (limit, 8 * limit):
            val, err = quad(f, a, b, epsabs=epsabs, epsrel=epsrel,
                            limit=lim, complex_func=True)
            err_mag = max(abs(np.real(err)), abs(np.imag(err)))
            if err_mag <= max(epsabs, epsrel * abs(val)) * 10.0:
                return val
    raise QuadratureFailure(
        f"green_full quadrature ({label}) did not reach tolerance "
        f"epsrel={epsrel:g} within {8 * limit} subdivisions")


def green_full(m, z, omega, rel_tol=1e-8, limit=200):
    """Full reflected-wave Green tensor by adaptive k_rho quadrature.

    The integral (i/8 pi) int dk_rho (k_rho/k_vz) e^{2 i k_vz z}
    [r_s diag(1,1,0) + r_p (c/omega)^2 diag(-k_vz^2, -k_vz^2, 2 k_rho^2)]
    is split at the light line k_rho = omega/c.  On the propagating side the
    substitution k_rho = (omega/c) sin(theta) removes the 1/k_vz singularity;
    on the evanescent side k_vz = i kappa turns the integrand into a smooth
    exponentially damped function of kappa.
    """
    if not z > 0:
        raise ValueError("z must be > 0")
    if not omega > 0:
        raise ValueError("omega must be > 0 (real) for the full quadrature")
    k0 = omega / C
    scale = C**2 / (32.0 * math.pi * omega**2 * z**3)
    epsabs = rel_tol * scale

    # propagating side: k_rho = k0 sin(theta), k_vz = k0 cos(theta),
    # (k_rho/k_vz) dk_rho = k0 sin(theta) dtheta
    def prop(theta, want_zz):
        s, c_ = math.sin(theta), math.cos(theta)
        k_rho = k0 * s
        r_s, r_p = fresnel(m, omega, k_rho)
        phase = np.exp(2j * k0 * c_ * z)
        common = 1j / (8.0 * math.pi) * k0 * s * phase
        if want_zz:
            return common * r_p * (2.0 * s * s)
        return common * (r_s - r_p * c_ * c_)

    # evanescent side: k_vz = i kappa, k_rho^2 = kappa^2 + k0^2,
    # (i/8 pi)(k_rho/k_vz) dk_rho = (1/8 pi) dkappa.  Rescaling to the
    # dimensionless u = 2 kappa z gives an O(1)-width e^{-u} integrand that
    # the infinite-interval transform samples well at any z.
    def evan(u, want_zz):
        kappa = u / (2.0 * z)
        k_rho = math.hypot(kappa, k0)
        r_s, r_p = fresnel(m, omega, k_rho)
        common = math.exp(-u) / (8.0 * math.pi) / (2.0 * z)
        if want_zz:
            return common * r_p * (C / omega) ** 2 * 2.0 * k_rho**2
        return common * (r_s + r_p * (C / omega) ** 2 * kappa**2)

    gxx = (_quad_complex(lambda t: prop(t, False), 0.0, math.pi / 2,
                         epsabs, rel_tol, limit, "xx propagating")
           + _quad_complex(lambda u: evan(u, False), 0.0, math.inf,
                           epsabs, rel_tol, limit, "xx evanescent"))
    gzz = (_quad_complex(lambda t: prop(t, True), 0.0, math.pi / 2,
                         epsabs, rel_tol, limit, "zz propagating")
           + _quad_complex(lambda u: evan(u, True), 0.0, math.inf,
                           epsabs, rel_tol, limit, "zz evanescent"))
    return GreenTensor3(components=np.diag([gxx, gxx, gzz]), omega=omega, z=z)


def green_full_imag_axis(m, z, xi, rel_tol=1e-8, limit=200):
    """Full reflected-wave Green tensor at omega = i*xi (xi > 0); real result.

    With kappa_v = sqrt(xi^2/c^2 + k_rho^2), kappa_d = sqrt(eps(i xi) xi^2/c^2
    + k_rho^2) the integrand is (1/8 pi)(k_rho/kappa_v) e^{-2 kappa_v z}
    [r_s diag(1,1,0) - (c/xi)^2 r_p diag(kappa_v^2, kappa_v^2, 2 k_rho^2)].
    """
    if not z > 0:
        raise ValueError("z must be > 0")
    if not xi > 0:
        raise ValueError("xi must be > 0")
    eps = float(permittivity_imag_axis(m, xi))
    k0 = xi / C
    scale = C**2 / (32.0 * math.pi * xi**2 * z**3)
    epsabs = rel_tol * scale

    # rescale to u = 2 k_rho z so the e^{-2 kappa_v z} damping has O(1) width
    def integrand(u, want_zz):
        k_rho = u / (2.0 * z)
        kv = math.hypot(k_rho, k0)
        kd = math.sqrt(eps * k0 * k0 + k_rho * k_rho)
        r_s = (kv - kd) / (kv + kd)
        r_p = (eps * kv - kd) / (eps * kv + kd)
        common = ((k_rho / kv) * math.exp(-2.0 * kv * z)
                  / (8.0 * math.pi) / (2.0 * z))
        if want_zz:
            return -common * (C / xi) ** 2 * r_p * 2.0 * k_rho**2
        return common * (r_s - (C / xi) ** 2 * r_p * kv**2)

    gxx = _quad_complex(lambda u: integrand(u, False), 0.0, math.inf,
                        epsabs, rel_tol, limit, "xx imag-axis")
    gzz = _quad_complex(lambda u: integrand(u, True), 0.0, math.inf,
                        epsabs, rel_tol, limit, "zz imag-axis")
    return GreenTensor3(components=np.diag([gxx, gxx, gzz]).astype(complex),
                        omega=1j * xi, z=z)


def im_trace_green(m, z, omega, green_mode="nonretarded"):
    """Tr Im G at coincident points, nonretarded or full, selected by flag."""
    if green_mode == "nonretarded":
        return green_nonretarded(m, z, omega).im_trace
    if green_mode == "full":
        return green_full(m, z, omega).im_trace
    raise ValueError(f"unknown green_mode {green_mode!r}")
