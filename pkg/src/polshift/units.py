"""Physical constants and unit conversion helpers.

Internal conventions: angular frequencies in rad/s, dipole moments in C·m,
energies in J, lengths in m, temperature in K.
"""

import scipy.constants as _const

C = _const.c                      # speed of light, m/s
HBAR = _const.hbar                # J s
KB = _const.k                     # J/K
MU0 = _const.mu_0                 # N/A^2
E_CHARGE = _const.e               # C
A0 = _const.physical_constants["Bohr radius"][0]   # m

#: 1 cm^-1 expressed as an angular frequency (rad/s): 2*pi*c*100
CM1 = 2.0 * _const.pi * C * 100.0

#: 1 Debye in C·m
DEBYE = 1.0e-21 / C

_FREQ_FACTORS = {
    "rad/s": 1.0,
    "Hz": 2.0 * _const.pi,
    "cm^-1": CM1,
}

_ENERGY_FACTORS = dict(_FREQ_FACTORS, eV=_const.e / HBAR)

_DIPOLE_FACTORS = {
    "C·m": 1.0,
    "C*m": 1.0,
    "Cm": 1.0,
    "e·a0": E_CHARGE * A0,
    "e*a0": E_CHARGE * A0,
    "ea0": E_CHARGE * A0,
    "Debye": DEBYE,
    "debye": DEBYE,
    "D": DEBYE,
}


def angular_frequency(value, unit):
    """Convert ``value`` in ``unit`` ('rad/s', 'Hz', 'cm^-1') to rad/s."""
    try:
        return float(value) * _FREQ_FACTORS[unit]
    except KeyError:
        raise ValueError(f"unknown frequency unit {unit!r}; expected one of "
                         f"{sorted(_FREQ_FACTORS)}") from None


def level_energy(value, unit):
    """Convert a level energy to its angular-frequency equivalent E/hbar (rad/s).

    Accepted units: 'rad/s', 'Hz', 'cm^-1', 'eV'.
    """
    try:
        return float(value) * _ENERGY_FACTORS[unit]
    except KeyError:
        raise ValueError(f"unknown energy unit {unit!r}; expected one of "
                         f"{sorted(_ENERGY_FACTORS)}") from None


def dipole_moment(value, unit):
    """Convert a dipole magnitude to C·m.  Accepted: 'C·m', 'e·a0', 'Debye'."""
    try:
        return float(value) * _DIPOLE_FACTORS[unit]
    except KeyError:
        raise ValueError(f"unknown dipole unit {unit!r}; expected one of "
                         f"{sorted(set(_DIPOLE_FACTORS))}") from None


def energy_report(value_joule):
    """Express an energy in the unit systems used throughout the package.

    Returns a dict with J, the angular-frequency equivalent s^-1 (E/hbar),
    Hz (E/h) and cm^-1.
    """
    w = value_joule / HBAR
    return {
        "J": value_joule,
        "s^-1": w,
        "Hz": w / (2.0 * _const.pi),
        "cm^-1": w / CM1,
    }
