"""Finite-temperature atom-surface dispersion shifts near a planar dielectric.

The package splits into five layers:

``material``
    Drude-Lorentz permittivity models, nonretarded reflection, and
    surface-polariton mode extraction.
``greens``
    Coincident-point scattering Green tensors above a half space, both as
    full wavevector quadratures and in the nonretarded closed form.
``atoms``
    Level/dipole bookkeeping, transition channels, and the isotropic
    imaginary-frequency polarizability.
``potentials``
    Nonresonant (Matsubara) and resonant (atom-polariton) level shifts and
    their combination into a total.
``cli``
    The ``shift`` command-line tool (point evaluations, (z, T) scans, and
    mode tables).
"""

from .atoms import (
    AtomSpec,
    AtomicState,
    DipoleElement,
    TransitionChannel,
    atom_from_dict,
    atom_to_dict,
    channels,
    load_atom,
    polarizability_iso,
    transitions_from,
)
from .errors import (
    ConvergenceFailure,
    DanglingReference,
    ModeAttributionError,
    NoChannels,
    NoModeFound,
    OffResonance,
    ParseError,
    PhysicsError,
    PoleHit,
    PolshiftError,
    QuadratureFailure,
    SurfaceModePole,
    ZeroTemperature,
)
from .greens import (
    GreenTensor3,
    GPrime,
    gprime,
    green_full,
    green_full_imag_axis,
    green_nonretarded,
    im_trace_green,
)
from .material import (
    MaterialModel,
    Oscillator,
    PolaritonMode,
    find_polariton_modes,
    fresnel,
    load_material,
    lorentzian_ldos_factor,
    material_from_dict,
    material_to_dict,
    mode_width_from_pole,
    permittivity,
    permittivity_derivative,
    permittivity_imag_axis,
    reflection_imag_axis,
    reflection_nonretarded,
)
from .potentials import (
    Environment,
    MatsubaraConfig,
    ShiftReport,
    attribute_modes,
    find_resonant_pair,
    matsubara_xi,
    nonresonant_one_polariton,
    nonresonant_shift,
    nonresonant_shift_parts,
    resonant_shift,
    resonant_shift_closed_form,
    thermal_factor,
    thermal_occupation,
    total_shift,
    u_eff,
    u_eff_nonretarded_form,
)

__all__ = [
    "AtomSpec",
    "AtomicState",
    "ConvergenceFailure",
    "DanglingReference",
    "DipoleElement",
    "Environment",
    "GPrime",
    "GreenTensor3",
    "MaterialModel",
    "MatsubaraConfig",
    "ModeAttributionError",
    "NoChannels",
    "NoModeFound",
    "OffResonance",
    "Oscillator",
    "ParseError",
    "PhysicsError",
    "PolaritonMode",
    "PoleHit",
    "PolshiftError",
    "QuadratureFailure",
    "ShiftReport",
    "SurfaceModePole",
    "TransitionChannel",
    "ZeroTemperature",
    "atom_from_dict",
    "atom_to_dict",
    "attribute_modes",
    "channels",
    "find_polariton_modes",
    "find_resonant_pair",
    "fresnel",
    "gprime",
    "green_full",
    "green_full_imag_axis",
    "green_nonretarded",
    "im_trace_green",
    "load_atom",
    "load_material",
    "lorentzian_ldos_factor",
    "material_from_dict",
    "material_to_dict",
    "matsubara_xi",
    "mode_width_from_pole",
    "nonresonant_one_polariton",
    "nonresonant_shift",
    "nonresonant_shift_parts",
    "permittivity",
    "permittivity_derivative",
    "permittivity_imag_axis",
    "polarizability_iso",
    "reflection_imag_axis",
    "reflection_nonretarded",
    "resonant_shift",
    "resonant_shift_closed_form",
    "thermal_factor",
    "thermal_occupation",
    "total_shift",
    "transitions_from",
    "u_eff",
    "u_eff_nonretarded_form",
]

__version__ = "0.1.0"
