"""Dielectric response, reflection coefficients, and polariton modes."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

import polshift as ps
from polshift.units import CM1

# ---------------------------------------------------------------------------
# Oscillator / MaterialModel construction
# ---------------------------------------------------------------------------


def test_oscillator_rejects_bad_parameters():
    with pytest.raises(ValueError):
        ps.Oscillator(omega_P=0.0, omega_T=1e13, gamma_damp=0.0)
    with pytest.raises(ValueError):
        ps.Oscillator(omega_P=1e13, omega_T=-1e13, gamma_damp=0.0)
    with pytest.raises(ValueError):
        ps.Oscillator(omega_P=1e13, omega_T=1e13, gamma_damp=-1.0)


def test_material_sorts_oscillators_by_omega_T():
    hi = ps.Oscillator(omega_P=1e13, omega_T=2e13, gamma_damp=1e11)
    lo = ps.Oscillator(omega_P=1e13, omega_T=1e13, gamma_damp=1e11)
    m = ps.MaterialModel("pair", oscillators=(hi, lo))
    assert [o.omega_T for o in m.oscillators] == [1e13, 2e13]


def test_material_rejects_non_oscillator_entries():
    with pytest.raises(TypeError):
        ps.MaterialModel("bad", oscillators=(1.0,))


def test_vacuum_material_is_permitted_in_memory():
    # eps = 1 half-space: useful analytic limit, not loadable from file.
    m = ps.MaterialModel("vacuum", oscillators=())
    assert ps.permittivity(m, 1e13) == 1.0 + 0.0j
    assert ps.permittivity_imag_axis(m, 1e13) == 1.0


# ---------------------------------------------------------------------------
# permittivity (real axis)
# ---------------------------------------------------------------------------


def test_permittivity_static_single_oscillator():
    m = ps.MaterialModel(
        "unit", oscillators=(ps.Oscillator(omega_P=1.0, omega_T=1.0),))
    assert ps.permittivity(m, 0.0) == pytest.approx(2.0 + 0.0j, rel=0, abs=0)


def test_permittivity_high_frequency_transparency(material_broad):
    eps = ps.permittivity(material_broad, 1e20)
    assert abs(eps - 1.0) < 1e-8


def test_permittivity_lossy_substitution():
    # omega = omega_T makes the real part of the denominator vanish:
    # eps = 1 + 1/(-0.1i) = 1 + 10i.
    m = ps.MaterialModel(
        "unit", oscillators=(ps.Oscillator(omega_P=1.0, omega_T=1.0,
                                           gamma_damp=0.1),))
    assert ps.permittivity(m, 1.0) == pytest.approx(1.0 + 10.0j, rel=1e-12)


def test_permittivity_pole_hit_undamped():
    m = ps.MaterialModel(
        "undamped", oscillators=(ps.Oscillator(omega_P=1e13, omega_T=1e13),))
    with pytest.raises(ps.PoleHit):
        ps.permittivity(m, 1e13)


@settings(max_examples=60)
@given(
    omega_P=st.floats(1e10, 1e15),
    omega_T=st.floats(1e10, 1e15),
    gamma=st.floats(1e8, 1e13),
    omega=st.floats(1e9, 1e16),
)
def test_permittivity_absorptive_sign(omega_P, omega_T, gamma, omega):
    """Im eps > 0 for every real omega > 0 once damping is present."""
    m = ps.MaterialModel(
        "h", oscillators=(ps.Oscillator(omega_P, omega_T, gamma),))
    assert ps.permittivity(m, omega).imag > 0.0


# ---------------------------------------------------------------------------
# permittivity (imaginary axis)
# ---------------------------------------------------------------------------


def test_imag_axis_matches_static_limit(material_broad):
    assert ps.permittivity_imag_axis(material_broad, 0.0) == pytest.approx(
        ps.permittivity(material_broad, 0.0).real, rel=1e-14)


def test_imag_axis_unit_substitution():
    m = ps.MaterialModel(
        "unit", oscillators=(ps.Oscillator(omega_P=1.0, omega_T=1.0),))
    assert ps.permittivity_imag_axis(m, 1.0) == pytest.approx(1.5, rel=1e-15)


def test_imag_axis_large_xi_limit(material_broad):
    assert ps.permittivity_imag_axis(material_broad, 1e20) == pytest.approx(
        1.0, abs=1e-8)


@settings(max_examples=60)
@given(xi_lo=st.floats(0.0, 1e15), step=st.floats(1e9, 1e15))
def test_imag_axis_real_decreasing_above_one(material_broad, xi_lo, step):
    lo = ps.permittivity_imag_axis(material_broad, xi_lo)
    hi = ps.permittivity_imag_axis(material_broad, xi_lo + step)
    assert isinstance(lo, float)
    assert lo > hi > 1.0


# ---------------------------------------------------------------------------
# reflection_nonretarded
# ---------------------------------------------------------------------------


def test_reflection_vacuum_is_zero():
    m = ps.MaterialModel("vacuum", oscillators=())
    assert ps.reflection_nonretarded(m, 1e13) == 0.0 + 0.0j


def test_reflection_high_frequency_vanishes(material_broad):
    assert abs(ps.reflection_nonretarded(material_broad, 1e20)) < 1e-8


def test_reflection_lossy_substitution():
    # eps = 1 + 10i  ->  r = 10i/(2+10i).
    m = ps.MaterialModel(
        "unit", oscillators=(ps.Oscillator(omega_P=1.0, omega_T=1.0,
                                           gamma_damp=0.1),))
    expected = 10j / (2 + 10j)
    assert ps.reflection_nonretarded(m, 1.0) == pytest.approx(
        expected, rel=1e-12)


def test_reflection_surface_mode_pole():
    m = ps.MaterialModel(
        "undamped", oscillators=(ps.Oscillator(omega_P=1e13, omega_T=1e13),))
    surface = math.sqrt(1e13**2 + 1e13**2 / 2.0)
    with pytest.raises(ps.SurfaceModePole):
        ps.reflection_nonretarded(m, surface)
    # A wider pole guard trips further from the exact crossing.
    with pytest.raises(ps.SurfaceModePole):
        ps.reflection_nonretarded(m, surface * (1 + 1e-7), pole_rtol=1e-3)


# ---------------------------------------------------------------------------
# fresnel
# ---------------------------------------------------------------------------


def test_fresnel_vacuum_no_interface():
    m = ps.MaterialModel("vacuum", oscillators=())
    r_s, r_p = ps.fresnel(m, 1e13, 5e6)
    assert r_s == 0.0 + 0.0j
    assert r_p == 0.0 + 0.0j


def test_fresnel_normal_incidence_eps_4():
    # Undamped oscillator probed far below resonance: eps -> 1 + omega_P^2/
    # omega_T^2 = 4 with ~1e-8 dispersion correction at omega/omega_T = 1e-4.
    m = ps.MaterialModel(
        "eps4", oscillators=(
            ps.Oscillator(omega_P=math.sqrt(3.0) * 1e13, omega_T=1e13),))
    omega = 1e9
    r_s, r_p = ps.fresnel(m, omega, 0.0)
    assert r_s == pytest.approx(-1.0 / 3.0, rel=1e-6)
    assert r_p == pytest.approx(+1.0 / 3.0, rel=1e-6)


@pytest.mark.parametrize("omega_cm", [30.0, 60.0, 73.0, 80.0, 90.0, 120.0])
def test_fresnel_nonretarded_limit(material_broad, omega_cm):
    """r_p converges to (eps-1)/(eps+1) once k_rho >> omega/c."""
    omega = omega_cm * CM1
    target = ps.reflection_nonretarded(material_broad, omega)
    for factor in (2e3, 1e4):
        k_rho = factor * omega / 299792458.0
        _, r_p = ps.fresnel(material_broad, omega, k_rho)
        assert abs(r_p - target) / abs(target) < 1e-3


# ---------------------------------------------------------------------------
# find_polariton_modes
# ---------------------------------------------------------------------------

SINGLE_T = 1e13
SINGLE_P = 8e12
SINGLE_SURFACE = math.sqrt(SINGLE_T**2 + SINGLE_P**2 / 2.0)


def _single(gamma):
    return ps.MaterialModel(
        "single", oscillators=(
            ps.Oscillator(omega_P=SINGLE_P, omega_T=SINGLE_T,
                          gamma_damp=gamma),))


def test_modes_single_small_damping_center():
    modes = ps.find_polariton_modes(_single(1e-4 * SINGLE_T))
    assert len(modes) == 1
    assert modes[0].omega_center == pytest.approx(SINGLE_SURFACE, rel=1e-3)


def test_modes_width_tracks_damping():
    # For omega_P = omega_T and Gamma = 0.01 omega_T the FWHM of Im r_p
    # matches the oscillator damping itself to within 20%.
    m = ps.MaterialModel(
        "w", oscillators=(ps.Oscillator(omega_P=1e13, omega_T=1e13,
                                        gamma_damp=1e11),))
    mode, = ps.find_polariton_modes(m)
    assert mode.linewidth == pytest.approx(1e11, rel=0.2)


def test_modes_center_converges_as_damping_vanishes():
    errors = []
    for g in (1e-2, 1e-3, 1e-4):
        mode, = ps.find_polariton_modes(_single(g * SINGLE_T))
        errors.append(abs(mode.omega_center - SINGLE_SURFACE) / SINGLE_SURFACE)
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 1e-4


def test_modes_two_oscillators_ascending(material_broad):
    modes = ps.find_polariton_modes(material_broad)
    assert len(modes) == 2
    lo, hi = modes
    assert lo.omega_center < hi.omega_center
    assert lo.omega_center == pytest.approx(73.0 * CM1, rel=5e-3)
    assert hi.omega_center == pytest.approx(90.0 * CM1, rel=5e-3)
    # Interior band edge at the midpoint, outermost edges at Omega -+ 5 gamma.
    mid = 0.5 * (lo.omega_center + hi.omega_center)
    assert lo.band_hi == pytest.approx(mid, rel=1e-12)
    assert hi.band_lo == pytest.approx(mid, rel=1e-12)
    assert lo.band_lo == pytest.approx(
        lo.omega_center - 5.0 * lo.linewidth, rel=1e-12)
    assert hi.band_hi == pytest.approx(
        hi.omega_center + 5.0 * hi.linewidth, rel=1e-12)
    assert lo.narrow and hi.narrow
    assert lo.band_lo < lo.omega_center < lo.band_hi


def test_modes_undamped_needs_override():
    m = ps.MaterialModel(
        "undamped", oscillators=(
            ps.Oscillator(omega_P=SINGLE_P, omega_T=SINGLE_T),))
    with pytest.raises(ps.NoModeFound):
        ps.find_polariton_modes(m)
    mode, = ps.find_polariton_modes(m, linewidth_override=1e10)
    assert mode.linewidth == 1e10
    assert mode.omega_center == pytest.approx(SINGLE_SURFACE, rel=1e-9)


def test_modes_none_without_interior_maximum():
    m = ps.MaterialModel("vacuum", oscillators=())
    with pytest.raises(ps.NoModeFound):
        ps.find_polariton_modes(m)


def test_mode_width_from_pole_agrees_with_fwhm():
    m = _single(1e11)
    mode, = ps.find_polariton_modes(m)
    center, width = ps.mode_width_from_pole(m, mode)
    assert center == pytest.approx(mode.omega_center, rel=1e-6)
    assert width == pytest.approx(mode.linewidth, rel=0.05)


# ---------------------------------------------------------------------------
# lorentzian_ldos_factor
# ---------------------------------------------------------------------------


def test_lorentzian_center_and_half_maximum(material_ldos):
    mode, = ps.find_polariton_modes(material_ldos)
    assert ps.lorentzian_ldos_factor(mode, mode.omega_center) == 1.0
    for sign in (-1.0, +1.0):
        omega = mode.omega_center + sign * mode.linewidth / 2.0
        assert ps.lorentzian_ldos_factor(mode, omega) == pytest.approx(
            0.5, rel=1e-12)


def test_lorentzian_normalization(material_ldos):
    mode, = ps.find_polariton_modes(material_ldos)
    gamma = mode.linewidth
    center = mode.omega_center

    def density(omega):
        # (1/pi)(gamma/2)/((omega-Omega)^2 + gamma^2/4), rearranged through
        # the dimensionless factor.
        return (ps.lorentzian_ldos_factor(mode, omega)
                / (math.pi * gamma / 2.0))

    window, _ = quad(density, center - 200.0 * gamma, center + 200.0 * gamma)
    # A +-200*gamma window covers (2/pi)*arctan(400) of the unit mass: the
    # wings carry ~1.6e-3 no matter the material.  The quadrature must nail
    # that analytic value; the full-line integral is exactly 1 by arctan.
    assert window == pytest.approx(2.0 / math.pi * math.atan(400.0),
                                   rel=1e-10)
    assert window == pytest.approx(1.0, abs=2e-3)
    full = (math.atan(math.inf) - math.atan(-math.inf)) / math.pi
    assert full == pytest.approx(1.0, abs=1e-6)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_material_round_trip(material_broad):
    doc = ps.material_to_dict(material_broad)
    again = ps.material_from_dict(doc)
    assert again == material_broad
    # And through actual JSON text.
    assert ps.material_from_dict(json.loads(json.dumps(doc))) == material_broad


def test_load_material_reports_field_paths(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "schema_version": 1,
        "name": "x",
        "oscillators": [{"omega_T": 90.0, "unit": "cm^-1"}],
    }))
    with pytest.raises(ps.ParseError) as err:
        ps.load_material(bad)
    assert "oscillators[0].omega_P" in str(err.value)


def test_load_material_rejects_unknown_unit(tmp_path):
    bad = tmp_path / "bad_unit.json"
    bad.write_text(json.dumps({
        "name": "x",
        "oscillators": [
            {"omega_P": 1.0, "omega_T": 2.0, "gamma": 0.1, "unit": "THz"}],
    }))
    with pytest.raises(ps.ParseError) as err:
        ps.load_material(bad)
    assert "unit" in str(err.value)


def test_load_material_rejects_empty_oscillator_list(tmp_path):
    bad = tmp_path / "empty.json"
    bad.write_text(json.dumps({"name": "x", "oscillators": []}))
    with pytest.raises(ps.ParseError) as err:
        ps.load_material(bad)
    assert "oscillators" in str(err.value)


def test_load_material_rejects_wrong_schema_version(tmp_path):
    bad = tmp_path / "version.json"
    bad.write_text(json.dumps({
        "schema_version": 99,
        "name": "x",
        "oscillators": [
            {"omega_P": 1.0, "omega_T": 2.0, "gamma": 0.1, "unit": "rad/s"}],
    }))
    with pytest.raises(ps.ParseError) as err:
        ps.load_material(bad)
    assert "schema_version" in str(err.value)


def test_load_material_accepts_unit_tags(tmp_path):
    f = tmp_path / "units.json"
    f.write_text(json.dumps({
        "name": "u",
        "oscillators": [
            {"omega_P": 90.0, "omega_T": 73.0, "gamma": 1.0, "unit": "cm^-1"},
            {"omega_P": 1e12, "omega_T": 2e12, "gamma": 1e10, "unit": "Hz"},
            {"omega_P": 3e13, "omega_T": 4e13, "gamma": 1e11, "unit": "rad/s"},
        ],
    }))
    m = ps.load_material(f)
    by_T = sorted(o.omega_T for o in m.oscillators)
    # 2*pi*2e12 < 73 cm^-1 in rad/s < 4e13.
    assert by_T[0] == pytest.approx(2.0 * math.pi * 2e12, rel=1e-15)
    assert by_T[1] == pytest.approx(73.0 * CM1, rel=1e-15)
    assert by_T[2] == 4e13
