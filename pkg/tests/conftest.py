"""Shared fixtures: canned materials, atoms, and golden numbers."""

import json
import pathlib

import pytest

import polshift as ps

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def golden():
    with open(FIXTURES / "golden.json") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def material_toy():
    """Lossy single oscillator used by the two-level shift checks."""
    return ps.load_material(FIXTURES / "material_toy.json")


@pytest.fixture(scope="session")
def material_ldos():
    """Single oscillator with Gamma = 0.02 omega_T for LDOS line-shape checks."""
    return ps.load_material(FIXTURES / "material_ldos.json")


@pytest.fixture(scope="session")
def material_narrow():
    """Two oscillators, modes at 73 and 90 cm^-1 with gamma = 0.01 Omega."""
    return ps.load_material(FIXTURES / "material_narrow.json")


@pytest.fixture(scope="session")
def material_broad():
    """Two oscillators, modes at 73 and 90 cm^-1 with gamma = 0.03 Omega."""
    return ps.load_material(FIXTURES / "material_broad.json")


@pytest.fixture(scope="session")
def rb_atom():
    """Rb Rydberg block around the 27S -> 26S transition."""
    return ps.load_atom(FIXTURES / "rb_rydberg.json")


@pytest.fixture(scope="session")
def toy_atom():
    """Two-level atom: omega_10 = 2.4e14 rad/s, |d| = 1e-29 C.m."""
    return ps.AtomSpec(
        name="two-level toy",
        states=(ps.AtomicState("g", 0.0), ps.AtomicState("e", 2.4e14)),
        dipoles=(ps.DipoleElement("g", "e", 1.0e-29),),
    )
