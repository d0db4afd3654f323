"""Atomic level structure, dipole bookkeeping and isotropic polarizability.

Level energies are stored as angular-frequency equivalents E/hbar (rad/s);
dipole magnitudes in C.m.  Transition frequencies follow the convention
omega_ab = omega_a - omega_b and are always computed, never stored.
"""

import json
import math
from dataclasses import dataclass

from .errors import DanglingReference, ParseError
from .units import HBAR, dipole_moment, level_energy

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AtomicState:
    label: str
    energy: float  # E/hbar in rad/s

    def __post_init__(self):
        if not self.label:
            raise ValueError("state label must be non-empty")
        if not math.isfinite(self.energy):
            raise ValueError("state energy must be finite")


@dataclass(frozen=True)
class DipoleElement:
    from_state: str
    to_state: str
    magnitude: float  # C.m
    components: tuple = None  # optional Cartesian (x, y, z) in C.m

    def __post_init__(self):
        if self.magnitude < 0:
            raise ValueError("dipole magnitude must be >= 0")
        if self.from_state == self.to_state:
            raise ValueError("dipole must connect two distinct states")
        if self.components is not None:
            comp = tuple(float(c) for c in self.components)
            if len(comp) != 3:
                raise ValueError("components must be a 3-vector")
            norm = math.sqrt(sum(c * c for c in comp))
            if abs(norm - self.magnitude) > 1e-12 * self.magnitude:
                raise ValueError(
                    "norm of components does not match magnitude")
            object.__setattr__(self, "components", comp)


class AtomSpec:
    """Immutable collection of states and dipole couplings.

    Lookup of dipoles is orientation-agnostic: |d_ab| = |d_ba|.
    """

    def __init__(self, name, states, dipoles):
        self.name = str(name)
        self.states = tuple(states)
        self.dipoles = tuple(dipoles)
        self._by_label = {}
        for s in self.states:
            if s.label in self._by_label:
                raise ValueError(f"duplicate state label {s.label!r}")
            self._by_label[s.label] = s
        self._pairs = {}
        for d in self.dipoles:
            for lab in (d.from_state, d.to_state):
                if lab not in self._by_label:
                    raise DanglingReference(
                        f"dipole {d.from_state!r} -> {d.to_state!r} references "
                        f"unknown state {lab!r}")
            key = frozenset((d.from_state, d.to_state))
            if key in self._pairs:
                raise ValueError(
                    f"duplicate dipole between {d.from_state!r} and "
                    f"{d.to_state!r}")
            self._pairs[key] = d

    def __eq__(self, other):
        return (isinstance(other, AtomSpec)
                and self.name == other.name
                and self.states == other.states
                and self.dipoles == other.dipoles)

    def __repr__(self):
        return (f"AtomSpec(name={self.name!r}, {len(self.states)} states, "
                f"{len(self.dipoles)} dipoles)")

    def state(self, label):
        try:
            return self._by_label[label]
        except KeyError:
            raise ValueError(f"unknown state label {label!r}") from None

    def energy(self, label):
        return self.state(label).energy

    def labels(self):
        return [s.label for s in self.states]

    def transition_frequency(self, a, b):
        """omega_ab = omega_a - omega_b (rad/s, signed)."""
        return self.energy(a) - self.energy(b)

    def dipole(self, a, b):
        """The DipoleElement connecting a and b, or None."""
        return self._pairs.get(frozenset((a, b)))

    def dipole_magnitude(self, a, b):
        d = self.dipole(a, b)
        return d.magnitude if d is not None else 0.0


@dataclass(frozen=True)
class TransitionChannel:
    """One intermediate state k coupling lower |0> and upper |1>."""

    k_label: str
    d_0k: float       # C.m
    d_k1: float       # C.m
    omega_0k: float   # rad/s, omega_0 - omega_k
    omega_k1: float   # rad/s, omega_k - omega_1


def channels(atom, upper, lower):
    """All intermediate states with nonzero d_0k and d_k1.

    Returned sorted by intermediate-state energy (ties broken by label);
    an empty list is allowed.  The same set comes back with upper and lower
    swapped, since only the magnitudes enter.
    """
    if upper == lower:
        raise ValueError("upper and lower must differ")
    w_up = atom.energy(upper)
    w_lo = atom.energy(lower)
    out = []
    for s in atom.states:
        if s.label in (upper, lower):
            continue
        d_0k = atom.dipole_magnitude(lower, s.label)
        d_k1 = atom.dipole_magnitude(s.label, upper)
        if d_0k > 0.0 and d_k1 > 0.0:
            out.append(TransitionChannel(
                k_label=s.label, d_0k=d_0k, d_k1=d_k1,
                omega_0k=w_lo - s.energy, omega_k1=s.energy - w_up))
    out.sort(key=lambda ch: (atom.energy(ch.k_label), ch.k_label))
    return out


def transitions_from(atom, n):
    """(k_label, omega_kn, |d_nk|) for every state k with a dipole to n."""
    w_n = atom.energy(n)
    out = []
    for s in atom.states:
        if s.label == n:
            continue
        d = atom.dipole_magnitude(n, s.label)
        if d > 0.0:
            out.append((s.label, s.energy - w_n, d))
    out.sort(key=lambda t: (t[1], t[0]))
    return out


def polarizability_iso(atom, n, xi):
    """Isotropic polarizability on the imaginary axis (SI, C^2 m^2 / J).

    alpha(i xi) = (2 / 3 hbar) sum_k omega_kn |d_nk|^2 / (omega_kn^2 + xi^2),
    with omega_kn = omega_k - omega_n signed, over all dipole-coupled k.
    """
    if xi < 0:
        raise ValueError("xi must be >= 0")
    total = 0.0
    for _, w_kn, d in transitions_from(atom, n):
        total += w_kn * d * d / (w_kn * w_kn + xi * xi)
    return 2.0 / (3.0 * HBAR) * total


# --- JSON ingestion -------------------------------------------------------------

def _require(doc, key, path):
    if key not in doc:
        raise ParseError("missing required field", field=f"{path}{key}")
    return doc[key]


def atom_from_dict(doc):
    """Build an AtomSpec from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise ParseError("atom document must be an object", field=".")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version!r}",
                         field="schema_version")
    name = _require(doc, "name", "")
    states_doc = _require(doc, "states", "")
    dipoles_doc = _require(doc, "dipoles", "")
    if not isinstance(states_doc, list) or not states_doc:
        raise ParseError("states must be a non-empty list", field="states")
    if not isinstance(dipoles_doc, list):
        raise ParseError("dipoles must be a list", field="dipoles")

    states = []
    for i, entry in enumerate(states_doc):
        p = f"states[{i}]."
        if not isinstance(entry, dict):
            raise ParseError("state entry must be an object", field=p[:-1])
        label = _require(entry, "label", p)
        unit = _require(entry, "unit", p)
        try:
            energy = level_energy(_require(entry, "energy", p), unit)
            states.append(AtomicState(label=str(label), energy=energy))
        except (TypeError, ValueError) as exc:
            raise ParseError(str(exc), field=p[:-1]) from None

    labels = {s.label for s in states}
    dipoles = []
    for i, entry in enumerate(dipoles_doc):
        p = f"dipoles[{i}]."
        if not isinstance(entry, dict):
            raise ParseError("dipole entry must be an object", field=p[:-1])
        frm = str(_require(entry, "from", p))
        to = str(_require(entry, "to", p))
        unit = _require(entry, "unit", p)
        for lab, key in ((frm, "from"), (to, "to")):
            if lab not in labels:
                raise DanglingReference(
                    f"unknown state {lab!r}", field=f"{p}{key}")
        try:
            mag = dipole_moment(_require(entry, "magnitude", p), unit)
            comp = entry.get("components")
            if comp is not None:
                comp = tuple(dipole_moment(c, unit) for c in comp)
            dipoles.append(DipoleElement(from_state=frm, to_state=to,
                                         magnitude=mag, components=comp))
        except (TypeError, ValueError) as exc:
            raise ParseError(str(exc), field=p[:-1]) from None

    try:
        return AtomSpec(name=str(name), states=states, dipoles=dipoles)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def atom_to_dict(atom):
    """Serialize an AtomSpec (energies in rad/s, dipoles in C.m)."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "name": atom.name,
        "states": [{"label": s.label, "energy": s.energy, "unit": "rad/s"}
                   for s in atom.states],
        "dipoles": [],
    }
    for d in atom.dipoles:
        entry = {"from": d.from_state, "to": d.to_state,
                 "magnitude": d.magnitude, "unit": "C·m"}
        if d.components is not None:
            entry["components"] = list(d.components)
        doc["dipoles"].append(entry)
    return doc


def load_atom(path):
    """Load an atom JSON file; errors carry the offending field path."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from None
    return atom_from_dict(doc)
