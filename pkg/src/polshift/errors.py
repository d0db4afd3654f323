"""Exception types shared across the package.

Two families:

* configuration/input errors (bad files, bad references) -- exit code 2 in the CLI;
* physics/numerics errors (poles, failed quadrature, off-resonance requests) --
  exit code 3 in the CLI.
"""


class PolshiftError(Exception):
    """Base class for all package-specific errors."""


# --- configuration / input errors -------------------------------------------

class ParseError(PolshiftError):
    """Malformed input file.  ``field`` holds a dotted path to the offender."""

    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = f"{message} (at '{field}')"
        super().__init__(message)


class DanglingReference(ParseError):
    """A dipole entry references a state label that does not exist."""


# --- physics / numerics errors -----------------------------------------------

class PhysicsError(PolshiftError):
    """Base class for errors raised by the numerical physics layer."""


class PoleHit(PhysicsError):
    """Permittivity evaluated exactly on an undamped oscillator pole."""


class SurfaceModePole(PhysicsError):
    """Nonretarded reflection evaluated (numerically) on a surface-mode pole."""


class NoModeFound(PhysicsError):
    """Surface-mode search found no interior maximum of Im r_p."""


class QuadratureFailure(PhysicsError):
    """Adaptive quadrature could not reach the requested tolerance."""


class ZeroTemperature(PhysicsError):
    """Matsubara machinery invoked at T = 0 where the sum is undefined."""


class ConvergenceFailure(PhysicsError):
    """Matsubara tail estimate still exceeds the tolerance at the cutoff."""


class OffResonance(PhysicsError):
    """Polariton pair does not satisfy the resonance condition for u_eff."""


class NoChannels(PhysicsError):
    """No intermediate state couples both ends of the requested transition."""


class ModeAttributionError(PhysicsError):
    """Polariton modes cannot be paired one-to-one with material oscillators."""
