"""Exception taxonomy.

Configuration problems and numerical-constraint violations are distinct
classes so the CLI can map them to distinct exit codes.
"""


class ConfigError(ValueError):
    """Invalid or inconsistent physical configuration."""


class LatticeSpacingError(ConfigError):
    """Lattice constant is not smaller than the probe wavelength."""


class ConfinementError(ConfigError):
    """Confinement factor below 1 (Wannier width exceeding the site)."""


class MissingFieldError(ConfigError):
    """An optional field required by the requested operation is absent."""


class NumericsError(RuntimeError):
    """A numerical constraint of a solver was violated."""


class CflError(NumericsError):
    """Advection time step exceeds the CFL limit."""


class RegularizationError(NumericsError):
    """Delta regularization width under-resolved by the grid."""


class StepSizeError(NumericsError):
    """ODE step too large for the fast (Rabi) time scale."""


class SupportError(NumericsError):
    """Wave-function support touched a grid boundary or is mislocated."""


class OverlapError(NumericsError):
    """Phase extraction found no usable overlap support."""


class ValidityWarning(UserWarning):
    """A parameter left the regime in which the model is derived."""
