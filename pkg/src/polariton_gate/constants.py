"""Fixed physical constants (SI, CODATA 2018).

Pinned as literals so that derived quantities are bit-reproducible across
environments; do not swap for scipy.constants, whose values track the
installed version.
"""

HBAR = 1.054571817e-34  # reduced Planck constant, J*s
C_LIGHT = 299792458.0  # speed of light in vacuum, m/s (exact)
EPSILON_0 = 8.8541878128e-12  # vacuum permittivity, F/m

__all__ = ["HBAR", "C_LIGHT", "EPSILON_0"]
