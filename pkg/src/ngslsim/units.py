"""Natural-unit convention and SI conversions.

Everything inside the physics core runs in geometrized natural units with
G = c = hbar = k_B = 1, so every quantity is a pure number measured in the
appropriate power of Planck units.  SI values appear only at the I/O
boundary: a ``Quantity`` tags a float with a ``Dimension`` and a unit
system, and ``to_natural`` / ``from_natural`` move across the boundary.

The conversion factor for a dimension (a, b, c, d) in (mass, length, time,
temperature) is m_P^a * l_P^b * t_P^c * T_P^d in SI units, which makes the
conversion multiplicative over products of quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidQuantityError

# Pinned constants table, CODATA 2018 release (https://physics.nist.gov/cuu).
# c, h, k_B are exact by the 2019 SI redefinition; G carries measurement
# uncertainty.  Do not mix releases: conversions must be reproducible.
C_SI = 299792458.0            # speed of light, m s^-1 (exact)
H_SI = 6.62607015e-34         # Planck constant, J s (exact)
HBAR_SI = H_SI / (2.0 * math.pi)  # reduced Planck constant, J s
G_SI = 6.67430e-11            # Newtonian constant, m^3 kg^-1 s^-2
K_B_SI = 1.380649e-23         # Boltzmann constant, J K^-1 (exact)

# IAU 2015 Resolution B3 nominal solar mass parameter divided by G above.
GM_SUN_SI = 1.3271244e20      # m^3 s^-2
M_SUN_SI = GM_SUN_SI / G_SI   # kg

# Planck units derived from the table above.
PLANCK_MASS_SI = math.sqrt(HBAR_SI * C_SI / G_SI)            # kg
PLANCK_LENGTH_SI = math.sqrt(HBAR_SI * G_SI / C_SI**3)       # m
PLANCK_TIME_SI = math.sqrt(HBAR_SI * G_SI / C_SI**5)         # s
PLANCK_TEMPERATURE_SI = math.sqrt(HBAR_SI * C_SI**5 / G_SI) / K_B_SI  # K

NATURAL = "natural"
SI = "SI"


@dataclass(frozen=True)
class Dimension:
    """Integer exponents over the (mass, length, time, temperature) basis."""

    mass_exp: int = 0
    length_exp: int = 0
    time_exp: int = 0
    temperature_exp: int = 0

    def __mul__(self, other: "Dimension") -> "Dimension":
        """Dimension of a product of two quantities (exponents add)."""
        return Dimension(
            self.mass_exp + other.mass_exp,
            self.length_exp + other.length_exp,
            self.time_exp + other.time_exp,
            self.temperature_exp + other.temperature_exp,
        )

    def __pow__(self, n: int) -> "Dimension":
        return Dimension(
            self.mass_exp * n,
            self.length_exp * n,
            self.time_exp * n,
            self.temperature_exp * n,
        )


DIMENSIONLESS = Dimension()
MASS = Dimension(mass_exp=1)
LENGTH = Dimension(length_exp=1)
TIME = Dimension(time_exp=1)
TEMPERATURE = Dimension(temperature_exp=1)
ENERGY = Dimension(mass_exp=1, length_exp=2, time_exp=-2)


@dataclass(frozen=True)
class Quantity:
    """A value tagged with its dimension and unit system."""

    value: float
    dimension: Dimension = DIMENSIONLESS
    system: str = NATURAL

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise InvalidQuantityError(f"quantity value must be finite, got {self.value!r}")
        if self.system not in (NATURAL, SI):
            raise InvalidQuantityError(f"unknown unit system {self.system!r}")


def si_factor(d: Dimension) -> float:
    """SI magnitude of one natural unit of dimension ``d``."""
    return (
        PLANCK_MASS_SI ** d.mass_exp
        * PLANCK_LENGTH_SI ** d.length_exp
        * PLANCK_TIME_SI ** d.time_exp
        * PLANCK_TEMPERATURE_SI ** d.temperature_exp
    )


def to_natural(q: Quantity) -> float:
    """Dimensionless Planck-unit magnitude of ``q``.

    Identity when the quantity is already tagged natural.
    """
    if not math.isfinite(q.value):
        raise InvalidQuantityError(f"quantity value must be finite, got {q.value!r}")
    if q.system == NATURAL:
        return q.value
    return q.value / si_factor(q.dimension)


def from_natural(x: float, d: Dimension) -> Quantity:
    """SI quantity whose natural-unit magnitude is ``x``."""
    if not math.isfinite(x):
        raise InvalidQuantityError(f"natural value must be finite, got {x!r}")
    return Quantity(x * si_factor(d), d, SI)
