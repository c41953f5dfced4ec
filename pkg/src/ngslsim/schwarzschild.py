"""Closed-form Schwarzschild thermodynamics in natural units.

For a hole of mass M (G = c = hbar = k_B = 1):

    T_H   = 1 / (8 pi M)        Hawking temperature
    r_s   = 2 M                 horizon radius
    S     = 4 pi M^2            Bekenstein-Hawking entropy (S(0) = 0)
    I_gM  = M / T_H = 8 pi M^2  gravitational information of the hole

S integrates dS = dM / T_H from zero mass, and I_gM = 2 S identically.
All functions are total over mass > 0; evaporation floors are the
caller's business (see ``evolution``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidMassError


@dataclass(frozen=True)
class BlackHole:
    """Schwarzschild state: a single positive mass in natural units."""

    mass: float

    def __post_init__(self):
        if not (isinstance(self.mass, (int, float)) and math.isfinite(self.mass)):
            raise InvalidMassError(f"black hole mass must be finite, got {self.mass!r}")
        if self.mass <= 0.0:
            raise InvalidMassError(f"black hole mass must be > 0, got {self.mass}")


def hawking_temperature(bh: BlackHole) -> float:
    """Horizon temperature 1/(8 pi M); strictly decreasing in mass."""
    return 1.0 / (8.0 * math.pi * bh.mass)


def horizon_radius(bh: BlackHole) -> float:
    """Schwarzschild radius 2 M."""
    return 2.0 * bh.mass


def bh_entropy(bh: BlackHole) -> float:
    """Bekenstein-Hawking entropy 4 pi M^2."""
    return 4.0 * math.pi * bh.mass * bh.mass


def gravitational_information_bh(bh: BlackHole) -> float:
    """Gravitational information M/T_H = 8 pi M^2 (twice the entropy)."""
    return 8.0 * math.pi * bh.mass * bh.mass
