"""Holographic-screen temperature field outside the horizon.

A static screen at areal radius r > 2M carries the Unruh-law temperature

    T_hs = g * e^phi / (2 pi)

with g the static-observer proper acceleration M / (r^2 sqrt(1 - 2M/r))
and e^phi the lapse sqrt(1 - 2M/r).  The two redshift factors cancel, so
T_hs = M / (2 pi r^2) stays finite all the way down and matches the
Hawking temperature at r = 2M.

The gravitational information of a marked object of energy m sitting on
the screen is I_g = m / T_hs; lowering the object from r_from to r_to
releases entropy dS_I = -d(I_g), positive for inward motion.

Evaluation exactly at the horizon goes through the ``HORIZON`` sentinel
rather than a floating-point limit: there T_hs is the Hawking temperature
by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InsideHorizonError, InvalidMassError
from .schwarzschild import BlackHole, hawking_temperature

# Radii within this relative band of 2M count as inside the horizon.
HORIZON_MARGIN = 1e-12


class _HorizonSentinel:
    """Distinguished radius argument selecting the exact-horizon limit."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "HORIZON"


HORIZON = _HorizonSentinel()


@dataclass(frozen=True)
class ScreenGeometry:
    """Static screen at radius r: proper acceleration, lapse, temperature."""

    r: float
    g: float
    redshift: float
    temperature: float


def screen_geometry(bh: BlackHole, r: float) -> ScreenGeometry:
    """Screen data at areal radius ``r`` outside the hole.

    Raises InsideHorizonError for r <= 2M(1 + HORIZON_MARGIN).
    """
    r_min = 2.0 * bh.mass * (1.0 + HORIZON_MARGIN)
    if not (math.isfinite(r) and r > r_min):
        raise InsideHorizonError(
            f"screen radius r={r!r} must exceed 2M(1+{HORIZON_MARGIN:g})={r_min!r}"
        )
    lapse = math.sqrt(1.0 - 2.0 * bh.mass / r)
    g = bh.mass / (r * r * lapse)
    temperature = g * lapse / (2.0 * math.pi)
    return ScreenGeometry(r=r, g=g, redshift=lapse, temperature=temperature)


def gravitational_information_marked(m: float, bh: BlackHole, r) -> float:
    """Information m/T_hs of a marked object of energy ``m`` at radius ``r``.

    Pass ``HORIZON`` for r to evaluate at the horizon itself, where the
    screen temperature is the Hawking temperature and the result is
    8 pi M m.
    """
    if not (isinstance(m, (int, float)) and math.isfinite(m) and m > 0.0):
        raise InvalidMassError(f"marked-object mass must be finite and > 0, got {m!r}")
    if r is HORIZON:
        return m / hawking_temperature(bh)
    return m / screen_geometry(bh, r).temperature


def entropy_from_descent(m: float, bh: BlackHole, r_from: float, r_to: float) -> float:
    """Entropy released moving a marked object from r_from to r_to.

    Equals -[I_g(r_to) - I_g(r_from)] = 2 pi m (r_from^2 - r_to^2) / M,
    positive for inward motion and antisymmetric under swapping the radii.
    """
    i_from = gravitational_information_marked(m, bh, r_from)
    i_to = gravitational_information_marked(m, bh, r_to)
    return i_from - i_to
