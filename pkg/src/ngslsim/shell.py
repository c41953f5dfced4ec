"""The shell of a black hole and its information-channel-width bound.

The shell is the part of the near-horizon accretion disk that is causally
affected while a particle crosses the horizon: gravity propagates at unit
speed, so within a window Dt the affected annulus reaches from the
horizon at 2M out to 2M + Dt (truncated at the disk's outer edge).

For a transit with signed hole-mass change dM, with M_s the shell mass:

    shell entropy change      dS_Ms   = dM_s / T_H = -8 pi M dM
    shell information change  dI_gMs  = M_s d(1/T_H) + dM_s / T_H
                                      = 8 pi M_s dM - 8 pi M dM
    channel-width bound       dI     <= -M_s d(1/T_H) = -8 pi M_s dM

where dI is the change of an outside observer's information about the
transiting particle (a loss is negative).  The bound follows from the
generalized second law dS - dI >= 0 applied to the shell:

    residual = dS_Ms - dI_gMs - dI = -8 pi M_s dM - dI >= 0.

Disk surface density is a truncated power law Sigma(r) =
sigma0 (r/r_ref)^(-p), whose annulus mass has a closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidWindowError, NgslError
from .ledger import _first_order_term
from .schwarzschild import BlackHole


@dataclass(frozen=True)
class DiskProfile:
    """Power-law surface density Sigma(r) = sigma0 (r/r_ref)^(-p)."""

    sigma0: float
    r_ref: float
    p: float
    r_outer_max: float

    def __post_init__(self):
        if self.sigma0 < 0.0:
            raise NgslError(f"sigma0 must be >= 0, got {self.sigma0}")
        if self.r_ref <= 0.0:
            raise NgslError(f"r_ref must be > 0, got {self.r_ref}")
        if self.r_outer_max <= self.r_ref:
            raise NgslError(
                f"r_outer_max={self.r_outer_max} must exceed r_ref={self.r_ref}"
            )

    def surface_density(self, r: float) -> float:
        return self.sigma0 * (r / self.r_ref) ** (-self.p)

    def annulus_mass(self, r_in: float, r_out: float) -> float:
        """Closed-form integral of Sigma(r) 2 pi r dr over [r_in, r_out]."""
        if r_out <= r_in:
            return 0.0
        coeff = 2.0 * math.pi * self.sigma0 * self.r_ref**self.p
        if self.p == 2.0:
            return coeff * math.log(r_out / r_in)
        q = 2.0 - self.p
        return coeff * (r_out**q - r_in**q) / q


@dataclass(frozen=True)
class Shell:
    """Causally affected annulus: mass, extent, and its time window."""

    mass: float
    r_inner: float
    r_outer: float
    window: float

    def __post_init__(self):
        if self.mass < 0.0:
            raise NgslError(f"shell mass must be >= 0, got {self.mass}")
        if self.r_outer < self.r_inner:
            raise NgslError(
                f"shell r_outer={self.r_outer} must be >= r_inner={self.r_inner}"
            )


def build_shell(bh: BlackHole, profile: DiskProfile, window: float) -> Shell:
    """Shell of the disk reachable by a unit-speed signal within ``window``.

    r_outer = min(2M + window, disk truncation radius), clamped so a disk
    ending inside the horizon yields an empty shell rather than an
    inverted annulus.
    """
    if not (isinstance(window, (int, float)) and math.isfinite(window) and window > 0.0):
        raise InvalidWindowError(f"causal window must be finite and > 0, got {window!r}")
    r_inner = 2.0 * bh.mass
    r_outer = max(r_inner, min(r_inner + window, profile.r_outer_max))
    mass = profile.annulus_mass(r_inner, r_outer)
    return Shell(mass=mass, r_inner=r_inner, r_outer=r_outer, window=window)


def shell_entropy_change(bh: BlackHole, dm: float) -> float:
    """Exterior entropy change dM_s/T_H with dM_s = -dM: -8 pi M dM."""
    return -_first_order_term(bh.mass, dm)


def shell_info_change(bh: BlackHole, shell: Shell, dm: float) -> float:
    """Shell information change 8 pi M_s dM - 8 pi M dM.

    First term: the shell senses the new horizon temperature; second:
    the information carried across the horizon, signed with dM_s = -dM.
    """
    return _first_order_term(shell.mass, dm) - _first_order_term(bh.mass, dm)


def channel_width_bound(shell: Shell, dm: float) -> float:
    """Bound on the outside observer's information change: -8 pi M_s dM.

    Negative for infall (a minimum information loss), positive for
    emission (a maximum gain), zero for a massless shell.
    """
    return -_first_order_term(shell.mass, dm)


def shell_ngsl_residual(bh: BlackHole, shell: Shell, dm: float, d_info: float) -> float:
    """Slack dS_Ms - dI_gMs - dI of the shell's second-law inequality.

    The hole's -8 pi M dM appears in both the entropy and information
    terms and cancels identically, so the slack is evaluated in its
    reduced form -8 pi M_s dM - dI: the sign then flips exactly at
    dI == channel_width_bound instead of drowning in rounding crumbs
    from the spurious cancellation.  Nonnegative iff ``d_info`` respects
    the bound; negative flags a violation.
    """
    return channel_width_bound(shell, dm) - d_info
