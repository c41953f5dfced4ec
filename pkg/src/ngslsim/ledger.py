"""Double-entry information ledger for horizon transits.

When a particle of mass m_a crosses the horizon (dM = +m_a infalling,
-m_a emitted), the hole's gravitational information I_gM = M/T_H changes
by two equal first-order terms, evaluated at the pre-event mass:

    sense term   M * d(1/T_H) = 8 pi M dM   (singularity senses the new T_H)
    carry term   dM / T_H     = 8 pi M dM   (information carried by the particle)

and the hole entropy changes by dS = dM/T_H, the same first-order value.
The two terms are equal but complementary: an observer can read one or
the other, never both — the ledger entry enforces that as a
read-once-per-channel state machine.

Two accounting modes:

* ``differential`` — paper-faithful first-order bookkeeping.  All three
  terms are the identical expression, so the balance dS - dI is exactly
  zero through either channel.
* ``exact`` — dS is the true entropy difference 4 pi[(M+dM)^2 - M^2],
  stored in the cancellation-free form 8 pi M dM + 4 pi dM^2.  The
  quadratic gap 4 pi dM^2 is the discretization residual a finite
  particle leaves behind, and the balance equals it for either channel.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from .errors import ComplementarityViolationError, EvaporatedPastFloorError, InvalidMassError
from .schwarzschild import BlackHole


class Direction(enum.Enum):
    INFALL = "infall"
    EMISSION = "emission"


class Mode(enum.Enum):
    DIFFERENTIAL = "differential"
    EXACT = "exact"


class Channel(enum.Enum):
    SENSE = "sense"
    CARRY = "carry"


class ChannelState(enum.Enum):
    UNREAD = "unread"
    SENSE_READ = "sense_read"
    CARRY_READ = "carry_read"


_STATE_FOR_CHANNEL = {
    Channel.SENSE: ChannelState.SENSE_READ,
    Channel.CARRY: ChannelState.CARRY_READ,
}


@dataclass(frozen=True)
class TransitEvent:
    """A particle crossing the horizon at a given time."""

    time: float
    particle_mass: float
    direction: Direction

    def __post_init__(self):
        if not (
            isinstance(self.particle_mass, (int, float))
            and math.isfinite(self.particle_mass)
            and self.particle_mass > 0.0
        ):
            raise InvalidMassError(
                f"particle mass must be finite and > 0, got {self.particle_mass!r}"
            )

    @property
    def signed_dm(self) -> float:
        """Signed hole-mass change: +m for infall, -m for emission."""
        if self.direction is Direction.INFALL:
            return self.particle_mass
        return -self.particle_mass


@dataclass(frozen=True)
class LedgerEntry:
    """Per-event accounting record.

    ``dI_sense`` and ``dI_carry`` are always the first-order terms at the
    pre-event mass; ``dS_bh`` matches them in differential mode and adds
    the quadratic gap in exact mode, which is stored separately as
    ``discretization_residual`` (0.0 in differential mode).
    """

    pre_mass: float
    dM: float
    dI_sense: float
    dI_carry: float
    dS_bh: float
    mode: Mode
    discretization_residual: float
    channel_state: ChannelState = ChannelState.UNREAD


def _first_order_term(mass: float, dm: float) -> float:
    # Single expression shared by the sense term, the carry term, and the
    # differential entropy change so the three are equal bit-for-bit.
    return 8.0 * math.pi * mass * dm


def info_sense_term(bh: BlackHole, dm: float) -> float:
    """Sense-channel term M * d(1/T_H) = 8 pi M dM (signed)."""
    return _first_order_term(bh.mass, dm)


def info_carry_term(bh: BlackHole, dm: float) -> float:
    """Carry-channel term dM / T_H = 8 pi M dM (signed)."""
    return _first_order_term(bh.mass, dm)


def bh_entropy_change(bh: BlackHole, dm: float, mode: Mode = Mode.DIFFERENTIAL) -> float:
    """Hole entropy change for a signed mass step dM at pre-event mass M.

    Differential mode returns the first-order dM/T_H.  Exact mode returns
    4 pi[(M+dM)^2 - M^2], evaluated as 8 pi M dM + 4 pi dM^2 so the
    quadratic part survives rounding when |dM| << M.
    """
    if mode is Mode.DIFFERENTIAL:
        return _first_order_term(bh.mass, dm)
    if bh.mass + dm <= 0.0:
        raise EvaporatedPastFloorError(
            f"exact entropy change undefined: M+dM = {bh.mass + dm} <= 0"
        )
    return _first_order_term(bh.mass, dm) + 4.0 * math.pi * dm * dm


def apply_event(
    bh: BlackHole,
    event: TransitEvent,
    mode: Mode = Mode.DIFFERENTIAL,
    mass_floor: float = 0.0,
) -> tuple[BlackHole, LedgerEntry]:
    """Process one transit: updated hole plus a fully populated entry.

    All differential terms are evaluated at the pre-event mass.  Emission
    that would land below ``mass_floor`` (or at non-positive mass) raises
    EvaporatedPastFloorError.
    """
    dm = event.signed_dm
    new_mass = bh.mass + dm
    if dm < 0.0 and (new_mass < mass_floor or new_mass <= 0.0):
        raise EvaporatedPastFloorError(
            f"emission of {event.particle_mass} from M={bh.mass} "
            f"lands at {new_mass}, below the floor {mass_floor}"
        )
    first_order = _first_order_term(bh.mass, dm)
    if mode is Mode.DIFFERENTIAL:
        ds = first_order
        residual = 0.0
    else:
        residual = 4.0 * math.pi * dm * dm
        ds = first_order + residual
    entry = LedgerEntry(
        pre_mass=bh.mass,
        dM=dm,
        dI_sense=first_order,
        dI_carry=first_order,
        dS_bh=ds,
        mode=mode,
        discretization_residual=residual,
        channel_state=ChannelState.UNREAD,
    )
    return BlackHole(new_mass), entry


def ngsl_balance(entry: LedgerEntry, channel: Channel) -> float:
    """dS_bh minus the chosen channel's information term.

    Zero exactly in differential mode (both channels).  In exact mode the
    analytic difference is the stored quadratic residual; returning it
    directly avoids the catastrophic cancellation a literal float
    subtraction would suffer when |dM| << M.
    """
    d_info = entry.dI_sense if channel is Channel.SENSE else entry.dI_carry
    if entry.mode is Mode.DIFFERENTIAL:
        return entry.dS_bh - d_info  # bit-identical terms: exact zero
    return entry.discretization_residual


def observe_channel(entry: LedgerEntry, channel: Channel) -> tuple[float, LedgerEntry]:
    """Read one information channel, destroying access to the other.

    Re-reading the same channel is idempotent; requesting the opposite
    channel after one has been read raises ComplementarityViolationError.
    """
    target = _STATE_FOR_CHANNEL[channel]
    if entry.channel_state not in (ChannelState.UNREAD, target):
        raise ComplementarityViolationError(
            f"channel {channel.value!r} is unreadable: entry state is "
            f"{entry.channel_state.value!r} and the unread channel was destroyed"
        )
    value = entry.dI_sense if channel is Channel.SENSE else entry.dI_carry
    if entry.channel_state is target:
        return value, entry
    return value, replace(entry, channel_state=target)
