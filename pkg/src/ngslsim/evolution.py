"""Mass evolution under Hawking evaporation plus scheduled transits.

Between events the hole loses mass by the inverse-square law

    dM/dt = -alpha / M^2,

whose exact solution gives the extinction time M0^3 / (3 alpha) and the
time-to-floor M0^3 (1 - (M_f/M0)^3) / (3 alpha) used as the test oracle.
The default alpha is the photon-sector geometric-units coefficient
1/(15360 pi); it is a convention, not a prediction, and is overridable.

Integration uses an explicit embedded Runge-Kutta-Fehlberg pair,
propagating the fourth-order solution with the fifth-order one as error
estimate.  Steps never cross an event time: the step is clipped to the
next event, the ledger applies the transit at the pre-event mass, and
the channel-width bound of that transit is added to the running budget.
Continuous evaporation also feeds the budget: each accepted step adds
the trapezoidal increment of integral(-M_s dM / d(1/T_H)^-1), i.e.
-8 pi <M_s> dM, which is an information-gain allowance since dM < 0.
The shell mass is resampled from the current M at every step and event
but never feeds back on the dynamics.

Everything is plain sequential float arithmetic: identical inputs give
bit-identical trajectories.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import EvaporatedPastFloorError, InvalidScheduleError, NgslError, StiffnessError
from .ledger import LedgerEntry, Mode, TransitEvent, apply_event
from .schwarzschild import BlackHole, bh_entropy, gravitational_information_bh, hawking_temperature
from .shell import DiskProfile, build_shell, channel_width_bound

# Photon-sector evaporation coefficient in geometric units.
DEFAULT_ALPHA = 1.0 / (15360.0 * math.pi)

_MAX_REJECTIONS = 500  # consecutive rejected trials before declaring stiffness
_MAX_GROW = 5.0
_MAX_SHRINK = 0.2
_SAFETY = 0.9
# Cap on the relative mass change per step.  Loose tolerances would
# otherwise admit steps far outside the asymptotic regime, where the
# embedded error estimate underreports the true truncation error.
_MAX_REL_MASS_STEP = 0.05


@dataclass(frozen=True)
class StepControl:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_step: float = math.inf

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise NgslError("rel_tol and abs_tol must be > 0")
        if self.max_step <= 0.0:
            raise NgslError("max_step must be > 0")


@dataclass(frozen=True)
class ShellPolicy:
    profile: DiskProfile
    window: float


@dataclass(frozen=True)
class EvolutionConfig:
    alpha: float = DEFAULT_ALPHA
    mass_floor: float = 1e-6
    t_end: float = 1.0
    step_control: StepControl = field(default_factory=StepControl)
    shell_policy: ShellPolicy | None = None

    def __post_init__(self):
        if self.alpha < 0.0 or not math.isfinite(self.alpha):
            raise NgslError(f"alpha must be finite and >= 0, got {self.alpha}")
        if self.mass_floor <= 0.0:
            raise NgslError(f"mass_floor must be > 0, got {self.mass_floor}")
        if self.t_end <= 0.0:
            raise NgslError(f"t_end must be > 0, got {self.t_end}")


class StopReason(enum.Enum):
    REACHED_T_END = "t_end"
    REACHED_MASS_FLOOR = "mass_floor"


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    mass: float
    temperature: float
    entropy: float
    information: float
    shell_mass: float
    channel_budget: float
    event: bool = False


@dataclass(frozen=True)
class EventRecord:
    """One processed transit: its ledger entry plus the shell snapshot."""

    time: float
    entry: LedgerEntry
    shell_mass: float
    width_bound: float
    sample_index: int


@dataclass(frozen=True)
class Trajectory:
    samples: tuple[TrajectorySample, ...]
    events: tuple[EventRecord, ...]
    stop_reason: StopReason
    config: EvolutionConfig


def evaporation_rate(mass: float, alpha: float, mass_floor: float = 0.0) -> float:
    """Mass-loss rate -alpha / M^2; refuses masses below the floor."""
    if mass < mass_floor:
        raise EvaporatedPastFloorError(
            f"mass {mass} is below the evaporation floor {mass_floor}"
        )
    return -alpha / (mass * mass)


def analytic_lifetime(m0: float, alpha: float) -> float:
    """Exact extinction time M0^3 / (3 alpha) of dM/dt = -alpha/M^2."""
    return m0**3 / (3.0 * alpha)


def evaporation_budget_increment(
    m_from: float, m_to: float, ms_from: float, ms_to: float
) -> float:
    """Trapezoidal slice of the continuous channel budget.

    Approximates integral of -8 pi M_s(M) dM over one step; exact for a
    shell mass constant or linear in M, and telescoping exactly when
    constant.
    """
    return -8.0 * math.pi * 0.5 * (ms_from + ms_to) * (m_to - m_from)


def cumulative_channel_budget(traj: Trajectory) -> float:
    """Net channel-width budget over the whole trajectory.

    Sum of -8 pi M_s dM over transits plus the trapezoidal integral of
    the same form over the continuous evaporation segments; already
    accumulated sample by sample, so this is the final sample's value.
    """
    return traj.samples[-1].channel_budget


class _StageFailure(Exception):
    """A trial step drove an intermediate stage to non-positive mass."""


def _rate(mass: float, alpha: float) -> float:
    if mass <= 0.0:
        raise _StageFailure
    return -alpha / (mass * mass)


def _rkf45_step(mass: float, h: float, alpha: float) -> tuple[float, float]:
    """One Fehlberg 4(5) step; returns the 4th-order result and error estimate."""
    k1 = _rate(mass, alpha)
    k2 = _rate(mass + h * 0.25 * k1, alpha)
    k3 = _rate(mass + h * (3.0 / 32.0 * k1 + 9.0 / 32.0 * k2), alpha)
    k4 = _rate(
        mass + h * (1932.0 / 2197.0 * k1 - 7200.0 / 2197.0 * k2 + 7296.0 / 2197.0 * k3),
        alpha,
    )
    k5 = _rate(
        mass
        + h
        * (439.0 / 216.0 * k1 - 8.0 * k2 + 3680.0 / 513.0 * k3 - 845.0 / 4104.0 * k4),
        alpha,
    )
    k6 = _rate(
        mass
        + h
        * (
            -8.0 / 27.0 * k1
            + 2.0 * k2
            - 3544.0 / 2565.0 * k3
            + 1859.0 / 4104.0 * k4
            - 11.0 / 40.0 * k5
        ),
        alpha,
    )
    m4 = mass + h * (
        25.0 / 216.0 * k1 + 1408.0 / 2565.0 * k3 + 2197.0 / 4104.0 * k4 - 0.2 * k5
    )
    m5 = mass + h * (
        16.0 / 135.0 * k1
        + 6656.0 / 12825.0 * k3
        + 28561.0 / 56430.0 * k4
        - 9.0 / 50.0 * k5
        + 2.0 / 55.0 * k6
    )
    return m4, abs(m5 - m4)


def _floor_crossing_fraction(mass: float, h: float, floor: float, alpha: float) -> float:
    """Bisect the step size s in (0, h] at which the step lands on the floor."""
    lo, hi = 0.0, h
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        try:
            m_mid, _ = _rkf45_step(mass, mid, alpha)
        except _StageFailure:
            hi = mid
            continue
        if m_mid > floor:
            lo = mid
        elif m_mid < floor:
            hi = mid
        else:
            return mid
    return 0.5 * (lo + hi)


def _shell_mass(mass: float, policy: ShellPolicy | None) -> float:
    if policy is None:
        return 0.0
    return build_shell(BlackHole(mass), policy.profile, policy.window).mass


def _validate_schedule(events: list[TransitEvent], t_end: float) -> None:
    prev = 0.0
    for i, ev in enumerate(events):
        if ev.time <= 0.0:
            raise InvalidScheduleError(f"event {i}: time must be > 0, got {ev.time}")
        if ev.time < prev:
            raise InvalidScheduleError(
                f"event {i}: times must be sorted, {ev.time} follows {prev}"
            )
        if ev.time >= t_end:
            raise InvalidScheduleError(
                f"event {i}: time {ev.time} must precede t_end {t_end}"
            )
        prev = ev.time


def integrate(
    bh0: BlackHole,
    events: list[TransitEvent] | tuple[TransitEvent, ...],
    cfg: EvolutionConfig,
    mode: Mode = Mode.DIFFERENTIAL,
) -> Trajectory:
    """Advance the hole from t=0 to t_end or the mass floor.

    Scheduled transits apply atomically between integration steps at
    their exact times (the stepper is clipped so it never straddles
    one).  Stops early, recording the reason, when the mass would cross
    ``cfg.mass_floor``.
    """
    events = list(events)
    _validate_schedule(events, cfg.t_end)
    if bh0.mass < cfg.mass_floor:
        raise EvaporatedPastFloorError(
            f"initial mass {bh0.mass} is below the floor {cfg.mass_floor}"
        )

    sc = cfg.step_control
    alpha = cfg.alpha
    floor = cfg.mass_floor

    t = 0.0
    mass = bh0.mass
    budget = 0.0
    ms = _shell_mass(mass, cfg.shell_policy)

    def make_sample(event_flag: bool = False) -> TrajectorySample:
        bh = BlackHole(mass)
        return TrajectorySample(
            t=t,
            mass=mass,
            temperature=hawking_temperature(bh),
            entropy=bh_entropy(bh),
            information=gravitational_information_bh(bh),
            shell_mass=ms,
            channel_budget=budget,
            event=event_flag,
        )

    samples = [make_sample()]
    records: list[EventRecord] = []
    next_event = 0
    stop: StopReason | None = None

    # Initial step proposal from the evaporation timescale M^3/alpha.
    if alpha > 0.0:
        h_prop = min(sc.max_step, 1e-3 * mass**3 / alpha, cfg.t_end)
    else:
        h_prop = min(sc.max_step, cfg.t_end)

    while stop is None:
        # Apply every transit scheduled at the current time, then emit one
        # post-event sample so t stays strictly increasing.
        if next_event < len(events) and events[next_event].time == t:
            while next_event < len(events) and events[next_event].time == t:
                ev = events[next_event]
                pre_bh = BlackHole(mass)
                if cfg.shell_policy is not None:
                    shell = build_shell(
                        pre_bh, cfg.shell_policy.profile, cfg.shell_policy.window
                    )
                else:
                    shell = None
                bound = channel_width_bound(shell, ev.signed_dm) if shell else 0.0
                new_bh, entry = apply_event(pre_bh, ev, mode=mode, mass_floor=floor)
                budget += bound
                mass = new_bh.mass
                records.append(
                    EventRecord(
                        time=t,
                        entry=entry,
                        shell_mass=shell.mass if shell else 0.0,
                        width_bound=bound,
                        sample_index=len(samples),
                    )
                )
                next_event += 1
            ms = _shell_mass(mass, cfg.shell_policy)
            samples.append(make_sample(event_flag=True))
            continue

        if t >= cfg.t_end:
            stop = StopReason.REACHED_T_END
            break
        if mass <= floor and alpha > 0.0:
            stop = StopReason.REACHED_MASS_FLOOR
            break

        t_target = events[next_event].time if next_event < len(events) else cfg.t_end
        remaining = t_target - t

        # One accepted step toward t_target.
        rejections = 0
        while True:
            h_try = min(h_prop, sc.max_step, remaining)
            if alpha > 0.0:
                # |dM|/M per step stays below _MAX_REL_MASS_STEP.
                h_try = min(h_try, _MAX_REL_MASS_STEP * mass**3 / alpha)
            if h_try <= 0.0 or rejections > _MAX_REJECTIONS:
                raise StiffnessError(
                    f"step size underflow at t={t!r}, M={mass!r}, h={h_try!r} "
                    f"after {rejections} rejected trials; tolerances are "
                    "unattainable for this configuration",
                    t=t,
                    mass=mass,
                    step=h_try,
                )
            clamped = h_try < h_prop
            try:
                m_new, err = _rkf45_step(mass, h_try, alpha)
            except _StageFailure:
                h_prop = 0.5 * h_try
                rejections += 1
                continue
            tol = sc.abs_tol + sc.rel_tol * max(abs(mass), abs(m_new))
            if err > tol:
                shrink = max(_MAX_SHRINK, _SAFETY * (tol / err) ** 0.2)
                h_prop = h_try * min(0.9, shrink)
                rejections += 1
                continue

            # Accepted.  Regrow the free proposal from the error estimate.
            grow = _MAX_GROW if err == 0.0 else min(
                _MAX_GROW, max(_MAX_SHRINK, _SAFETY * (tol / err) ** 0.2)
            )
            new_prop = h_try * grow
            h_prop = max(new_prop, h_prop) if clamped else new_prop

            if m_new < floor:
                s = _floor_crossing_fraction(mass, h_try, floor, alpha)
                ms_new = _shell_mass(floor, cfg.shell_policy)
                budget += evaporation_budget_increment(mass, floor, ms, ms_new)
                t, mass, ms = t + s, floor, ms_new
                samples.append(make_sample())
                stop = StopReason.REACHED_MASS_FLOOR
            else:
                ms_new = _shell_mass(m_new, cfg.shell_policy)
                budget += evaporation_budget_increment(mass, m_new, ms, ms_new)
                t = t_target if h_try == remaining else t + h_try
                mass, ms = m_new, ms_new
                # Landing on an event time: hold the sample so the event
                # handler emits the single post-event row at this t.
                arrived_at_event = (
                    next_event < len(events) and events[next_event].time == t
                )
                if not arrived_at_event:
                    samples.append(make_sample())
            break

    return Trajectory(
        samples=tuple(samples),
        events=tuple(records),
        stop_reason=stop,
        config=cfg,
    )
