"""Exhaustive second-law verification on measurement-feedback engines.

The generalized second law this package tests, dS - dI >= 0, comes from
the stochastic thermodynamics of feedback control (the Sagawa-Ueda
fluctuation-theorem framework): dS is the total entropy production of
the feedback step, bath included, and dI is the change of the
system-memory mutual information during that step.  Feedback consumes
the correlation the measurement established, so dI = -I(X;Y) when the
protocol uses it all, and the inequality is the familiar work bound
W_ext <= T * I(X;Y).

Models here are small and discrete, so every quantity is an exact sum
over the (state, outcome) table; nothing is sampled.  A protocol is
data — a work table w[x][y] — which lets tests build both lawful and
deliberately over-extracting protocols to validate the detector in both
directions.

The canonical Szilard family: a one-particle box, partition inserted in
the middle, measurement of the particle's side with symmetric error
rate eps, then a quasistatic isothermal expansion moving the partition
until the indicated side occupies a stop fraction v of the box.  The
particle's volume goes 1/2 -> v when the outcome was right, 1/2 -> 1-v
when wrong:

    w(right) = T ln(2 v),    w(wrong) = T ln(2 (1 - v)).

The choice v = 1 - eps matches the posterior and extracts exactly
T * I(X;Y): the bound saturates at every error rate.  Any other stop
fraction is strictly suboptimal.  Natural log throughout (k_B = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDistributionError, InvalidModelError

_NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class FeedbackModel:
    """A discrete measurement-feedback engine.

    ``work_table[x][y]`` is the work extracted when the true state is x
    and the measurement reads y; ``system_entropy_table`` holds any
    per-realization system entropy change over the cycle (zero for the
    cyclic Szilard protocols).  -inf work entries are allowed only where
    the joint probability vanishes.
    """

    n_states: int
    prior: tuple[float, ...]
    error_rate: float
    bath_temperature: float
    work_table: tuple[tuple[float, ...], ...]
    system_entropy_table: tuple[tuple[float, ...], ...] | None = None
    label: str = ""

    def __post_init__(self):
        if self.n_states < 2:
            raise InvalidModelError(f"n_states must be >= 2, got {self.n_states}")
        if len(self.prior) != self.n_states:
            raise InvalidModelError(
                f"prior length {len(self.prior)} != n_states {self.n_states}"
            )
        if any(p < 0.0 or p > 1.0 for p in self.prior):
            raise InvalidModelError(f"prior entries must lie in [0, 1]: {self.prior}")
        if abs(sum(self.prior) - 1.0) > _NORMALIZATION_TOL:
            raise InvalidModelError(f"prior must sum to 1, got {sum(self.prior)!r}")
        if not 0.0 <= self.error_rate <= 0.5:
            raise InvalidModelError(
                f"error rate must lie in [0, 0.5], got {self.error_rate}"
            )
        if self.bath_temperature <= 0.0:
            raise InvalidModelError(
                f"bath temperature must be > 0, got {self.bath_temperature}"
            )
        if len(self.work_table) != self.n_states or any(
            len(row) != self.n_states for row in self.work_table
        ):
            raise InvalidModelError("work_table must be n_states x n_states")
        if self.system_entropy_table is not None and (
            len(self.system_entropy_table) != self.n_states
            or any(len(row) != self.n_states for row in self.system_entropy_table)
        ):
            raise InvalidModelError("system_entropy_table must be n_states x n_states")


def joint_distribution(model: FeedbackModel) -> np.ndarray:
    """Joint p(x, y) = prior(x) * channel(y|x) with symmetric confusion.

    channel(y|x) is 1 - eps on the diagonal and eps/(n-1) off it, which
    reduces to the binary symmetric channel for two states.
    """
    n = model.n_states
    eps = model.error_rate
    off = eps / (n - 1)
    joint = np.full((n, n), off)
    np.fill_diagonal(joint, 1.0 - eps)
    joint *= np.asarray(model.prior)[:, None]
    return joint


def _check_joint(joint: np.ndarray) -> np.ndarray:
    joint = np.asarray(joint, dtype=float)
    if joint.ndim != 2:
        raise InvalidDistributionError(f"joint must be a matrix, got shape {joint.shape}")
    if np.any(joint < 0.0):
        raise InvalidDistributionError("joint probabilities must be nonnegative")
    total = float(joint.sum())
    if abs(total - 1.0) > _NORMALIZATION_TOL:
        raise InvalidDistributionError(f"joint must sum to 1, got {total!r}")
    return joint


def mutual_information(joint: np.ndarray) -> float:
    """I(X;Y) in nats from a joint table; 0 ln 0 terms are dropped."""
    joint = _check_joint(joint)
    px = joint.sum(axis=1)
    py = joint.sum(axis=0)
    total = 0.0
    for i in range(joint.shape[0]):
        for j in range(joint.shape[1]):
            p = float(joint[i, j])
            if p > 0.0:
                total += p * math.log(p / float(px[i] * py[j]))
    return total


def coarsen_outcomes(joint: np.ndarray, groups: list[list[int]]) -> np.ndarray:
    """Merge outcome columns into the given groups (data-processing step)."""
    joint = _check_joint(joint)
    cols = [joint[:, g].sum(axis=1) for g in groups]
    return np.stack(cols, axis=1)


def mean_extracted_work(model: FeedbackModel) -> float:
    """Ensemble-mean work extracted by the protocol."""
    joint = joint_distribution(model)
    total = 0.0
    for x in range(model.n_states):
        for y in range(model.n_states):
            p = float(joint[x, y])
            if p > 0.0:
                total += p * model.work_table[x][y]
    return total


def entropy_production(model: FeedbackModel) -> float:
    """Total entropy production of the feedback step, bath included.

    Exhaustive sum over the (state, outcome) table: each realized pair
    contributes -w(x,y)/T (the bath pays for extracted work) plus any
    declared system entropy change.  Zero-probability cells are skipped,
    which also keeps -inf work entries at eps = 0 harmless.
    """
    joint = joint_distribution(model)
    t_bath = model.bath_temperature
    ds_table = model.system_entropy_table
    total = 0.0
    for x in range(model.n_states):
        for y in range(model.n_states):
            p = float(joint[x, y])
            if p > 0.0:
                ds_sys = ds_table[x][y] if ds_table is not None else 0.0
                total += p * (-model.work_table[x][y] / t_bath + ds_sys)
    return total


def feedback_information_change(model: FeedbackModel) -> float:
    """Mutual-information change during feedback: -I(X;Y).

    The protocol consumes the measurement correlation, so the
    information shared with the memory drops from I(X;Y) to zero.
    """
    return -mutual_information(joint_distribution(model))


def ngsl_gap(model: FeedbackModel) -> float:
    """dS - dI for one model; nonnegative iff the model obeys the law."""
    return entropy_production(model) - feedback_information_change(model)


@dataclass(frozen=True)
class NgslReport:
    """Result of sweeping dS - dI over a model grid."""

    gaps: tuple[float, ...]
    min_gap: float
    argmin_index: int
    argmin_model: FeedbackModel
    passed: bool
    tolerance: float
    saturated_indices: tuple[int, ...] = field(default_factory=tuple)


def verify_ngsl(models: list[FeedbackModel], tol: float = 1e-12) -> NgslReport:
    """Evaluate dS - dI exactly on every model and report the minimum.

    Passes when min(dS - dI) >= -tol; models within tol of equality form
    the saturation frontier.
    """
    if not models:
        raise InvalidModelError("verify_ngsl requires a nonempty model grid")
    gaps = [ngsl_gap(m) for m in models]
    argmin = min(range(len(gaps)), key=lambda i: gaps[i])
    saturated = tuple(i for i, g in enumerate(gaps) if abs(g) <= tol)
    return NgslReport(
        gaps=tuple(gaps),
        min_gap=gaps[argmin],
        argmin_index=argmin,
        argmin_model=models[argmin],
        passed=bool(gaps[argmin] >= -tol),
        tolerance=tol,
        saturated_indices=saturated,
    )


def szilard_model(
    error_rate: float,
    stop_fraction: float | None = None,
    bath_temperature: float = 1.0,
    label: str = "",
) -> FeedbackModel:
    """Binary Szilard engine with symmetric measurement error.

    ``stop_fraction`` is the final volume fraction of the side the
    measurement indicated; None selects the posterior-matched optimum
    1 - eps, which saturates the work bound.  At eps = 0 with full
    expansion the wrong-outcome work is -inf, which is fine: that cell
    has zero probability.
    """
    v = (1.0 - error_rate) if stop_fraction is None else stop_fraction
    if not 0.0 < v <= 1.0:
        raise InvalidModelError(f"stop fraction must lie in (0, 1], got {v}")
    t = bath_temperature
    w_right = t * math.log(2.0 * v)
    w_wrong = t * math.log(2.0 * (1.0 - v)) if v < 1.0 else -math.inf
    if not label:
        label = f"szilard eps={error_rate:g} v={v:g}"
    return FeedbackModel(
        n_states=2,
        prior=(0.5, 0.5),
        error_rate=error_rate,
        bath_temperature=t,
        work_table=((w_right, w_wrong), (w_wrong, w_right)),
        label=label,
    )


def over_extracting_model(
    error_rate: float = 0.1, bath_temperature: float = 1.0
) -> FeedbackModel:
    """Unphysical +-T ln 2 weight-lifting protocol for detector tests.

    Claims T ln 2 on a correct outcome and loses only T ln 2 on a wrong
    one, so its mean work (1-2 eps) T ln 2 exceeds T * I for any eps in
    (0, 0.5): verify_ngsl must flag it.
    """
    if not 0.0 < error_rate < 0.5:
        raise InvalidModelError(
            f"over-extraction needs 0 < eps < 0.5, got {error_rate}"
        )
    t = bath_temperature
    w = t * math.log(2.0)
    return FeedbackModel(
        n_states=2,
        prior=(0.5, 0.5),
        error_rate=error_rate,
        bath_temperature=t,
        work_table=((w, -w), (-w, w)),
        label=f"over-extracting eps={error_rate:g}",
    )


def default_grid(
    start: float = 0.0, stop: float = 0.5, step: float = 0.01
) -> list[FeedbackModel]:
    """Canonical posterior-matched Szilard models over an error-rate grid."""
    n = int(round((stop - start) / step))
    return [szilard_model(min(start + k * step, 0.5)) for k in range(n + 1)]
