"""Exception types shared across the simulator.

Validation failures subclass ValueError so plain ``except ValueError``
still works for callers that do not care which invariant broke.
"""


class NgslError(Exception):
    """Base class for all errors raised by this package."""


class InvalidQuantityError(NgslError, ValueError):
    """A unit-tagged quantity is non-finite or malformed."""


class InvalidMassError(NgslError, ValueError):
    """A mass (hole, particle, or marked object) violates positivity."""


class InsideHorizonError(NgslError, ValueError):
    """A screen radius lies at or inside the horizon guard band."""


class InvalidWindowError(NgslError, ValueError):
    """A causal window duration is not positive."""


class EvaporatedPastFloorError(NgslError, ValueError):
    """An operation would push the hole mass below the configured floor."""


class ComplementarityViolationError(NgslError, RuntimeError):
    """Both information channels of one ledger entry were requested.

    Reading one channel destroys the other; the ledger enforces this as a
    read-once-per-channel state machine.
    """


class InvalidScheduleError(NgslError, ValueError):
    """A transit-event schedule is unsorted or extends past the end time."""


class StiffnessError(NgslError, RuntimeError):
    """The adaptive integrator's step size underflowed.

    Carries the time, state, and step size at failure for diagnosis.
    """

    def __init__(self, message, t=None, mass=None, step=None):
        super().__init__(message)
        self.t = t
        self.mass = mass
        self.step = step


class InvalidDistributionError(NgslError, ValueError):
    """A probability table has negative entries or is not normalized."""


class InvalidModelError(NgslError, ValueError):
    """A feedback model violates its invariants (prior, error rate, shape)."""


class ScenarioError(NgslError, ValueError):
    """A scenario document failed validation.

    ``key`` holds the dotted path of the offending entry when known.
    """

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
