"""Black-hole information-ledger simulator.

Computes Schwarzschild thermodynamics and gravitational information in
natural units, runs horizon transits through a complementarity-aware
double-entry ledger, bounds the information channel width set by the
hole's near-horizon shell, integrates evaporation trajectories, and
independently verifies the generalized second law dS - dI >= 0 on
exhaustively enumerable Maxwell-demon models.
"""

__version__ = "0.1.0"

from .errors import (
    ComplementarityViolationError,
    EvaporatedPastFloorError,
    InsideHorizonError,
    InvalidDistributionError,
    InvalidMassError,
    InvalidModelError,
    InvalidQuantityError,
    InvalidScheduleError,
    InvalidWindowError,
    NgslError,
    ScenarioError,
    StiffnessError,
)
from .units import (
    DIMENSIONLESS,
    ENERGY,
    LENGTH,
    MASS,
    NATURAL,
    SI,
    TEMPERATURE,
    TIME,
    Dimension,
    Quantity,
    from_natural,
    to_natural,
)
from .schwarzschild import (
    BlackHole,
    bh_entropy,
    gravitational_information_bh,
    hawking_temperature,
    horizon_radius,
)
from .screen import (
    HORIZON,
    ScreenGeometry,
    entropy_from_descent,
    gravitational_information_marked,
    screen_geometry,
)
from .ledger import (
    Channel,
    ChannelState,
    Direction,
    LedgerEntry,
    Mode,
    TransitEvent,
    apply_event,
    bh_entropy_change,
    info_carry_term,
    info_sense_term,
    ngsl_balance,
    observe_channel,
)
from .shell import (
    DiskProfile,
    Shell,
    build_shell,
    channel_width_bound,
    shell_entropy_change,
    shell_info_change,
    shell_ngsl_residual,
)
from .evolution import (
    DEFAULT_ALPHA,
    EvolutionConfig,
    EventRecord,
    ShellPolicy,
    StepControl,
    StopReason,
    Trajectory,
    TrajectorySample,
    analytic_lifetime,
    cumulative_channel_budget,
    evaporation_rate,
    integrate,
)
from .demon import (
    FeedbackModel,
    NgslReport,
    coarsen_outcomes,
    default_grid,
    entropy_production,
    feedback_information_change,
    joint_distribution,
    mean_extracted_work,
    mutual_information,
    ngsl_gap,
    over_extracting_model,
    szilard_model,
    verify_ngsl,
)
from .scenario import (
    EventSpec,
    Scenario,
    parse_scenario,
    scenario_fingerprint,
    scenario_from_dict,
    scenario_to_dict,
)
