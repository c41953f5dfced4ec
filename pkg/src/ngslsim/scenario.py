"""Scenario documents: the YAML front door of the simulator.

A scenario is one YAML document (comment-capable, diff-able) declaring
the initial hole, the transit schedule, evaporation and shell settings,
an optional demon model grid, optional sweep axes, and output targets.
Only ``initial_mass`` is required; every other key has a documented
default.  Masses accept unit tags ("1.0 solar_mass", "2e30 kg"); all
other numbers are natural units.

Validation is fail-fast: every key is checked against its owning
module's invariants before any computation starts, and errors name the
offending key path (``events[2].mass``, ``evolution.rel_tol``, ...).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import yaml

from .demon import FeedbackModel, szilard_model
from .errors import NgslError, ScenarioError
from .evolution import DEFAULT_ALPHA, EvolutionConfig, ShellPolicy, StepControl
from .ledger import Direction, Mode, TransitEvent
from .shell import DiskProfile
from .units import MASS, SI, Quantity, to_natural, M_SUN_SI

_TOP_KEYS = {"name", "initial_mass", "mode", "evolution", "shell", "events", "demon", "sweep", "output"}
_EVOLUTION_KEYS = {"alpha", "t_end", "mass_floor", "rel_tol", "abs_tol", "max_step"}
_SHELL_KEYS = {"sigma0", "r_ref", "p", "r_outer_max", "window"}
_EVENT_KEYS = {"time", "mass", "direction", "observer_info_change"}
_DEMON_KEYS = {"epsilons", "protocol", "bath_temperature", "tolerance"}
_PROTOCOL_KEYS = {"kind", "stop_fraction", "work", "error_rate"}
_OUTPUT_KEYS = {"directory", "formats"}
_EPSILON_RANGE_KEYS = {"start", "stop", "step"}

_MASS_UNITS_KG = {
    "kg": 1.0,
    "g": 1e-3,
    "solar_mass": M_SUN_SI,
    "msun": M_SUN_SI,
}


@dataclass(frozen=True)
class EventSpec:
    """A transit plus the observer's declared information change, if any."""

    event: TransitEvent
    observer_info_change: float | None = None


@dataclass(frozen=True)
class Scenario:
    name: str
    initial_mass: float
    mode: Mode
    evolution: EvolutionConfig
    events: tuple[EventSpec, ...]
    demon_models: tuple[FeedbackModel, ...] | None
    demon_tolerance: float
    sweep_axes: tuple[tuple[str, tuple[float, ...]], ...] | None
    output_directory: str
    output_formats: tuple[str, ...]
    raw: dict = field(repr=False, compare=False, default_factory=dict)


def _fail(path: str, message: str):
    raise ScenarioError(f"{path}: {message}", key=path)


def _require_mapping(doc, path: str) -> dict:
    if not isinstance(doc, dict):
        _fail(path, f"expected a mapping, got {type(doc).__name__}")
    return doc


def _check_keys(doc: dict, allowed: set, path: str):
    for key in doc:
        if key not in allowed:
            _fail(f"{path}.{key}" if path else str(key), "unknown key")


def _number(value, path: str, minimum=None, strict=False, default=None):
    if value is None:
        return default
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        _fail(path, f"must be finite, got {value!r}")
    if minimum is not None:
        if strict and value <= minimum:
            _fail(path, f"must be > {minimum}, got {value}")
        if not strict and value < minimum:
            _fail(path, f"must be >= {minimum}, got {value}")
    return value


def _mass_value(value, path: str) -> float:
    """Accept a bare natural-unit number or a '<value> <unit>' string."""
    if isinstance(value, str):
        parts = value.split()
        if len(parts) != 2:
            _fail(path, f"expected '<value> <unit>', got {value!r}")
        try:
            magnitude = float(parts[0])
        except ValueError:
            _fail(path, f"bad numeric value in {value!r}")
        unit = parts[1].lower()
        if unit in ("natural", "planck"):
            return magnitude
        if unit not in _MASS_UNITS_KG:
            _fail(path, f"unknown mass unit {parts[1]!r}; use kg, g, solar_mass, or natural")
        kilograms = magnitude * _MASS_UNITS_KG[unit]
        return to_natural(Quantity(kilograms, MASS, SI))
    return _number(value, path)


def _parse_events(doc, path: str) -> tuple[EventSpec, ...]:
    if doc is None:
        return ()
    if not isinstance(doc, list):
        _fail(path, f"expected a list, got {type(doc).__name__}")
    specs = []
    for i, item in enumerate(doc):
        ipath = f"{path}[{i}]"
        item = _require_mapping(item, ipath)
        _check_keys(item, _EVENT_KEYS, ipath)
        if "time" not in item:
            _fail(f"{ipath}.time", "missing required key")
        if "mass" not in item:
            _fail(f"{ipath}.mass", "missing required key")
        time = _number(item["time"], f"{ipath}.time", minimum=0.0, strict=True)
        mass = _mass_value(item["mass"], f"{ipath}.mass")
        if mass <= 0.0:
            _fail(f"{ipath}.mass", f"must be > 0, got {mass}")
        direction_raw = item.get("direction", "infall")
        try:
            direction = Direction(direction_raw)
        except ValueError:
            _fail(f"{ipath}.direction", f"must be 'infall' or 'emission', got {direction_raw!r}")
        d_info = item.get("observer_info_change")
        if d_info is not None:
            d_info = _number(d_info, f"{ipath}.observer_info_change")
        specs.append(
            EventSpec(TransitEvent(time=time, particle_mass=mass, direction=direction), d_info)
        )
    return tuple(specs)


def _parse_demon(doc, path: str) -> tuple[tuple[FeedbackModel, ...] | None, float]:
    if doc is None:
        return None, 1e-12
    doc = _require_mapping(doc, path)
    _check_keys(doc, _DEMON_KEYS, path)
    tol = _number(doc.get("tolerance"), f"{path}.tolerance", minimum=0.0, default=1e-12)
    bath_t = _number(
        doc.get("bath_temperature"), f"{path}.bath_temperature", minimum=0.0, strict=True, default=1.0
    )

    eps_doc = doc.get("epsilons", {"start": 0.0, "stop": 0.5, "step": 0.01})
    if isinstance(eps_doc, list):
        epsilons = [
            _number(e, f"{path}.epsilons[{i}]", minimum=0.0) for i, e in enumerate(eps_doc)
        ]
    else:
        eps_doc = _require_mapping(eps_doc, f"{path}.epsilons")
        _check_keys(eps_doc, _EPSILON_RANGE_KEYS, f"{path}.epsilons")
        start = _number(eps_doc.get("start"), f"{path}.epsilons.start", minimum=0.0, default=0.0)
        stop = _number(eps_doc.get("stop"), f"{path}.epsilons.stop", minimum=0.0, default=0.5)
        step = _number(eps_doc.get("step"), f"{path}.epsilons.step", minimum=0.0, strict=True, default=0.01)
        count = int(round((stop - start) / step))
        epsilons = [min(start + k * step, 0.5) for k in range(count + 1)]
    for i, e in enumerate(epsilons):
        if not 0.0 <= e <= 0.5:
            _fail(f"{path}.epsilons[{i}]", f"error rate must lie in [0, 0.5], got {e}")

    proto = doc.get("protocol", {"kind": "posterior"})
    proto = _require_mapping(proto, f"{path}.protocol")
    _check_keys(proto, _PROTOCOL_KEYS, f"{path}.protocol")
    kind = proto.get("kind", "posterior")
    try:
        if kind == "posterior":
            models = [szilard_model(e, bath_temperature=bath_t) for e in epsilons]
        elif kind == "fixed":
            v = _number(proto.get("stop_fraction"), f"{path}.protocol.stop_fraction")
            if v is None:
                _fail(f"{path}.protocol.stop_fraction", "missing required key for kind 'fixed'")
            models = [szilard_model(e, stop_fraction=v, bath_temperature=bath_t) for e in epsilons]
        elif kind == "table":
            work = proto.get("work")
            if work is None:
                _fail(f"{path}.protocol.work", "missing required key for kind 'table'")
            table = tuple(tuple(float(w) for w in row) for row in work)
            n = len(table)
            prior = tuple(1.0 / n for _ in range(n))
            models = [
                FeedbackModel(
                    n_states=n,
                    prior=prior,
                    error_rate=e,
                    bath_temperature=bath_t,
                    work_table=table,
                    label=f"table eps={e:g}",
                )
                for e in epsilons
            ]
        else:
            _fail(f"{path}.protocol.kind", f"must be 'posterior', 'fixed', or 'table', got {kind!r}")
    except ScenarioError:
        raise
    except NgslError as exc:
        _fail(f"{path}.protocol", str(exc))
    return tuple(models), tol


def _parse_sweep(doc, path: str):
    if doc is None:
        return None
    doc = _require_mapping(doc, path)
    axes = []
    for key in sorted(doc):
        values = doc[key]
        if not isinstance(values, list) or not values:
            _fail(f"{path}.{key}", "sweep axis must be a nonempty list of values")
        axes.append(
            (key, tuple(_number(v, f"{path}.{key}[{i}]") for i, v in enumerate(values)))
        )
    return tuple(axes)


def scenario_from_dict(doc: dict) -> Scenario:
    """Validate a parsed document and resolve every default."""
    doc = _require_mapping(doc, "scenario")
    _check_keys(doc, _TOP_KEYS, "")

    if "initial_mass" not in doc:
        _fail("initial_mass", "missing required key")
    initial_mass = _mass_value(doc["initial_mass"], "initial_mass")
    if initial_mass <= 0.0:
        _fail("initial_mass", f"must be > 0, got {initial_mass}")

    name = doc.get("name", "scenario")
    if not isinstance(name, str) or not name:
        _fail("name", f"expected a nonempty string, got {name!r}")

    mode_raw = doc.get("mode", "differential")
    try:
        mode = Mode(mode_raw)
    except ValueError:
        _fail("mode", f"must be 'differential' or 'exact', got {mode_raw!r}")

    evo = _require_mapping(doc.get("evolution", {}), "evolution")
    _check_keys(evo, _EVOLUTION_KEYS, "evolution")
    alpha = _number(evo.get("alpha"), "evolution.alpha", minimum=0.0, default=DEFAULT_ALPHA)
    t_end = _number(evo.get("t_end"), "evolution.t_end", minimum=0.0, strict=True, default=100.0)
    mass_floor = _number(
        evo.get("mass_floor"), "evolution.mass_floor", minimum=0.0, strict=True,
        default=1e-6 * initial_mass,
    )
    rel_tol = _number(evo.get("rel_tol"), "evolution.rel_tol", minimum=0.0, strict=True, default=1e-10)
    abs_tol = _number(evo.get("abs_tol"), "evolution.abs_tol", minimum=0.0, strict=True, default=1e-14)
    max_step = _number(
        evo.get("max_step"), "evolution.max_step", minimum=0.0, strict=True, default=t_end / 100.0
    )

    sh = _require_mapping(doc.get("shell", {}), "shell")
    _check_keys(sh, _SHELL_KEYS, "shell")
    sigma0 = _number(sh.get("sigma0"), "shell.sigma0", minimum=0.0, default=0.0)
    r_ref = _number(sh.get("r_ref"), "shell.r_ref", minimum=0.0, strict=True, default=2.0)
    p = _number(sh.get("p"), "shell.p", default=0.0)
    r_outer_max = _number(sh.get("r_outer_max"), "shell.r_outer_max", default=1e6)
    if r_outer_max <= r_ref:
        _fail("shell.r_outer_max", f"must exceed r_ref={r_ref}, got {r_outer_max}")
    window = _number(sh.get("window"), "shell.window", minimum=0.0, strict=True, default=1.0)

    try:
        profile = DiskProfile(sigma0=sigma0, r_ref=r_ref, p=p, r_outer_max=r_outer_max)
        evolution = EvolutionConfig(
            alpha=alpha,
            mass_floor=mass_floor,
            t_end=t_end,
            step_control=StepControl(rel_tol=rel_tol, abs_tol=abs_tol, max_step=max_step),
            shell_policy=ShellPolicy(profile=profile, window=window),
        )
    except NgslError as exc:
        raise ScenarioError(f"evolution/shell configuration invalid: {exc}") from exc

    events = _parse_events(doc.get("events"), "events")
    for i, spec in enumerate(events):
        if spec.event.time >= t_end:
            _fail(f"events[{i}].time", f"must precede evolution.t_end={t_end}, got {spec.event.time}")

    demon_models, demon_tol = _parse_demon(doc.get("demon"), "demon")
    sweep_axes = _parse_sweep(doc.get("sweep"), "sweep")

    out = _require_mapping(doc.get("output", {}), "output")
    _check_keys(out, _OUTPUT_KEYS, "output")
    directory = out.get("directory", f"out/{name}")
    if not isinstance(directory, str) or not directory:
        _fail("output.directory", f"expected a nonempty string, got {directory!r}")
    formats = out.get("formats", ["csv", "json"])
    if not isinstance(formats, list) or not formats:
        _fail("output.formats", "expected a nonempty list")
    for i, fmt in enumerate(formats):
        if fmt not in ("csv", "json"):
            _fail(f"output.formats[{i}]", f"must be 'csv' or 'json', got {fmt!r}")

    return Scenario(
        name=name,
        initial_mass=initial_mass,
        mode=mode,
        evolution=evolution,
        events=events,
        demon_models=demon_models,
        demon_tolerance=demon_tol,
        sweep_axes=sweep_axes,
        output_directory=directory,
        output_formats=tuple(formats),
        raw=doc,
    )


def parse_scenario(text: str) -> Scenario:
    """Parse and validate one YAML scenario document."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError(f"scenario is not valid YAML: {exc}") from exc
    if doc is None:
        raise ScenarioError("scenario document is empty")
    return scenario_from_dict(doc)


def scenario_to_dict(sc: Scenario) -> dict:
    """Fully resolved scenario as a plain JSON-able mapping."""
    evo = sc.evolution
    shell_policy = evo.shell_policy
    out: dict = {
        "name": sc.name,
        "initial_mass": sc.initial_mass,
        "mode": sc.mode.value,
        "evolution": {
            "alpha": evo.alpha,
            "t_end": evo.t_end,
            "mass_floor": evo.mass_floor,
            "rel_tol": evo.step_control.rel_tol,
            "abs_tol": evo.step_control.abs_tol,
            "max_step": evo.step_control.max_step,
        },
        "shell": {
            "sigma0": shell_policy.profile.sigma0,
            "r_ref": shell_policy.profile.r_ref,
            "p": shell_policy.profile.p,
            "r_outer_max": shell_policy.profile.r_outer_max,
            "window": shell_policy.window,
        },
        "events": [
            {
                "time": spec.event.time,
                "mass": spec.event.particle_mass,
                "direction": spec.event.direction.value,
                "observer_info_change": spec.observer_info_change,
            }
            for spec in sc.events
        ],
        "output": {"directory": sc.output_directory, "formats": list(sc.output_formats)},
    }
    if sc.demon_models is not None:
        out["demon"] = {
            "tolerance": sc.demon_tolerance,
            "models": [
                {
                    "n_states": m.n_states,
                    "prior": list(m.prior),
                    "error_rate": m.error_rate,
                    "bath_temperature": m.bath_temperature,
                    "work_table": [list(row) for row in m.work_table],
                    "label": m.label,
                }
                for m in sc.demon_models
            ],
        }
    if sc.sweep_axes is not None:
        out["sweep"] = {key: list(values) for key, values in sc.sweep_axes}
    return out


def scenario_fingerprint(sc: Scenario) -> str:
    """SHA-256 of the canonical resolved-scenario JSON (determinism handle)."""
    canonical = json.dumps(scenario_to_dict(sc), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
