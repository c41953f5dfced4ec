"""Scenario-driven command-line front end.

Subcommands::

    ngslsim simulate    --scenario S [--out DIR] [--mode M]  trajectory CSV + summary JSON
    ngslsim event       --scenario S [--mode M]              print the first transit's ledger entry
    ngslsim sweep       --scenario S [--out DIR] [--mode M]  cartesian parameter grid, one run per point
    ngslsim verify-ngsl --scenario S [--mode M]              check the channel-width bound per event
    ngslsim demon       --scenario S                         check dS - dI >= 0 on the model grid

Exit codes: 0 success, 1 validation error, 2 second-law violation
detected by a verify mode, 3 I/O failure.

Outputs are byte-deterministic: no timestamps or absolute paths are
embedded, floats are serialized at 17 significant digits, JSON keys are
sorted, and the summary carries a config hash so reruns can be compared
byte for byte.  ``NGSLSIM_THREADS`` caps sweep parallelism.
"""

from __future__ import annotations

import argparse
import copy
import itertools
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path

from . import __version__
from .demon import default_grid, verify_ngsl
from .errors import NgslError
from .evolution import Trajectory, integrate
from .ledger import Channel, Mode, apply_event, ngsl_balance
from .scenario import (
    Scenario,
    parse_scenario,
    scenario_from_dict,
    scenario_fingerprint,
)
from .schwarzschild import BlackHole
from .shell import build_shell, channel_width_bound, shell_entropy_change, shell_ngsl_residual

SCHEMA_VERSION = 1

CSV_COLUMNS = ("t", "M", "T_H", "S_bh", "I_gM", "M_s", "cum_budget", "event_flag")


def _fmt(x: float) -> str:
    """17 significant digits: lossless round-trip for doubles."""
    return f"{x:.17g}"


def trajectory_csv(traj: Trajectory) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for s in traj.samples:
        lines.append(
            ",".join(
                (
                    _fmt(s.t),
                    _fmt(s.mass),
                    _fmt(s.temperature),
                    _fmt(s.entropy),
                    _fmt(s.information),
                    _fmt(s.shell_mass),
                    _fmt(s.channel_budget),
                    "1" if s.event else "0",
                )
            )
        )
    return "\n".join(lines) + "\n"


def _entry_dict(entry) -> dict:
    return {
        "pre_mass": entry.pre_mass,
        "dM": entry.dM,
        "dI_sense": entry.dI_sense,
        "dI_carry": entry.dI_carry,
        "dS_bh": entry.dS_bh,
        "mode": entry.mode.value,
        "discretization_residual": entry.discretization_residual,
        "channel_state": entry.channel_state.value,
    }


def _event_verdicts(sc: Scenario) -> list[dict]:
    """Per-event ledger balances and shell residuals along the schedule.

    Each event is checked at the mass the trajectory would carry into it
    (events applied in order, no continuous evaporation in between: the
    bound itself depends only on the shell mass and dM).  An event with
    no declared observer_info_change is checked at the saturated bound.
    """
    verdicts = []
    bh = BlackHole(sc.initial_mass)
    policy = sc.evolution.shell_policy
    for i, spec in enumerate(sc.events):
        ev = spec.event
        shell = build_shell(bh, policy.profile, policy.window)
        bound = channel_width_bound(shell, ev.signed_dm)
        d_info = spec.observer_info_change if spec.observer_info_change is not None else bound
        residual = shell_ngsl_residual(bh, shell, ev.signed_dm, d_info)
        new_bh, entry = apply_event(bh, ev, mode=sc.mode, mass_floor=sc.evolution.mass_floor)
        verdicts.append(
            {
                "index": i,
                "time": ev.time,
                "pre_mass": bh.mass,
                "dM": entry.dM,
                "shell_mass": shell.mass,
                "shell_entropy_change": shell_entropy_change(bh, entry.dM),
                "width_bound": bound,
                "observer_info_change": d_info,
                "declared": spec.observer_info_change is not None,
                "shell_residual": residual,
                "balance_sense": ngsl_balance(entry, Channel.SENSE),
                "balance_carry": ngsl_balance(entry, Channel.CARRY),
                "violation": residual < 0.0,
            }
        )
        bh = new_bh
    return verdicts


def build_summary(sc: Scenario, traj: Trajectory) -> dict:
    first, last = traj.samples[0], traj.samples[-1]
    info_sense = sum(rec.entry.dI_sense for rec in traj.events)
    info_carry = sum(rec.entry.dI_carry for rec in traj.events)
    shell_entropy_events = sum(
        shell_entropy_change(BlackHole(rec.entry.pre_mass), rec.entry.dM)
        for rec in traj.events
    )
    balances = [
        ngsl_balance(rec.entry, ch)
        for rec in traj.events
        for ch in (Channel.SENSE, Channel.CARRY)
    ]
    summary = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "scenario": sc.name,
        "config_hash": scenario_fingerprint(sc),
        "mode": sc.mode.value,
        "stop_reason": traj.stop_reason.value,
        "initial_mass": first.mass,
        "final_mass": last.mass,
        "n_samples": len(traj.samples),
        "n_events": len(traj.events),
        "totals": {
            "delta_entropy_bh": last.entropy - first.entropy,
            "delta_entropy_shell_events": shell_entropy_events,
            "info_sense_total": info_sense,
            "info_carry_total": info_carry,
            "channel_budget": last.channel_budget,
        },
        "events": [
            {
                "time": rec.time,
                "shell_mass": rec.shell_mass,
                "width_bound": rec.width_bound,
                **_entry_dict(rec.entry),
            }
            for rec in traj.events
        ],
        "ngsl": {
            "balance_min": min(balances) if balances else None,
            "balance_max": max(balances) if balances else None,
        },
    }
    if sc.demon_models is not None:
        report = verify_ngsl(list(sc.demon_models), sc.demon_tolerance)
        summary["demon"] = _demon_report_dict(report)
    return summary


def _demon_report_dict(report) -> dict:
    return {
        "passed": report.passed,
        "tolerance": report.tolerance,
        "min_gap": report.min_gap,
        "argmin_index": report.argmin_index,
        "argmin_label": report.argmin_model.label,
        "n_models": len(report.gaps),
        "n_saturated": len(report.saturated_indices),
    }


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(path: Path, content: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")


def run_simulate(sc: Scenario, out_dir: Path) -> int:
    traj = integrate(
        BlackHole(sc.initial_mass),
        [spec.event for spec in sc.events],
        sc.evolution,
        mode=sc.mode,
    )
    if "csv" in sc.output_formats:
        _write(out_dir / "trajectory.csv", trajectory_csv(traj))
    if "json" in sc.output_formats:
        _write(out_dir / "summary.json", _dump_json(build_summary(sc, traj)))
    print(
        f"{sc.name}: {traj.stop_reason.value} at t={_fmt(traj.samples[-1].t)}, "
        f"final M={_fmt(traj.samples[-1].mass)}, "
        f"budget={_fmt(traj.samples[-1].channel_budget)} -> {out_dir}"
    )
    return 0


def run_event(sc: Scenario) -> int:
    if not sc.events:
        raise NgslError("scenario declares no events; nothing to apply")
    spec = sc.events[0]
    _, entry = apply_event(
        BlackHole(sc.initial_mass), spec.event, mode=sc.mode, mass_floor=sc.evolution.mass_floor
    )
    shell = build_shell(
        BlackHole(sc.initial_mass), sc.evolution.shell_policy.profile, sc.evolution.shell_policy.window
    )
    out = {
        "time": spec.event.time,
        "direction": spec.event.direction.value,
        "shell_mass": shell.mass,
        "width_bound": channel_width_bound(shell, entry.dM),
        **_entry_dict(entry),
    }
    print(_dump_json(out), end="")
    return 0


def run_verify_ngsl(sc: Scenario) -> int:
    verdicts = _event_verdicts(sc)
    violations = [v for v in verdicts if v["violation"]]
    for v in verdicts:
        status = "VIOLATION" if v["violation"] else "ok"
        declared = "declared" if v["declared"] else "saturated"
        print(
            f"event {v['index']} t={_fmt(v['time'])}: residual={_fmt(v['shell_residual'])} "
            f"(dI {declared} {_fmt(v['observer_info_change'])}, bound {_fmt(v['width_bound'])}) "
            f"[{status}]"
        )
    if not verdicts:
        print("no events declared; nothing to verify")
    print(f"verdict: {'FAIL' if violations else 'PASS'} ({len(violations)} violation(s))")
    return 2 if violations else 0


def run_demon(sc: Scenario) -> int:
    models = list(sc.demon_models) if sc.demon_models is not None else default_grid()
    report = verify_ngsl(models, sc.demon_tolerance)
    print(
        f"demon grid: {len(models)} models, min(dS - dI) = {_fmt(report.min_gap)} "
        f"at [{report.argmin_index}] {report.argmin_model.label}, "
        f"{len(report.saturated_indices)} saturated"
    )
    print(f"verdict: {'PASS' if report.passed else 'FAIL'} (tol {report.tolerance:g})")
    return 0 if report.passed else 2


def _set_dotted(doc: dict, dotted: str, value):
    parts = dotted.split(".")
    node = doc
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise NgslError(f"sweep axis {dotted!r} does not address a mapping")
    node[parts[-1]] = value


def run_sweep(sc: Scenario, out_dir: Path) -> int:
    if not sc.sweep_axes:
        raise NgslError("scenario declares no sweep section")
    keys = [key for key, _ in sc.sweep_axes]
    grids = [values for _, values in sc.sweep_axes]
    points = list(itertools.product(*grids))

    jobs = []
    for idx, point in enumerate(points):
        doc = copy.deepcopy(sc.raw)
        doc.pop("sweep", None)
        for key, value in zip(keys, point):
            _set_dotted(doc, key, value)
        point_sc = scenario_from_dict(doc)
        point_sc = replace(point_sc, mode=sc.mode)
        point_dir = out_dir / f"point_{idx:04d}"
        jobs.append((idx, point, point_sc, point_dir))

    workers = max(1, int(os.environ.get("NGSLSIM_THREADS", "4")))
    with ThreadPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        list(pool.map(lambda job: run_simulate(job[2], job[3]), jobs))

    index = {
        "schema_version": SCHEMA_VERSION,
        "scenario": sc.name,
        "axes": {key: list(values) for key, values in sc.sweep_axes},
        "points": [
            {
                "directory": f"point_{idx:04d}",
                "parameters": dict(zip(keys, point)),
                "config_hash": scenario_fingerprint(point_sc),
            }
            for idx, point, point_sc, _ in jobs
        ],
    }
    _write(out_dir / "sweep_index.json", _dump_json(index))
    print(f"sweep: {len(jobs)} points -> {out_dir}")
    return 0


class _Parser(argparse.ArgumentParser):
    # Usage errors are validation errors (exit 1); 2 is reserved for
    # detected second-law violations.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ngslsim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ngslsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("simulate", "integrate the scenario and write trajectory + summary"),
        ("event", "apply the scenario's first transit and print the ledger entry"),
        ("sweep", "run the scenario's cartesian parameter grid"),
        ("verify-ngsl", "check each event against the channel-width bound"),
        ("demon", "verify dS - dI >= 0 on the scenario's feedback-model grid"),
    ):
        cmd = sub.add_parser(name, help=helptext)
        cmd.add_argument("--scenario", required=True, help="path to the YAML scenario")
        cmd.add_argument("--out", default=None, help="output directory (overrides scenario)")
        cmd.add_argument(
            "--mode",
            choices=[m.value for m in Mode],
            default=None,
            help="ledger accounting mode (overrides scenario)",
        )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = Path(args.scenario).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"ngslsim: cannot read scenario: {exc}", file=sys.stderr)
        return 3
    try:
        sc = parse_scenario(text)
        if args.mode is not None:
            sc = replace(sc, mode=Mode(args.mode))
        out_dir = Path(args.out) if args.out else Path(sc.output_directory)
        if args.command == "simulate":
            return run_simulate(sc, out_dir)
        if args.command == "event":
            return run_event(sc)
        if args.command == "sweep":
            return run_sweep(sc, out_dir)
        if args.command == "verify-ngsl":
            return run_verify_ngsl(sc)
        if args.command == "demon":
            return run_demon(sc)
        raise NgslError(f"unknown subcommand {args.command!r}")
    except NgslError as exc:
        print(f"ngslsim: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ngslsim: I/O failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
