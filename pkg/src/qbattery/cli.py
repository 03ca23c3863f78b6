"""Command-line entry point: run scenarios, sweeps, and validation checks.

Exit codes: 0 success, 1 config error, 2 physics-invariant violation, 3 I/O error.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from .linalg import InvariantViolation
from .scenarios import (
    PRESETS,
    load_config,
    preset_scenarios,
    run_scenario,
    write_csv,
)
from .validate import run_checks

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PHYSICS = 2
EXIT_IO = 3


def _resolve_scenarios(name_or_path: str):
    """Preset name -> its scenario list; otherwise treat as a JSON config path."""
    if name_or_path in PRESETS:
        return name_or_path, preset_scenarios(name_or_path)
    if not os.path.exists(name_or_path):
        raise ValueError(f"{name_or_path!r} is neither a preset nor an existing config file")
    cfg = load_config(name_or_path)
    return cfg.scenario_id, [cfg]


def _cmd_run(args) -> int:
    name, scenarios = _resolve_scenarios(args.scenario)
    records = [run_scenario(cfg) for cfg in scenarios]
    out_dir = args.out
    if out_dir is None:
        out_dir = scenarios[0].output_path or "."
    ts_path, seg_path = write_csv(records, out_dir, name)
    for rec in records:
        print(f"{rec.scenario_id}: {len(rec.rows)} samples, {rec.wall_time:.2f}s")
    print(f"wrote {ts_path}")
    print(f"wrote {seg_path}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    name, scenarios = _resolve_scenarios(args.scenario)
    if len(scenarios) != 1:
        raise ValueError("sweep requires a single-run scenario")
    try:
        values = tuple(float(v) for v in args.values.split(","))
    except ValueError as exc:
        raise ValueError(f"bad sweep values {args.values!r}") from exc
    from .scenarios import SweepSpec

    cfg = dataclasses.replace(scenarios[0], sweep=SweepSpec(args.param, values))
    record = run_scenario(cfg)
    out_dir = args.out if args.out is not None else "."
    ts_path, seg_path = write_csv([record], out_dir, f"{name}_sweep_{args.param}")
    print(f"{record.scenario_id}: {len(record.rows)} samples, {record.wall_time:.2f}s")
    print(f"wrote {ts_path}")
    print(f"wrote {seg_path}")
    return EXIT_OK


def _cmd_list(_args) -> int:
    for name, runs in PRESETS.items():
        ids = ", ".join(r["scenario_id"] for r in runs)
        print(f"{name}: {ids}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    results = run_checks(args.filter)
    if not results:
        print(f"no checks match filter {args.filter!r}", file=sys.stderr)
        return EXIT_CONFIG
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name}: measured {r.measured:.3e} (tol {r.tolerance:.0e}) - {r.detail}")
        failed += 0 if r.passed else 1
    return EXIT_OK if failed == 0 else EXIT_PHYSICS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qbattery", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a preset or JSON scenario, write CSVs")
    p_run.add_argument("--scenario", required=True, help="preset name or config path")
    p_run.add_argument("--out", default=None, help="output directory")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a scenario swept over one parameter")
    p_sweep.add_argument("--scenario", required=True)
    p_sweep.add_argument("--param", required=True)
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_list = sub.add_parser("list-scenarios", help="list figure presets")
    p_list.set_defaults(func=_cmd_list)

    p_val = sub.add_parser("validate", help="run oracle and invariant checks")
    p_val.add_argument("--filter", default=None, help="substring filter on check names")
    p_val.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"physics invariant violation: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
