"""Command line interface.

Subcommands::

    wacasim run                single simulation, per-tick series as CSV
    wacasim sweep              grid experiment, aggregate table as CSV
    wacasim compare            WACA and WCA on the same seeds
    wacasim ablate-kingbonus   paired runs with the king bonus on and off
    wacasim verify             oracle and invariant checks

Every configuration field has a flag (``n_devices`` becomes ``--n-devices``).
Defaults come from a ``key = value`` file given by ``--config`` or the
``WACASIM_CONFIG`` environment variable; flags override the file. Grid
commands accept lists (``10,20,30``) or inclusive ranges (``10:70:5``) for
``--n-devices``, ``--transmission-range``, ``--mover-count``, ``--algorithm``
and ``--king-bonus``.

Exit status is 0 on success, 1 when a run, cell or check fails and 2 for
usage or configuration errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import fields

from ..errors import ConfigurationError, InvariantViolation
from .config import CONFIG_ENV, SimulationConfig, build_config, coerce, load_config_file
from .csvio import write_aggregate, write_series
from .engine import run_simulation
from .sweep import expand_grid, parse_values, sweep
from .verify import run_verification

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2

GRID_AXES = {"n_devices": "n_devices", "transmission_range": "transmission_range",
             "mover_count": "mover_count", "algorithm": "algorithm", "king_bonus": "king_bonus"}


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("configuration (override the config file)")
    group.add_argument("--config", help=f"key = value file (default: ${CONFIG_ENV})")
    for f in fields(SimulationConfig):
        group.add_argument("--" + f.name.replace("_", "-"), dest=f.name, metavar="VALUE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wacasim", description="WACA clustering simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="single simulation; per-tick series to CSV")
    p.add_argument("--seed", type=int, help="run seed (default: base_seed)")
    p.add_argument("-o", "--output", help="CSV path (default: stdout)")
    _add_config_flags(p)

    for name, text in (("sweep", "grid experiment; aggregate table to CSV"),
                       ("compare", "WACA against WCA on identical seeds"),
                       ("ablate-kingbonus", "paired runs with the king bonus on and off")):
        p = sub.add_parser(name, help=text)
        p.add_argument("-o", "--output", help="CSV path (default: stdout)")
        p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
        _add_config_flags(p)

    p = sub.add_parser("verify", help="oracle equivalence and invariant suites")
    p.add_argument("--graphs", type=int, default=1000, help="random graphs for the oracle checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true", help="shorter mobile runs")
    return parser


def _gather(args) -> tuple[dict, dict]:
    """Raw file values and raw flag values."""
    path = args.config or os.environ.get(CONFIG_ENV)
    file_values = load_config_file(path) if path else {}
    flags = {f.name: getattr(args, f.name) for f in fields(SimulationConfig)
             if getattr(args, f.name, None) is not None}
    return file_values, flags


def _grid(args, forced: dict) -> list[SimulationConfig]:
    file_values, flags = _gather(args)
    merged = {**file_values, **flags}
    axes = {}
    for name in GRID_AXES:
        if name in forced:
            axes[name] = forced[name]
        elif name in merged and isinstance(merged[name], str) and ("," in merged[name] or ":" in merged[name]):
            raw = merged.pop(name)
            if name in ("algorithm", "king_bonus"):
                axes[name] = [coerce(name, v) for v in raw.split(",") if v.strip()]
            else:
                axes[name] = parse_values(raw, int if name != "transmission_range" else float)
    for name in forced:
        merged.pop(name, None)
    base = build_config(merged)
    configs = expand_grid(base, **axes) if axes else [base]
    return configs


def _emit_sweep(configs, args) -> int:
    result = sweep(configs, workers=args.workers)
    write_aggregate(result, args.output)
    for key, error in result.failures.items():
        print(f"cell {key.sort_key()} failed: {error}", file=sys.stderr)
    return EXIT_OK if result.ok else EXIT_FAILURE


def cmd_run(args) -> int:
    file_values, flags = _gather(args)
    config = build_config(file_values, flags)
    seed = config.base_seed if args.seed is None else args.seed
    series = run_simulation(config, seed)
    write_series(series, args.output)
    return EXIT_OK


def cmd_sweep(args) -> int:
    return _emit_sweep(_grid(args, {}), args)


def cmd_compare(args) -> int:
    return _emit_sweep(_grid(args, {"algorithm": ["WACA", "WCA"]}), args)


def cmd_ablate(args) -> int:
    file_values, flags = _gather(args)
    if "mobility" not in {**file_values, **flags}:
        args.mobility = "random_waypoint"
    return _emit_sweep(_grid(args, {"algorithm": ["WACA"], "king_bonus": [True, False]}), args)


def cmd_verify(args) -> int:
    checks = run_verification(args.graphs, args.seed, args.quick)
    for check in checks:
        print(check.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_FAILURE


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "compare": cmd_compare,
            "ablate-kingbonus": cmd_ablate, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigurationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
