"""Command-line entry point.

Subcommands::

    millicrawl sweep --kind field --out field.csv
    millicrawl validate [--out report.json --format json]
    millicrawl scenario --name s_curve --out trace.csv
    millicrawl steer-serve --scene s_curve --port 8765
    millicrawl steer-serve --replay inputs.jsonl --out frames.jsonl

``--seed`` is accepted everywhere for reproducibility of any stochastic
extensions; the shipped models are fully deterministic and ignore it beyond
seeding the module RNG.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from ..gait import TrajectoryError, trajectory_follow
from .config import ConfigError, load_config
from .sweeps import SWEEP_KINDS, run_sweep
from .tableio import Table, write_csv, write_json
from .validate import validate_all

RNG = np.random.default_rng(0)


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", metavar="PATH", help="JSON configuration file")
    p.add_argument("--out", metavar="PATH", help="output file path")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    p.add_argument("--seed", type=int, default=None, help="seed for stochastic extensions")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="millicrawl",
        description="Simulation and validation toolkit for magnetically "
        "actuated crawling millirobot convoys.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a parameter sweep and export a table")
    p.add_argument("--kind", choices=SWEEP_KINDS, required=True)
    _add_common(p)

    p = sub.add_parser("validate", help="check the models against reference data")
    _add_common(p)

    p = sub.add_parser("scenario", help="follow a scene centreline and export the path")
    p.add_argument(
        "--name",
        choices=("straight_channel", "s_curve", "lumen_map"),
        required=True,
    )
    p.add_argument("--capture-radius", type=float, default=2.0, metavar="MM")
    _add_common(p)

    p = sub.add_parser("steer-serve", help="serve interactive teleoperation over websocket")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--scene", default="straight_channel")
    p.add_argument("--tick-rate", type=float, default=30.0)
    p.add_argument("--record", metavar="PATH", help="write applied inputs as JSON lines")
    p.add_argument("--replay", metavar="PATH", help="replay a recorded input log instead")
    _add_common(p)

    return ap


def _write_table(table: Table, out: str | None, fmt: str) -> None:
    if out is None:
        from .tableio import dumps_csv, dumps_json

        sys.stdout.write(dumps_csv(table) if fmt == "csv" else dumps_json(table))
        return
    (write_csv if fmt == "csv" else write_json)(table, out)


def _seed(args) -> None:
    global RNG
    if args.seed is not None:
        RNG = np.random.default_rng(args.seed)


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    table = run_sweep(args.kind, cfg)
    _write_table(table, args.out, args.format)
    return 0


def cmd_validate(args) -> int:
    cfg = load_config(args.config)
    report = validate_all(cfg)
    for line in report.lines():
        print(line)
    if args.out:
        _write_table(report.to_table(), args.out, args.format)
    return 0 if report.passed else 1


def cmd_scenario(args) -> int:
    from ..teleop.scenes import get_scene

    cfg = load_config(args.config)
    scene = get_scene(args.name)
    try:
        res = trajectory_follow(
            cfg.setup,
            cfg.unit,
            list(scene.waypoints),
            capture_radius_mm=args.capture_radius,
        )
    except TrajectoryError as e:
        print(f"scenario failed: {e}", file=sys.stderr)
        return 1
    rows = [
        {
            "cycle": i,
            "x_mm": float(c[0]),
            "y_mm": float(c[1]),
            "beta_deg": float(res.betas_deg[i - 1]) if i > 0 else 0.0,
        }
        for i, c in enumerate(res.centers)
    ]
    table = Table(["cycle", "x_mm", "y_mm", "beta_deg"], rows)
    _write_table(table, args.out, args.format)
    print(
        f"scenario {args.name}: {len(res.reached)} waypoints in {res.cycles} cycles",
        file=sys.stderr,
    )
    return 0


def cmd_steer_serve(args) -> int:
    cfg = load_config(args.config)
    if args.replay:
        from ..teleop.session import load_recording, replay

        frames = replay(
            load_recording(args.replay),
            scene=args.scene,
            tick_rate=args.tick_rate,
            setup=cfg.setup,
        )
        out = args.out
        if out is None:
            for f in frames:
                print(json.dumps(f))
        else:
            with open(out, "w") as fh:
                for f in frames:
                    fh.write(json.dumps(f) + "\n")
        print(f"replayed {len(frames)} ticks", file=sys.stderr)
        return 0
    from ..teleop.wsserver import serve_session

    print(
        f"serving scene {args.scene!r} on ws://{args.host}:{args.port} "
        f"at {args.tick_rate:g} ticks/s",
        file=sys.stderr,
    )
    try:
        serve_session(
            host=args.host,
            port=args.port,
            scene=args.scene,
            tick_rate=args.tick_rate,
            setup=cfg.setup,
            record_path=args.record,
        )
    except KeyboardInterrupt:
        pass
    return 0


_COMMANDS = {
    "sweep": cmd_sweep,
    "validate": cmd_validate,
    "scenario": cmd_scenario,
    "steer-serve": cmd_steer_serve,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _seed(args)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
