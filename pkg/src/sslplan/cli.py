"""Command-line front end.

Exit codes: 0 success (a missing feasible pass is still a success), 1 usage
or I/O, 2 malformed or invalid snapshot, 3 bad config, 4 internal failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import math
import os
import statistics
import sys
import tempfile
from pathlib import Path

from .ballmodel import KickType
from .config import PlannerConfig, dump_config, load_config
from .errors import (BenchFailure, ConfigError, DegenerateGeometry, NoFeasiblePass, OutOfRegion,
                     PlannerError, SchemaError, ValidationError)
from .evaluation import plan_free_kick, possession, rank_passes, best_scored_pass
from .offball import ZoneLabel, drag_decision, partition_zones, score_zone
from .planner import default_kicker, plan
from .render import Style, pass_heatmap_csv, render_svg, run_heatmap_csv
from .search import run_dpps, run_dpps_serial
from .worldmodel import Team, parse_world_snapshot

log = logging.getLogger("sslplan")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CONFIG, EXIT_INTERNAL = range(5)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def atomic_write(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary sibling file so ``path`` is either complete or absent."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _num(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return x


def _jsonable(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if hasattr(obj, "_asdict"):
        d = obj._asdict()
        if set(d) == {"x", "y"}:
            return [_num(d["x"]), _num(d["y"])]
        return {k: _jsonable(v) for k, v in d.items()}
    if isinstance(obj, dict):
        return {getattr(k, "value", k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "value") and isinstance(obj, str):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return _num(obj)
    return str(obj)


def _emit(payload) -> None:
    print(json.dumps(_jsonable(payload), indent=2, sort_keys=False))


def _read(path: str | None, what: str) -> bytes:
    if path is None:
        raise UsageError(f"--{what} is required")
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {what} {path!r}: {exc.strerror}") from None


def _load(args) -> tuple:
    cfg = load_config(_read(args.config, "config")) if args.config else PlannerConfig()
    if args.workers is not None:
        if args.workers < 1:
            raise ConfigError("--workers must be >= 1")
        cfg = dataclasses.replace(cfg, workers=args.workers)
    world = parse_world_snapshot(_read(args.snapshot, "snapshot"))
    return world, cfg


def _kicker(args, world) -> int:
    return default_kicker(world) if args.kicker is None else args.kicker


def _write_outputs(outputs: dict) -> None:
    for path, text in outputs.items():
        if path:
            atomic_write(path, text)


# -- commands ---------------------------------------------------------------

def cmd_plan(args) -> int:
    world, cfg = _load(args)
    result = plan(world, _kicker(args, world), cfg, free_kick=args.free_kick)
    summary = {
        "kicker": result.grid.kicker_id,
        "best_pass": None if result.best_pass is None else {
            "candidate": result.best_pass.candidate, "score": result.best_pass.score,
            "features": result.best_pass.features},
        "no_feasible_pass": result.best_pass is None,
        "best_by_kick": {k.value: {"candidate": v.candidate, "score": v.score}
                         for k, v in result.best_by_kick.items()},
        "shot": result.shot,
        "free_kick": result.free_kick,
        "running_points": {k.value: {"point": v.point, "score": v.score, "features": v.features}
                           for k, v in result.running_points.items()},
        "feasible": {k.value: int(sum(1 for sp in result.scored if sp.candidate.kick_type is k))
                     for k in cfg.grid.kick_types},
        "telemetry": result.telemetry,
    }
    outputs = {}
    if args.out or args.svg:
        best_keys = [sp.candidate.sort_key for sp in result.best_by_kick.values()]
        text = pass_heatmap_csv(result.scored, best_keys)
        outputs[args.out] = text
        outputs[args.svg] = render_svg(text, world.field, Style())
    _write_outputs(outputs)
    if result.best_pass is None:
        print("NO_FEASIBLE_PASS")
    _emit(summary)
    return EXIT_OK


def cmd_heatmap(args) -> int:
    world, cfg = _load(args)
    if args.mode == "pass":
        kicker = _kicker(args, world)
        grid = run_dpps(world, kicker, cfg.grid, cfg)
        scored = rank_passes(grid, world, cfg.weights, cfg.robot_radius)
        best_keys = []
        for kt in cfg.grid.kick_types:
            try:
                best_keys.append(best_scored_pass(grid, world, cfg.weights, cfg.robot_radius, kt).candidate.sort_key)
            except NoFeasiblePass:
                pass
        text = pass_heatmap_csv(scored, best_keys)
    else:
        part = partition_zones(world.field, world.ball.position, cfg.min_zone_width)
        labels = [ZoneLabel(args.zone)] if args.zone else list(ZoneLabel)
        rows = [(label, v) for label in labels for v in score_zone(part[label], world, cfg)]
        text = run_heatmap_csv(rows)
    outputs = {args.svg: render_svg(text, world.field, Style())} if args.svg else {}
    if args.out:
        outputs[args.out] = text
    _write_outputs(outputs)
    if not args.out:
        sys.stdout.write(text)
    else:
        _emit({"rows": text.count("\n") - 1, "out": args.out, "svg": args.svg})
    return EXIT_OK


def run_bench(world, cfg: PlannerConfig, kicker: int, worker_counts, repetitions: int) -> dict:
    """Time the serial reference against each worker count; every run must match it."""
    serial_times = []
    reference = None
    for _ in range(repetitions):
        g = run_dpps_serial(world, kicker, cfg.grid, cfg)
        serial_times.append(g.telemetry["wall_time_s"])
        reference = reference or g
    report = {
        "cells": reference.telemetry["cells"],
        "robots": reference.telemetry["robots"],
        "sbip_calls": reference.sbip_calls,
        "serial": {"median_s": statistics.median(serial_times), "min_s": min(serial_times)},
        "parallel": [],
        "reference_budget_s": 0.013,
    }
    for w in worker_counts:
        times = []
        for _ in range(repetitions):
            g = run_dpps(world, kicker, cfg.grid, cfg, w)
            if not g.same_as(reference):
                raise BenchFailure(f"grid at {w} workers differs from the serial reference")
            times.append(g.telemetry["wall_time_s"])
        med = statistics.median(times)
        report["parallel"].append({
            "workers": w, "median_s": med, "min_s": min(times),
            "speedup": report["serial"]["median_s"] / med if med > 0 else None,
        })
    return report


def cmd_bench(args) -> int:
    world, cfg = _load(args)
    if args.kick_types:
        kinds = tuple(KickType(k) for k in args.kick_types.split(","))
        cfg = dataclasses.replace(cfg, grid=dataclasses.replace(cfg.grid, kick_types=kinds))
    counts = [int(w) for w in args.worker_counts.split(",")]
    if any(w < 1 for w in counts) or args.repetitions < 1:
        raise UsageError("worker counts and repetitions must be positive")
    from .search import warmup
    warmup()
    _emit(run_bench(world, cfg, _kicker(args, world), counts, args.repetitions))
    return EXIT_OK


def cmd_possession(args) -> int:
    world, cfg = _load(args)
    p = possession(world, cfg)
    _emit({"side": p.side, "our_time": p.our_time, "their_time": p.their_time})
    return EXIT_OK


def cmd_freekick(args) -> int:
    world, cfg = _load(args)
    kicker = _kicker(args, world)
    grid = run_dpps(world, kicker, cfg.grid, cfg)
    try:
        best = best_scored_pass(grid, world, cfg.weights, cfg.robot_radius)
    except NoFeasiblePass:
        print("NO_FEASIBLE_PASS")
        _emit({"kicker": kicker, "free_kick": None})
        return EXIT_OK
    _emit({"kicker": kicker, "target": best.candidate,
           "free_kick": plan_free_kick(world, kicker, best.candidate, cfg)})
    return EXIT_OK


def cmd_drag_eval(args) -> int:
    world, cfg = _load(args)
    try:
        me = world.robot(args.me, Team.OURS)
        defender = world.robot(args.defender, Team.THEIRS)
    except KeyError as exc:
        raise ValidationError("robot", f"unknown robot {exc.args[0]}") from None
    speed = defender.velocity.norm() if args.defender_speed is None else args.defender_speed
    _emit(drag_decision(me, defender, world.ball.position, speed, cfg.v_min))
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--snapshot", help="world snapshot JSON file")
    common.add_argument("--config", help="planner config JSON file")
    common.add_argument("--out", help="output CSV path")
    common.add_argument("--svg", help="output SVG path")
    common.add_argument("--workers", type=int, help="search worker threads")
    common.add_argument("--print-config", action="store_true", help="print the effective config and exit")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="sslplan", description="Pass and shot planning for robot soccer snapshots.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("plan", parents=[common], help="best pass, shot decision and running points")
    s.add_argument("--kicker", type=int)
    s.add_argument("--free-kick", action="store_true")
    s.set_defaults(func=cmd_plan)

    s = sub.add_parser("heatmap", parents=[common], help="pass or running-point heatmap CSV")
    s.add_argument("--mode", choices=("pass", "run"), default="pass")
    s.add_argument("--zone", choices=[z.value for z in ZoneLabel])
    s.add_argument("--kicker", type=int)
    s.set_defaults(func=cmd_heatmap)

    s = sub.add_parser("bench", parents=[common], help="serial vs parallel search timing")
    s.add_argument("--worker-counts", default="1,2,8")
    s.add_argument("--repetitions", type=int, default=5)
    s.add_argument("--kick-types", help="comma list, e.g. flat")
    s.add_argument("--kicker", type=int)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("possession", parents=[common], help="which side possesses the ball")
    s.set_defaults(func=cmd_possession)

    s = sub.add_parser("freekick", parents=[common], help="free-kick timing for the best pass")
    s.add_argument("--kicker", type=int)
    s.set_defaults(func=cmd_freekick)

    s = sub.add_parser("drag-eval", parents=[common], help="drag skill decision for one tick")
    s.add_argument("--me", type=int, required=True)
    s.add_argument("--defender", type=int, required=True)
    s.add_argument("--defender-speed", type=float)
    s.set_defaults(func=cmd_drag_eval)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.print_config:
            cfg = load_config(_read(args.config, "config")) if args.config else PlannerConfig()
            print(dump_config(cfg))
            return EXIT_OK
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, ValidationError, OutOfRegion, DegenerateGeometry) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConfigError as exc:
        print(f"ConfigError: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PlannerError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
