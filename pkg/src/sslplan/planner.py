"""End-to-end planning query: search, pick a pass, decide on a shot, place runners."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .ballmodel import KickType
from .config import PlannerConfig
from .errors import NoFeasiblePass
from .evaluation import (FreeKickPlan, ScoredPass, ShotDecision, best_of, decide_shot,
                         plan_free_kick, rank_passes)
from .offball import RunningPoint, ZoneLabel, best_running_points
from .search import CandidateGrid, run_dpps
from .worldmodel import Team, WorldState, dist


@dataclass
class PlanResult:
    best_pass: ScoredPass | None
    best_by_kick: dict[KickType, ScoredPass]
    shot: ShotDecision
    free_kick: FreeKickPlan | None
    running_points: dict[ZoneLabel, RunningPoint]
    grid: CandidateGrid
    scored: list[ScoredPass]
    telemetry: dict = field(default_factory=dict)


def default_kicker(world: WorldState) -> int:
    """Our robot nearest the ball, lowest id on ties."""
    if not world.ours:
        raise NoFeasiblePass("no robot of ours on the field")
    return min(world.ours, key=lambda r: (dist(r.position, world.ball.position), r.id)).id


def plan(world: WorldState, kicker_id: int | None = None, cfg: PlannerConfig | None = None,
         workers: int | None = None, free_kick: bool = False) -> PlanResult:
    cfg = cfg or PlannerConfig()
    kicker_id = default_kicker(world) if kicker_id is None else kicker_id
    start = time.perf_counter()
    grid = run_dpps(world, kicker_id, cfg.grid, cfg, workers)
    scored = rank_passes(grid, world, cfg.weights, cfg.robot_radius)

    best_by_kick = {}
    for kt in cfg.grid.kick_types:
        try:
            best_by_kick[kt] = best_of(scored, kt)
        except NoFeasiblePass:
            pass
    best = None
    for sp in best_by_kick.values():
        if best is None or sp.score > best.score:
            best = sp

    shooter = world.robot(kicker_id, Team.OURS)
    shot = decide_shot(shooter, world, cfg)
    fk = plan_free_kick(world, kicker_id, best.candidate, cfg) if free_kick and best else None
    runners = len(world.ours) - 1
    points = best_running_points(world, cfg, n_runners=min(runners, 4),
                                 best_pass_point=best.candidate.receive_point if best else None)
    telemetry = dict(grid.telemetry)
    telemetry["plan_wall_time_s"] = time.perf_counter() - start
    return PlanResult(best, best_by_kick, shot, fk, points, grid, scored, telemetry)
