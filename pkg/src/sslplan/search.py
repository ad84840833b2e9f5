"""Dynamic passing point search (DPPS).

Every (kick type, direction, power) cell of the search grid is an
independent ball trajectory launched from the ball position. For each cell
the interception time of every robot on the field is predicted; the pass is
feasible when a teammate other than the kicker gets there first, with at
least ``safety_margin`` seconds to spare over the quickest opponent.

Cells share nothing but the read-only world, so they are split into
contiguous blocks and mapped over a thread pool. Each block writes a disjoint
slice of the output arrays, which makes the result independent of the
worker count.
"""

from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import _kernels
from .ballmodel import NEVER, BallTrajectory, KickType, launch
from .config import PlannerConfig, SearchGrid
from .errors import ValidationError
from .motion import speed_bound
from .worldmodel import BallState, FieldGeometry, RobotState, Team, Vec2, WorldState, dist

log = logging.getLogger(__name__)

CSV_HEADER = "kick_type,dir_index,power_index,angle,power,our_time,opp_time,feasible"


def direction_table(n: int) -> np.ndarray:
    """Unit vectors for angles -pi + k*2pi/n.

    Built so that index k and (n - k) % n are exact mirror images through
    the x axis, which keeps mirrored worlds bit-for-bit comparable.
    """
    dirs = np.empty((n, 2))
    step = 2.0 * math.pi / n
    for k in range(n):
        mk = (n - k) % n
        if mk < k:
            dirs[k, 0] = dirs[mk, 0]
            dirs[k, 1] = -dirs[mk, 1]
            continue
        theta = -math.pi + k * step
        dirs[k] = math.cos(theta), math.sin(theta)
        if mk == k:
            dirs[k, 1] = 0.0
    return dirs


def power_table(grid: SearchGrid) -> np.ndarray:
    return np.array([grid.power(j) for j in range(grid.n_powers)], dtype=float)


@dataclass(frozen=True)
class PassCandidate:
    kick_type: KickType
    dir_index: int
    power_index: int
    angle: float
    power: float
    direction: Vec2
    origin: Vec2
    our_robot: int | None
    our_time: float
    opp_robot: int | None
    opp_time: float
    receive_point: Vec2 | None
    feasible: bool

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return (0 if self.kick_type is KickType.FLAT else 1, self.dir_index, self.power_index)

    def trajectory(self, cfg: PlannerConfig | None = None) -> BallTrajectory:
        cfg = cfg or PlannerConfig()
        return launch(self.origin, self.direction, self.power, cfg.ball, self.kick_type)


@dataclass
class CandidateGrid:
    """Dense search result, indexed by (kick type, direction, power)."""

    grid: SearchGrid
    kicker_id: int
    origin: Vec2
    robot_ids: np.ndarray
    our_idx: np.ndarray
    our_time: np.ndarray
    opp_idx: np.ndarray
    opp_time: np.ndarray
    recv_x: np.ndarray
    recv_y: np.ndarray
    feasible: np.ndarray
    sbip_calls: int = 0
    telemetry: dict = field(default_factory=dict)

    _dirs: np.ndarray | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.feasible)

    def flat_index(self, kick_type: KickType, dir_index: int, power_index: int) -> int:
        kt = self.grid.kick_types.index(KickType(kick_type))
        return (kt * self.grid.n_directions + dir_index) * self.grid.n_powers + power_index

    def unravel(self, c: int) -> tuple[KickType, int, int]:
        g = self.grid
        return g.kick_types[c // g.cells_per_kick_type], (c // g.n_powers) % g.n_directions, c % g.n_powers

    @property
    def dirs(self) -> np.ndarray:
        if self._dirs is None:
            self._dirs = direction_table(self.grid.n_directions)
        return self._dirs

    def candidate(self, c: int) -> PassCandidate:
        kick, di, pj = self.unravel(c)
        oi, pi = int(self.our_idx[c]), int(self.opp_idx[c])
        recv = None if oi < 0 else Vec2(float(self.recv_x[c]), float(self.recv_y[c]))
        return PassCandidate(
            kick_type=kick, dir_index=di, power_index=pj,
            angle=self.grid.angle(di), power=self.grid.power(pj),
            direction=Vec2(float(self.dirs[di, 0]), float(self.dirs[di, 1])),
            origin=self.origin,
            our_robot=None if oi < 0 else int(self.robot_ids[oi]),
            our_time=float(self.our_time[c]),
            opp_robot=None if pi < 0 else int(self.robot_ids[pi]),
            opp_time=float(self.opp_time[c]),
            receive_point=recv,
            feasible=bool(self.feasible[c]),
        )

    def __iter__(self) -> Iterator[PassCandidate]:
        return (self.candidate(c) for c in range(len(self)))

    def same_as(self, other: "CandidateGrid") -> bool:
        """Cell-by-cell identity, NaN matching NaN."""
        if self.grid != other.grid or len(self) != len(other):
            return False
        pairs = [
            (self.our_idx, other.our_idx), (self.opp_idx, other.opp_idx),
            (self.our_time, other.our_time), (self.opp_time, other.opp_time),
            (self.recv_x, other.recv_x), (self.recv_y, other.recv_y),
            (self.feasible, other.feasible),
        ]
        return all(np.array_equal(a, b, equal_nan=a.dtype.kind == "f") for a, b in pairs)

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for c in range(len(self)):
            kick, di, pj = self.unravel(c)
            lines.append(",".join((
                kick.value, str(di), str(pj),
                repr(self.grid.angle(di)), repr(self.grid.power(pj)),
                repr(float(self.our_time[c])), repr(float(self.opp_time[c])),
                "1" if self.feasible[c] else "0",
            )))
        return "\n".join(lines) + "\n"


def _robot_table(world: WorldState, cfg: PlannerConfig):
    rows, team, ids = [], [], []
    for r in world.robots:
        lim = cfg.limits_for(r.team)
        rows.append((r.position.x, r.position.y, r.velocity.x, r.velocity.y,
                     lim.max_speed, lim.max_accel, lim.max_decel, speed_bound(r.velocity, lim),
                     r.velocity.norm()))
        team.append(0 if r.team is Team.OURS else 1)
        ids.append(r.id)
    robots = np.array(rows, dtype=float).reshape(len(rows), _kernels.N_ROBOT_COLS)
    return robots, np.array(team, dtype=np.int8), np.array(ids, dtype=np.int64)


def _blocks(n_cells: int, workers: int) -> list[tuple[int, int]]:
    if n_cells == 0:
        return []
    n_blocks = min(n_cells, workers * 4)
    edges = np.linspace(0, n_cells, n_blocks + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _prepare(world: WorldState, kicker_id: int, grid: SearchGrid, cfg: PlannerConfig):
    try:
        kicker = world.robot(kicker_id, Team.OURS)
    except KeyError:
        raise ValidationError("kicker_id", f"robot {kicker_id} is not on our team") from None
    if dist(kicker.position, world.ball.position) > cfg.possession_radius:
        log.warning("kicker %d is %.3f m from the ball (possession radius %.3f m)",
                    kicker_id, dist(kicker.position, world.ball.position), cfg.possession_radius)
    robots, team, ids = _robot_table(world, cfg)
    kicker_row = world.robots.index(kicker)
    n = grid.n_cells
    out = CandidateGrid(
        grid=grid, kicker_id=kicker_id, origin=world.ball.position, robot_ids=ids,
        our_idx=np.full(n, -1, dtype=np.int32), our_time=np.full(n, np.inf),
        opp_idx=np.full(n, -1, dtype=np.int32), opp_time=np.full(n, np.inf),
        recv_x=np.full(n, np.nan), recv_y=np.full(n, np.nan),
        feasible=np.zeros(n, dtype=np.bool_),
    )
    calls = np.zeros(n, dtype=np.int64)
    chip = np.array([k is KickType.CHIP for k in grid.kick_types], dtype=np.bool_)
    b = cfg.ball
    args = (robots, team, kicker_row, out.dirs, power_table(grid), chip,
            world.ball.position.x, world.ball.position.y,
            b.transition_ratio, b.slide_decel, b.roll_decel, b.chip_flight_fraction,
            world.field.half_length, world.field.half_width,
            cfg.dt, cfg.robot_radius, cfg.safety_margin,
            out.our_idx, out.our_time, out.opp_idx, out.opp_time,
            out.recv_x, out.recv_y, out.feasible, calls)
    return out, calls, args


def _execute(world, kicker_id, grid, cfg, workers: int) -> CandidateGrid:
    out, calls, args = _prepare(world, kicker_id, grid, cfg)
    start = time.perf_counter()
    blocks = _blocks(grid.n_cells, workers)
    if workers == 1:
        for a, b in blocks:
            _kernels.dpps_block(a, b, *args)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for f in [pool.submit(_kernels.dpps_block, a, b, *args) for a, b in blocks]:
                f.result()
    out.sbip_calls = int(calls.sum())
    out.telemetry = {
        "wall_time_s": time.perf_counter() - start,
        "workers": workers,
        "cells": grid.n_cells,
        "robots": len(world.robots),
        "sbip_calls": out.sbip_calls,
    }
    return out


def run_dpps(world: WorldState, kicker_id: int, grid: SearchGrid | None = None,
             cfg: PlannerConfig | None = None, workers: int | None = None) -> CandidateGrid:
    """Fill the whole candidate grid using ``workers`` threads (default ``cfg.workers``)."""
    cfg = cfg or PlannerConfig()
    grid = grid or cfg.grid
    workers = workers or cfg.workers
    return _execute(world, kicker_id, grid, cfg, max(1, int(workers)))


def run_dpps_serial(world: WorldState, kicker_id: int, grid: SearchGrid | None = None,
                    cfg: PlannerConfig | None = None) -> CandidateGrid:
    """Reference run: one worker, cells visited in index order in a single call."""
    cfg = cfg or PlannerConfig()
    grid = grid or cfg.grid
    out, calls, args = _prepare(world, kicker_id, grid, cfg)
    start = time.perf_counter()
    _kernels.dpps_block(0, grid.n_cells, *args)
    out.sbip_calls = int(calls.sum())
    out.telemetry = {
        "wall_time_s": time.perf_counter() - start,
        "workers": 1,
        "cells": grid.n_cells,
        "robots": len(world.robots),
        "sbip_calls": out.sbip_calls,
    }
    return out


def feasible_candidates(g: CandidateGrid) -> list[PassCandidate]:
    """Feasible cells in (kick type, direction, power) order."""
    return [g.candidate(int(c)) for c in np.flatnonzero(g.feasible)]


def warmup() -> None:
    """Trigger kernel compilation on a tiny problem."""
    w = WorldState(FieldGeometry(), BallState(Vec2(0.0, 0.0)), (
        RobotState(0, Team.OURS, Vec2(-0.09, 0.0)),
        RobotState(1, Team.THEIRS, Vec2(1.0, 1.0)),
    ))
    run_dpps_serial(w, 0, SearchGrid(n_directions=4, n_powers=2))


__all__ = [
    "CandidateGrid", "PassCandidate", "direction_table", "feasible_candidates",
    "run_dpps", "run_dpps_serial", "NEVER",
]
