"""Reproducible worlds for tests and benchmarks."""

from __future__ import annotations

import random

from .worldmodel import BallState, FieldGeometry, RobotState, Team, Vec2, WorldState

BENCH_SEED = 20190707


def _vel(rng: random.Random, vmax: float) -> Vec2:
    return Vec2(rng.uniform(-vmax, vmax), rng.uniform(-vmax, vmax))


def random_world(rng: random.Random, n_ours: int, n_theirs: int, fld: FieldGeometry | None = None,
                 ball_speed: float = 0.0, robot_speed: float = 1.0, kicker_at_ball: bool = True,
                 lattice: float | None = None) -> WorldState:
    """Uniformly scattered robots; our robot 0 sits just behind the ball when ``kicker_at_ball``.

    With ``lattice`` set, every coordinate and velocity is a multiple of it,
    which keeps mirrored worlds free of rounding differences.
    """
    fld = fld or FieldGeometry()
    hl, hw = fld.half_length, fld.half_width

    def coord(lo, hi):
        v = rng.uniform(lo, hi)
        return round(v / lattice) * lattice if lattice else v

    ball = Vec2(coord(-hl + 0.5, hl - 0.5), coord(-hw + 0.5, hw - 0.5))
    bv = Vec2(coord(-ball_speed, ball_speed), coord(-ball_speed, ball_speed)) if ball_speed else Vec2(0.0, 0.0)
    robots = []
    for i in range(n_ours):
        if i == 0 and kicker_at_ball:
            robots.append(RobotState(0, Team.OURS, Vec2(ball.x - 0.09, ball.y)))
            continue
        v = Vec2(coord(-robot_speed, robot_speed), coord(-robot_speed, robot_speed))
        robots.append(RobotState(i, Team.OURS, Vec2(coord(-hl, hl), coord(-hw, hw)), v))
    for i in range(n_theirs):
        v = Vec2(coord(-robot_speed, robot_speed), coord(-robot_speed, robot_speed))
        robots.append(RobotState(i, Team.THEIRS, Vec2(coord(-hl, hl), coord(-hw, hw)), v))
    return WorldState(fld, BallState(ball, bv), tuple(robots))


def benchmark_world() -> WorldState:
    """16 robots per side on a default field, ball at the center with our robot 0 behind it."""
    rng = random.Random(BENCH_SEED)
    w = random_world(rng, 16, 16)
    robots = [RobotState(0, Team.OURS, Vec2(-0.09, 0.0))] + [r for r in w.robots if r.key != (Team.OURS.value, 0)]
    return WorldState(w.field, BallState(Vec2(0.0, 0.0)), tuple(robots))
