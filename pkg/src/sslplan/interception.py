"""Search-based interception prediction (SBIP).

The ball trajectory is sampled every ``dt`` seconds; the first sample the
robot can reach no later than the ball is the interception. A ball that
comes to rest inside the field can always be collected eventually. A ball
that leaves the field is lost from the moment it crosses the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ballmodel import NEVER, BallTrajectory, ball_state_at, distance_and_speed_at
from .errors import DomainError
from .motion import MotionLimits, arrival_time_from
from .worldmodel import FieldGeometry, RobotState, Team, Vec2, WorldState

DEFAULT_DT = 1.0 / 60.0
ROBOT_RADIUS = 0.09


@dataclass(frozen=True)
class InterceptResult:
    robot_id: int
    team: Team
    time: float
    point: Vec2 | None

    @property
    def reachable(self) -> bool:
        return self.time != NEVER


def field_exit_distance(origin, direction, fld: FieldGeometry | None) -> float:
    """Distance along the ray before it leaves the field rectangle."""
    if fld is None:
        return math.inf
    ox, oy = origin[0], origin[1]
    ux, uy = direction[0], direction[1]
    hl, hw = fld.half_length, fld.half_width
    sx = sy = math.inf
    if ux > 0:
        sx = (hl - ox) / ux
    elif ux < 0:
        sx = (-hl - ox) / ux
    if uy > 0:
        sy = (hw - oy) / uy
    elif uy < 0:
        sy = (-hw - oy) / uy
    return max(0.0, min(sx, sy))


def intercept_time(robot: RobotState, traj: BallTrajectory, limits: MotionLimits | None = None,
                   dt: float = DEFAULT_DT, fld: FieldGeometry | None = None,
                   radius: float = ROBOT_RADIUS) -> InterceptResult:
    """Earliest sampled time at which ``robot`` can meet the ball on ``traj``."""
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt!r}")
    limits = limits or MotionLimits()
    s_exit = field_exit_distance(traj.origin, traj.direction, fld)
    s_air = traj.flight_distance
    k = 0
    while True:
        t = k * dt
        if t >= traj.stop_time:
            break
        s, _ = distance_and_speed_at(traj, t)
        if s > s_exit:
            return InterceptResult(robot.id, robot.team, NEVER, None)
        if s >= s_air:
            p = traj.point_at_distance(s)
            if arrival_time_from(robot.position, robot.velocity, p, limits, radius) <= t:
                return InterceptResult(robot.id, robot.team, t, p)
        k += 1
    if traj.stop_distance > s_exit:
        return InterceptResult(robot.id, robot.team, NEVER, None)
    p = traj.point_at_distance(traj.stop_distance)
    t = max(arrival_time_from(robot.position, robot.velocity, p, limits, radius), traj.stop_time)
    return InterceptResult(robot.id, robot.team, t, p)


def intercept_all(world: WorldState, traj: BallTrajectory, limits_ours: MotionLimits | None = None,
                  limits_theirs: MotionLimits | None = None, dt: float = DEFAULT_DT,
                  radius: float = ROBOT_RADIUS) -> list[InterceptResult]:
    """One result per robot, ours by id then theirs by id."""
    limits_ours = limits_ours or MotionLimits()
    limits_theirs = limits_theirs or limits_ours
    return [
        intercept_time(r, traj, limits_ours if r.team is Team.OURS else limits_theirs, dt, world.field, radius)
        for r in world.robots
    ]


def first_interceptor(results, team: Team, exclude: int | None = None) -> InterceptResult | None:
    """Earliest result for ``team``; ties go to the lower id. ``None`` for an empty team."""
    best = None
    for r in results:
        if r.team is not team or (exclude is not None and r.robot_id == exclude):
            continue
        if best is None or r.time < best.time:
            best = r
    return best


def ball_point(traj: BallTrajectory, t: float) -> Vec2:
    return ball_state_at(traj, t).position
