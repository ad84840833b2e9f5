"""Pass scoring, shot decisions, free-kick timing and the possession metric."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .ballmodel import NEVER, KickType, launch, travel_time_to_distance
from .config import PlannerConfig, WeightConfig
from .errors import NoFeasiblePass, ScoreUndefined
from .interception import ROBOT_RADIUS, intercept_all, intercept_time
from .motion import arrival_time_from
from .search import CandidateGrid, PassCandidate
from .worldmodel import RobotState, Team, Vec2, WorldState, dist


# -- open goal angle --------------------------------------------------------

def goal_windows(point, world: WorldState, radius: float = ROBOT_RADIUS) -> list[tuple[float, float]]:
    """Unobstructed angular intervals of the opponent goal seen from ``point``.

    Opponents are discs of ``radius``; discs lying wholly behind the goal line
    are ignored. Intervals are returned sorted by angle.
    """
    fld = world.field
    px, py = point[0], point[1]
    hl, g = fld.half_length, fld.goal_width / 2
    if px >= hl:
        return []
    lo = math.atan2(-g - py, hl - px)
    hi = math.atan2(g - py, hl - px)

    blocked = []
    for r in world.theirs:
        cx, cy = r.position
        if cx - radius >= hl:
            continue
        d = math.hypot(cx - px, cy - py)
        if d <= radius:
            return []
        phi = math.atan2(cy - py, cx - px)
        half = math.asin(radius / d)
        a, b = max(phi - half, lo), min(phi + half, hi)
        if a < b:
            blocked.append((a, b))
    blocked.sort()

    windows = []
    cursor = lo
    for a, b in blocked:
        if a > cursor:
            windows.append((cursor, a))
        cursor = max(cursor, b)
    if cursor < hi:
        windows.append((cursor, hi))
    return windows


def widest_window(point, world: WorldState, radius: float = ROBOT_RADIUS) -> tuple[float, float] | None:
    best = None
    for w in goal_windows(point, world, radius):
        if best is None or w[1] - w[0] > best[1] - best[0]:
            best = w
    return best


def shoot_angle(point, world: WorldState, radius: float = ROBOT_RADIUS) -> float:
    """Width in radians of the largest open part of the goal; 0 when fully covered."""
    w = widest_window(point, world, radius)
    return 0.0 if w is None else w[1] - w[0]


def window_target(point, window, world: WorldState) -> Vec2:
    """Point on the goal line along the bisector of ``window``."""
    if window is None:
        return world.field.goal_center
    mid = 0.5 * (window[0] + window[1])
    hl = world.field.half_length
    return Vec2(hl, point[1] + math.tan(mid) * (hl - point[0]))


# -- pass scoring -----------------------------------------------------------

@dataclass(frozen=True)
class PassFeatures:
    teammate_intercept_time: float
    shoot_angle_at_receive: float
    dist_receive_to_goal: float
    refraction_angle: float
    intercept_margin: float


class ScoredPass(NamedTuple):
    candidate: PassCandidate
    score: float
    features: PassFeatures


def _angle_between(u, v) -> float:
    return math.atan2(abs(u[0] * v[1] - u[1] * v[0]), u[0] * v[0] + u[1] * v[1])


def pass_features(candidate: PassCandidate, world: WorldState, weights: WeightConfig,
                  radius: float = ROBOT_RADIUS) -> PassFeatures:
    if not candidate.feasible or candidate.receive_point is None:
        raise ScoreUndefined(
            f"candidate {candidate.kick_type.value}/{candidate.dir_index}/{candidate.power_index} is infeasible")
    recv = candidate.receive_point
    window = widest_window(recv, world, radius)
    angle = 0.0 if window is None else window[1] - window[0]
    target = window_target(recv, window, world)
    out = (target[0] - recv[0], target[1] - recv[1])
    refraction = _angle_between(candidate.direction, out) if out != (0.0, 0.0) else 0.0
    margin = min(candidate.opp_time - candidate.our_time, weights.margin_cap)
    return PassFeatures(candidate.our_time, angle, dist(recv, world.field.goal_center), refraction, margin)


def weigh_pass(f: PassFeatures, world: WorldState, weights: WeightConfig) -> float:
    """Weighted sum; smaller-is-better features enter negated."""
    w = weights.passing
    length = weights.length_bound or world.field.length
    return (
        -w.intercept_time * f.teammate_intercept_time
        + w.shoot_angle * min(f.shoot_angle_at_receive / weights.angle_bound, 1.0)
        - w.goal_distance * min(f.dist_receive_to_goal / length, 1.0)
        - w.refraction * min(f.refraction_angle / weights.angle_bound, 1.0)
        + w.margin * f.intercept_margin
    )


def score_pass(candidate: PassCandidate, world: WorldState, weights: WeightConfig | None = None,
               radius: float = ROBOT_RADIUS) -> tuple[float, PassFeatures]:
    weights = weights or WeightConfig()
    f = pass_features(candidate, world, weights, radius)
    return weigh_pass(f, world, weights), f


def rank_passes(g: CandidateGrid, world: WorldState, weights: WeightConfig | None = None,
                radius: float = ROBOT_RADIUS) -> list[ScoredPass]:
    """Every feasible candidate with its score, in grid order."""
    from .search import feasible_candidates

    weights = weights or WeightConfig()
    out = []
    for cand in feasible_candidates(g):
        score, f = score_pass(cand, world, weights, radius)
        out.append(ScoredPass(cand, score, f))
    return out


def best_of(scored, kick_type: KickType | None = None) -> ScoredPass:
    """Top entry of an already ranked list, optionally for one kick type."""
    best = None
    for sp in scored:
        if kick_type is not None and sp.candidate.kick_type is not kick_type:
            continue
        # grid order already is the tie-break order, so only a strict win replaces
        if best is None or sp.score > best.score:
            best = sp
    if best is None:
        raise NoFeasiblePass("no feasible pass in the candidate grid")
    return best


def best_scored_pass(g: CandidateGrid, world: WorldState, weights: WeightConfig | None = None,
                     radius: float = ROBOT_RADIUS, kick_type: KickType | None = None) -> ScoredPass:
    return best_of(rank_passes(g, world, weights, radius), kick_type)


def best_pass(g: CandidateGrid, world: WorldState, weights: WeightConfig | None = None,
              radius: float = ROBOT_RADIUS) -> PassCandidate:
    """Highest-scoring feasible candidate; ties go to flat, then lower direction, then lower power."""
    return best_scored_pass(g, world, weights, radius).candidate


# -- shooting ---------------------------------------------------------------

class ShotReason(str, Enum):
    ANGLE_TOO_SMALL = "angle_too_small"
    INTERCEPTABLE = "interceptable"
    CLEAR = "clear"


@dataclass(frozen=True)
class ShotDecision:
    shoot: bool
    shot_angle: float
    shot_target: Vec2
    blocked: bool
    reason: ShotReason


def decide_shot(shooter: RobotState, world: WorldState, cfg: PlannerConfig | None = None) -> ShotDecision:
    """Shoot only through a wide enough window that no opponent can close in time."""
    cfg = cfg or PlannerConfig()
    origin = world.ball.position
    if dist(origin, shooter.position) > cfg.possession_radius:
        origin = shooter.position
    window = widest_window(origin, world, cfg.robot_radius)
    angle = 0.0 if window is None else window[1] - window[0]
    target = window_target(origin, window, world)
    if window is None or angle < cfg.angle_threshold:
        return ShotDecision(False, angle, target, True, ShotReason.ANGLE_TOO_SMALL)

    traj = launch(origin, target - origin, cfg.effective_shot_power, cfg.ball, KickType.FLAT)
    for r in world.theirs:
        res = intercept_time(r, traj, cfg.limits_theirs, cfg.dt, world.field, cfg.robot_radius)
        if res.reachable:
            return ShotDecision(False, angle, target, True, ShotReason.INTERCEPTABLE)
    return ShotDecision(True, angle, target, False, ShotReason.CLEAR)


# -- free kicks -------------------------------------------------------------

class KickOrder(str, Enum):
    ROBOT_FIRST = "robot_first"
    KICK_FIRST = "kick_first"


@dataclass(frozen=True)
class FreeKickPlan:
    """``kick_delay`` holds the kick back; ``robot_delay`` holds the receiver back."""

    t_ball: float
    t_robot: float
    order: KickOrder
    kick_delay: float
    robot_delay: float
    receiver_id: int
    receive_point: Vec2


def plan_free_kick(world: WorldState, kicker_id: int, target: PassCandidate,
                   cfg: PlannerConfig | None = None) -> FreeKickPlan:
    """Time the kick and the receiver's run so both reach the receive point together."""
    cfg = cfg or PlannerConfig()
    if not target.feasible or target.our_robot is None:
        raise ScoreUndefined("free kick target must be a feasible pass")
    if target.our_robot == kicker_id:
        raise ValueError("the kicker cannot receive its own pass")
    receiver = world.robot(target.our_robot, Team.OURS)
    traj = target.trajectory(cfg)
    t_ball = travel_time_to_distance(traj, dist(traj.origin, target.receive_point))
    # same body-radius reach as the interception search
    t_robot = arrival_time_from(receiver.position, receiver.velocity, target.receive_point,
                                cfg.limits_ours, cfg.robot_radius)
    order = KickOrder.KICK_FIRST if t_robot <= t_ball else KickOrder.ROBOT_FIRST
    return FreeKickPlan(t_ball, t_robot, order, max(0.0, t_robot - t_ball), max(0.0, t_ball - t_robot),
                        receiver.id, target.receive_point)


# -- possession -------------------------------------------------------------

class Side(str, Enum):
    OURS = "ours"
    THEIRS = "theirs"
    CONTESTED = "contested"


class Possession(NamedTuple):
    side: Side
    our_time: float
    their_time: float


def current_trajectory(world: WorldState, cfg: PlannerConfig):
    """The ball as it moves now: already rolling, or at rest."""
    v = world.ball.velocity
    speed = v.norm()
    direction = v if speed > 0 else Vec2(1.0, 0.0)
    return launch(world.ball.position, direction, speed, cfg.ball, KickType.FLAT, rolling=True)


def side_from_times(our_time: float, their_time: float, eps: float) -> Side:
    if our_time == their_time or abs(our_time - their_time) <= eps:
        return Side.CONTESTED
    return Side.OURS if our_time < their_time else Side.THEIRS


def possession(world: WorldState, cfg: PlannerConfig | None = None, dt: float | None = None) -> Possession:
    """Whichever team can intercept the ball first possesses it."""
    cfg = cfg or PlannerConfig()
    traj = current_trajectory(world, cfg)
    results = intercept_all(world, traj, cfg.limits_ours, cfg.limits_theirs, dt or cfg.dt, cfg.robot_radius)
    ours = min((r.time for r in results if r.team is Team.OURS), default=NEVER)
    theirs = min((r.time for r in results if r.team is Team.THEIRS), default=NEVER)
    return Possession(side_from_times(ours, theirs, cfg.contest_epsilon), ours, theirs)
