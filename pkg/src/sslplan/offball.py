"""Off-the-ball running: zone partition, running-point scoring and the drag skill."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple

from .config import PlannerConfig, WeightConfig
from .errors import DegenerateGeometry, OutOfRegion
from .motion import MotionLimits, arrival_time
from .worldmodel import FieldGeometry, RobotState, Vec2, WorldState, dist


class ZoneLabel(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


@dataclass(frozen=True)
class Zone:
    label: ZoneLabel
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    @property
    def area(self) -> float:
        return (self.x_hi - self.x_lo) * (self.y_hi - self.y_lo)

    def contains(self, p) -> bool:
        return self.x_lo <= p[0] <= self.x_hi and self.y_lo <= p[1] <= self.y_hi

    def strictly_contains(self, p) -> bool:
        return self.x_lo < p[0] < self.x_hi and self.y_lo < p[1] < self.y_hi


@dataclass(frozen=True)
class ZonePartition:
    zones: tuple[Zone, Zone, Zone, Zone]
    x_cut: float
    y_cut: float

    def __getitem__(self, label) -> Zone:
        return self.zones[list(ZoneLabel).index(ZoneLabel(label))]

    def containing(self, p) -> list[ZoneLabel]:
        return [z.label for z in self.zones if z.contains(p)]


def partition_zones(fld: FieldGeometry, ball, min_zone_width: float = 1.0) -> ZonePartition:
    """Split the attacking half at its x midpoint and at the ball's (clamped) y.

    I and II sit next to the halfway line, III and IV next to the goal;
    I and III are on the +y side.
    """
    hl, hw = fld.half_length, fld.half_width
    limit = max(hw - min_zone_width, 0.0)
    y_cut = min(max(ball[1], -limit), limit)
    x_cut = hl / 2
    zones = (
        Zone(ZoneLabel.I, 0.0, x_cut, y_cut, hw),
        Zone(ZoneLabel.II, 0.0, x_cut, -hw, y_cut),
        Zone(ZoneLabel.III, x_cut, hl, y_cut, hw),
        Zone(ZoneLabel.IV, x_cut, hl, -hw, y_cut),
    )
    return ZonePartition(zones, x_cut, y_cut)


def lattice(lo: float, hi: float, step: float) -> list[float]:
    """Multiples of ``step`` in [lo, hi]."""
    i0 = math.ceil(lo / step - 1e-9)
    i1 = math.floor(hi / step + 1e-9)
    return [i * step for i in range(i0, i1 + 1)]


def raster(zone: Zone, step: float) -> list[Vec2]:
    """Lattice vertices of ``zone``, edges included, x-major then y."""
    ys = lattice(zone.y_lo, zone.y_hi, step)
    return [Vec2(x, y) for x in lattice(zone.x_lo, zone.x_hi, step) for y in ys]


# -- guard time -------------------------------------------------------------

def _inside_defense(p, fld: FieldGeometry, strict: bool = True) -> bool:
    x_lo, x_hi, y_lo, y_hi = fld.defense_area
    if strict:
        return x_lo < p[0] < x_hi and y_lo < p[1] < y_hi
    return x_lo <= p[0] <= x_hi and y_lo <= p[1] <= y_hi


def defense_entry(p, post, fld: FieldGeometry) -> Vec2:
    """Where the segment p -> post first meets the defense-area boundary.

    Liang-Barsky clipping; the coordinate of the limiting edge is set exactly
    so the result lies on the boundary.
    """
    x_lo, x_hi, y_lo, y_hi = fld.defense_area
    px, py = p[0], p[1]
    dx, dy = post[0] - px, post[1] - py
    t0, edge = 0.0, None
    for pk, qk, name in ((-dx, px - x_lo, "x_lo"), (dx, x_hi - px, "x_hi"),
                         (-dy, py - y_lo, "y_lo"), (dy, y_hi - py, "y_hi")):
        if pk < 0:
            t = qk / pk
            if t > t0:
                t0, edge = t, name
    x, y = px + t0 * dx, py + t0 * dy
    if edge == "x_lo":
        x = x_lo
    elif edge == "x_hi":
        x = x_hi
    elif edge == "y_lo":
        y = y_lo
    elif edge == "y_hi":
        y = y_hi
    return Vec2(x, y)


def guard_points(p, fld: FieldGeometry) -> tuple[Vec2, Vec2]:
    """P and Q: entries of p -> left post and p -> right post into the defense area."""
    if _inside_defense(p, fld):
        raise DegenerateGeometry(f"point {tuple(p)} lies inside the defense area")
    left, right = fld.goal_posts
    return defense_entry(p, left, fld), defense_entry(p, right, fld)


def _distance_to_defense(p, fld: FieldGeometry) -> float:
    x_lo, x_hi, y_lo, y_hi = fld.defense_area
    dx = max(x_lo - p[0], 0.0, p[0] - x_hi)
    dy = max(y_lo - p[1], 0.0, p[1] - y_hi)
    return math.hypot(dx, dy)


def guards(world: WorldState) -> list[RobotState]:
    """Opponents inside the defense area, or else the one nearest to it."""
    fld = world.field

    def key(r):
        return (_distance_to_defense(r.position, fld), dist(r.position, fld.goal_center), r.id)

    ranked = sorted(world.theirs, key=key)
    inside = [r for r in ranked if _inside_defense(r.position, fld, strict=False)]
    return inside or ranked[:1]


def guard_time(p, world: WorldState, limits: MotionLimits | None = None, cap: float = 10.0,
               guard_set: list[RobotState] | None = None) -> float:
    """Time the guard(s) need to reach P and Q, summed, capped at ``cap``.

    A single guard covers both points. With two or more, the two best placed
    split P and Q whichever way is quicker. ``guard_set`` saves recomputing
    ``guards(world)`` when scoring many points of one world.
    """
    limits = limits or MotionLimits()
    P, Q = guard_points(p, world.field)
    gs = guards(world) if guard_set is None else guard_set
    if not gs:
        return cap
    if len(gs) == 1:
        total = arrival_time(gs[0], P, limits) + arrival_time(gs[0], Q, limits)
    else:
        a, b = gs[0], gs[1]
        total = min(arrival_time(a, P, limits) + arrival_time(b, Q, limits),
                    arrival_time(a, Q, limits) + arrival_time(b, P, limits))
    return min(total, cap)


# -- scoring ----------------------------------------------------------------

@dataclass(frozen=True)
class RunningPointFeatures:
    dist_to_goal: float
    dist_to_ball: float
    angle_to_goal: float
    guard_time: float
    defense_exposure: int


def band_score(angle: float, band: tuple[float, float], decay: float) -> float:
    """1 inside the preferred band, falling linearly to 0 over ``decay`` outside it."""
    lo, hi = band
    off = lo - angle if angle < lo else angle - hi if angle > hi else 0.0
    return max(0.0, 1.0 - off / decay)


def _check_front(p, fld: FieldGeometry) -> None:
    if not (0.0 <= p[0] <= fld.half_length and abs(p[1]) <= fld.half_width):
        raise OutOfRegion(f"point {tuple(p)} is outside the front field")


def running_features(p, world: WorldState, cfg: PlannerConfig,
                     guard_set: list[RobotState] | None = None) -> RunningPointFeatures:
    fld = world.field
    _check_front(p, fld)
    gc = fld.goal_center
    angle = math.atan2(abs(p[1]), gc.x - p[0])
    d_ball = dist(p, world.ball.position)
    nearest_opp = min((dist(r.position, world.ball.position) for r in world.theirs), default=math.inf)
    return RunningPointFeatures(
        dist_to_goal=dist(p, gc),
        dist_to_ball=d_ball,
        angle_to_goal=angle,
        guard_time=guard_time(p, world, cfg.limits_theirs, cfg.guard_time_cap, guard_set),
        defense_exposure=1 if d_ball > nearest_opp else 0,
    )


def weigh_running(f: RunningPointFeatures, world: WorldState, cfg: PlannerConfig,
                  weights: WeightConfig) -> float:
    w = weights.running
    length = weights.length_bound or world.field.length
    return (
        -w.goal_distance * min(f.dist_to_goal / length, 1.0)
        - w.ball_distance * min(f.dist_to_ball / length, 1.0)
        + w.goal_angle * band_score(f.angle_to_goal, cfg.angle_band, cfg.angle_band_decay)
        + w.guard_time * f.guard_time
        - w.exposure * f.defense_exposure
    )


def score_running_point(p, world: WorldState, cfg: PlannerConfig | None = None,
                        weights: WeightConfig | None = None,
                        guard_set: list[RobotState] | None = None) -> tuple[float, RunningPointFeatures]:
    cfg = cfg or PlannerConfig()
    weights = weights or cfg.weights
    f = running_features(p, world, cfg, guard_set)
    return weigh_running(f, world, cfg, weights), f


class ScoredVertex(NamedTuple):
    point: Vec2
    score: float
    features: RunningPointFeatures


def score_zone(zone: Zone, world: WorldState, cfg: PlannerConfig,
               weights: WeightConfig | None = None) -> list[ScoredVertex]:
    """Every raster vertex of ``zone`` that a runner may stand on."""
    out = []
    gs = guards(world)
    for p in raster(zone, cfg.grid_step):
        if _inside_defense(p, world.field):
            continue
        s, f = score_running_point(p, world, cfg, weights, gs)
        out.append(ScoredVertex(p, s, f))
    return out


class RunningPoint(NamedTuple):
    zone: ZoneLabel
    point: Vec2
    score: float
    features: RunningPointFeatures


def _zone_best(zone: Zone, world: WorldState, cfg: PlannerConfig, weights) -> RunningPoint | None:
    best = None
    # x-major then y raster order gives the lowest-x, lowest-y tie-break
    for v in score_zone(zone, world, cfg, weights):
        if zone.strictly_contains(v.point) and (best is None or v.score > best.score):
            best = v
    return None if best is None else RunningPoint(zone.label, best.point, best.score, best.features)


def best_running_points(world: WorldState, cfg: PlannerConfig | None = None,
                        occupied: Iterable = (), n_runners: int = 4,
                        best_pass_point=None, weights: WeightConfig | None = None) -> dict[ZoneLabel, RunningPoint]:
    """Best running point per available zone.

    Occupied zones and any zone holding ``best_pass_point`` are skipped. With
    fewer than four runners only the zones next to the goal are considered,
    and at most ``n_runners`` zones are returned, best first by score.
    """
    cfg = cfg or PlannerConfig()
    part = partition_zones(world.field, world.ball.position, cfg.min_zone_width)
    skip = {ZoneLabel(z) for z in occupied}
    if best_pass_point is not None:
        skip.update(part.containing(best_pass_point))
    labels = [z.label for z in part.zones]
    if n_runners < 4:
        labels = [ZoneLabel.III, ZoneLabel.IV]
    found = []
    for label in labels:
        if label in skip:
            continue
        rp = _zone_best(part[label], world, cfg, weights)
        if rp is not None:
            found.append(rp)
    order = list(ZoneLabel)
    keep = sorted(found, key=lambda rp: (-rp.score, order.index(rp.zone)))[:max(n_runners, 0)]
    return {rp.zone: rp for rp in sorted(keep, key=lambda rp: order.index(rp.zone))}


# -- drag skill -------------------------------------------------------------

@dataclass(frozen=True)
class DragDecision:
    judge: float
    marked: bool
    accel_direction: Vec2
    reversed: bool


def drag_judge(me, defender, ball) -> float:
    """Signed area of (ball - me, defender - me); positive when the defender is on the left."""
    return (ball[0] - me[0]) * (defender[1] - me[1]) - (defender[0] - me[0]) * (ball[1] - me[1])


def drag_decision(me: RobotState, defender: RobotState, ball, defender_speed: float,
                  v_min: float = 1.0, mark_distance: float = 1.0) -> DragDecision:
    """One tick of the drag feint.

    Move perpendicular to the line to the ball, away from the defender's side;
    once the defender is faster than ``v_min``, turn around.
    """
    mp, dp = me.position, defender.position
    if dist(mp, dp) <= 1e-9:
        raise DegenerateGeometry("robot and defender coincide")
    to_ball = Vec2(ball[0] - mp[0], ball[1] - mp[1])
    length = to_ball.norm()
    if length <= 1e-9:
        raise DegenerateGeometry("robot and ball coincide")
    judge = drag_judge(mp, dp, ball)
    left = Vec2(-to_ball.y / length, to_ball.x / length)
    direction = -left if judge > 0 else left
    reversed_ = defender_speed > v_min
    if reversed_:
        direction = -direction
    return DragDecision(judge, dist(mp, dp) <= mark_distance, direction, reversed_)
