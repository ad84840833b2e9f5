"""World snapshot types, field geometry and snapshot file ingestion.

Coordinates: origin at the field center, +x toward the opponent goal.
Units are SI throughout; angles live in (-pi, pi].
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, NamedTuple

import jsonschema

from .errors import SchemaError, ValidationError

MAX_ROBOTS_PER_TEAM = 16
FIELD_MARGIN = 0.5
V_MAX_VALIDATION = 5.0


class Vec2(NamedTuple):
    x: float
    y: float

    def __add__(self, other):
        return Vec2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Vec2(self.x - other[0], self.y - other[1])

    def __mul__(self, k):
        return Vec2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self):
        return Vec2(-self.x, -self.y)

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y)

    def dot(self, other) -> float:
        return self.x * other[0] + self.y * other[1]

    def cross(self, other) -> float:
        return self.x * other[1] - self.y * other[0]

    def unit(self) -> "Vec2":
        n = self.norm()
        if n == 0.0:
            raise ValueError("zero vector has no direction")
        return Vec2(self.x / n, self.y / n)

    def mirrored(self) -> "Vec2":
        return Vec2(self.x, -self.y)


def dist(a, b) -> float:
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    return math.sqrt(dx * dx + dy * dy)


def normalize_angle(theta: float) -> float:
    """Wrap to (-pi, pi]; values already in range are returned untouched."""
    if -math.pi < theta <= math.pi:
        return theta
    wrapped = math.remainder(theta, 2.0 * math.pi)
    return math.pi if wrapped <= -math.pi else wrapped


class Team(str, Enum):
    OURS = "ours"
    THEIRS = "theirs"

    @property
    def other(self) -> "Team":
        return Team.THEIRS if self is Team.OURS else Team.OURS


@dataclass(frozen=True)
class FieldGeometry:
    """Field dimensions. Defaults are SSL Division A."""

    length: float = 12.0
    width: float = 9.0
    goal_width: float = 1.8
    defense_area_depth: float = 1.8
    defense_area_width: float = 3.6

    def __post_init__(self):
        for name in ("length", "width", "goal_width", "defense_area_depth", "defense_area_width"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ValidationError(f"field.{name}", f"must be finite and positive, got {value!r}")
        if self.goal_width >= self.width:
            raise ValidationError("field.goal_width", "must be smaller than field width")
        if self.defense_area_width >= self.width:
            raise ValidationError("field.defense_area_width", "must be smaller than field width")
        if self.defense_area_depth >= self.length / 2:
            raise ValidationError("field.defense_area_depth", "must be smaller than half the field length")

    @property
    def half_length(self) -> float:
        return self.length / 2

    @property
    def half_width(self) -> float:
        return self.width / 2

    @property
    def goal_center(self) -> Vec2:
        return Vec2(self.half_length, 0.0)

    @property
    def goal_posts(self) -> tuple[Vec2, Vec2]:
        """Opponent goal posts as (left, right) seen from the field, i.e. (+y, -y)."""
        g = self.goal_width / 2
        return Vec2(self.half_length, g), Vec2(self.half_length, -g)

    @property
    def defense_area(self) -> tuple[float, float, float, float]:
        """Opponent defense area as (x_lo, x_hi, y_lo, y_hi)."""
        hw = self.defense_area_width / 2
        return (self.half_length - self.defense_area_depth, self.half_length, -hw, hw)

    def contains(self, p, margin: float = 0.0) -> bool:
        return abs(p[0]) <= self.half_length + margin and abs(p[1]) <= self.half_width + margin


@dataclass(frozen=True)
class RobotState:
    id: int
    team: Team
    position: Vec2
    velocity: Vec2 = Vec2(0.0, 0.0)
    orientation: float = 0.0

    @property
    def key(self) -> tuple[str, int]:
        return (self.team.value, self.id)

    def mirrored(self) -> "RobotState":
        return replace(
            self,
            position=self.position.mirrored(),
            velocity=self.velocity.mirrored(),
            orientation=normalize_angle(-self.orientation),
        )


@dataclass(frozen=True)
class BallState:
    position: Vec2
    velocity: Vec2 = Vec2(0.0, 0.0)

    def mirrored(self) -> "BallState":
        return BallState(self.position.mirrored(), self.velocity.mirrored())


@dataclass(frozen=True)
class WorldState:
    """Immutable snapshot. Robots are kept sorted: ours by id, then theirs by id."""

    field: FieldGeometry
    ball: BallState
    robots: tuple[RobotState, ...] = ()
    timestamp: float = 0.0

    def __post_init__(self):
        ordered = tuple(sorted(self.robots, key=lambda r: (r.team is not Team.OURS, r.id)))
        object.__setattr__(self, "robots", ordered)

    def team(self, team: Team) -> tuple[RobotState, ...]:
        return tuple(r for r in self.robots if r.team is team)

    @property
    def ours(self) -> tuple[RobotState, ...]:
        return self.team(Team.OURS)

    @property
    def theirs(self) -> tuple[RobotState, ...]:
        return self.team(Team.THEIRS)

    def robot(self, robot_id: int, team: Team = Team.OURS) -> RobotState:
        for r in self.robots:
            if r.id == robot_id and r.team is team:
                return r
        raise KeyError(f"no robot {robot_id} on team {team.value}")

    def with_robots(self, robots: Iterable[RobotState]) -> "WorldState":
        return replace(self, robots=tuple(robots))


def mirror_world(w: WorldState) -> WorldState:
    """Reflect every position, velocity and heading through y = 0."""
    return replace(w, ball=w.ball.mirrored(), robots=tuple(r.mirrored() for r in w.robots))


def swap_teams(w: WorldState) -> WorldState:
    """Relabel ours <-> theirs, leaving geometry untouched."""
    return replace(w, robots=tuple(replace(r, team=r.team.other) for r in w.robots))


# -- snapshot files ---------------------------------------------------------

_NUM = {"type": "number"}
_ROBOT = {
    "type": "object",
    "properties": {
        "id": {"type": "integer"},
        "x": _NUM, "y": _NUM, "vx": _NUM, "vy": _NUM, "theta": _NUM,
    },
    "required": ["id", "x", "y", "vx", "vy", "theta"],
    "additionalProperties": False,
}

SNAPSHOT_SCHEMA = {
    "type": "object",
    "properties": {
        "field": {
            "type": "object",
            "properties": {
                "length": _NUM, "width": _NUM, "goal_width": _NUM,
                "defense_area_depth": _NUM, "defense_area_width": _NUM,
            },
            "required": ["length", "width", "goal_width", "defense_area_depth", "defense_area_width"],
            "additionalProperties": False,
        },
        "ball": {
            "type": "object",
            "properties": {"x": _NUM, "y": _NUM, "vx": _NUM, "vy": _NUM},
            "required": ["x", "y", "vx", "vy"],
            "additionalProperties": False,
        },
        "ours": {"type": "array", "items": _ROBOT},
        "theirs": {"type": "array", "items": _ROBOT},
        "timestamp": _NUM,
    },
    "required": ["field", "ball", "ours", "theirs"],
    "additionalProperties": False,
}


def _json_path(error: jsonschema.ValidationError) -> str:
    path = "$"
    for part in error.absolute_path:
        path += f"[{part}]" if isinstance(part, int) else f".{part}"
    return path


def load_json_text(raw: bytes | str, what: str = "snapshot"):
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"{what} is not valid UTF-8: {exc}") from None
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what} is not valid JSON: {exc}") from None


def _check_finite(path: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValidationError(path, f"non-finite value {v!r}")


def _robot_from(item: dict, team: Team, path: str, fld: FieldGeometry) -> RobotState:
    _check_finite(path, item["x"], item["y"], item["vx"], item["vy"], item["theta"])
    pos = Vec2(float(item["x"]), float(item["y"]))
    vel = Vec2(float(item["vx"]), float(item["vy"]))
    if not fld.contains(pos, FIELD_MARGIN):
        raise ValidationError(path, f"position {tuple(pos)} outside field plus {FIELD_MARGIN} m margin")
    if vel.norm() > V_MAX_VALIDATION:
        raise ValidationError(path, f"speed {vel.norm():.3f} m/s exceeds {V_MAX_VALIDATION} m/s")
    return RobotState(int(item["id"]), team, pos, vel, normalize_angle(float(item["theta"])))


def world_from_dict(data) -> WorldState:
    try:
        jsonschema.validate(data, SNAPSHOT_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"{_json_path(exc)}: {exc.message}") from None

    f = data["field"]
    _check_finite("field", *f.values())
    fld = FieldGeometry(**{k: float(v) for k, v in f.items()})

    b = data["ball"]
    _check_finite("ball", b["x"], b["y"], b["vx"], b["vy"])
    ball = BallState(Vec2(float(b["x"]), float(b["y"])), Vec2(float(b["vx"]), float(b["vy"])))
    if not fld.contains(ball.position, FIELD_MARGIN):
        raise ValidationError("ball", "position outside field plus margin")

    robots = []
    for team in (Team.OURS, Team.THEIRS):
        items = data[team.value]
        if len(items) > MAX_ROBOTS_PER_TEAM:
            raise ValidationError(team.value, f"{len(items)} robots, at most {MAX_ROBOTS_PER_TEAM} allowed")
        seen = set()
        for i, item in enumerate(items):
            path = f"{team.value}[{i}]"
            if item["id"] in seen:
                raise ValidationError(f"{path}.id", f"duplicate robot id {item['id']}")
            seen.add(item["id"])
            robots.append(_robot_from(item, team, path, fld))

    timestamp = float(data.get("timestamp", 0.0))
    _check_finite("timestamp", timestamp)
    return WorldState(fld, ball, tuple(robots), timestamp)


def parse_world_snapshot(raw: bytes | str) -> WorldState:
    """Parse and validate snapshot text (UTF-8 JSON)."""
    return world_from_dict(load_json_text(raw))


def world_to_dict(w: WorldState) -> dict:
    def robot(r: RobotState) -> dict:
        return {"id": r.id, "x": r.position.x, "y": r.position.y,
                "vx": r.velocity.x, "vy": r.velocity.y, "theta": r.orientation}

    return {
        "field": {
            "length": w.field.length,
            "width": w.field.width,
            "goal_width": w.field.goal_width,
            "defense_area_depth": w.field.defense_area_depth,
            "defense_area_width": w.field.defense_area_width,
        },
        "ball": {"x": w.ball.position.x, "y": w.ball.position.y,
                 "vx": w.ball.velocity.x, "vy": w.ball.velocity.y},
        "ours": [robot(r) for r in w.ours],
        "theirs": [robot(r) for r in w.theirs],
        "timestamp": w.timestamp,
    }


def dump_world_snapshot(w: WorldState) -> str:
    return json.dumps(world_to_dict(w), indent=2)
