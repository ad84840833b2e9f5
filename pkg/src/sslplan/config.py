"""Planner configuration: every tunable number in one JSON-loadable tree."""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass

from .ballmodel import BallModelParams, KickType
from .errors import ConfigError, PlannerError
from .motion import MotionLimits
from .worldmodel import load_json_text


@dataclass(frozen=True)
class SearchGrid:
    n_directions: int = 128
    n_powers: int = 64
    power_min: float = 1.0
    power_max: float = 6.5
    kick_types: tuple[KickType, ...] = (KickType.FLAT, KickType.CHIP)

    def __post_init__(self):
        if self.n_directions < 1 or self.n_powers < 1:
            raise ConfigError("grid sizes must be positive")
        if not 0 < self.power_min <= self.power_max:
            raise ConfigError("need 0 < power_min <= power_max")
        kinds = tuple(KickType(k) for k in self.kick_types)
        if len(set(kinds)) != len(kinds):
            raise ConfigError("duplicate kick types")
        # canonical order: flat before chip
        object.__setattr__(self, "kick_types", tuple(k for k in KickType if k in kinds))

    def angle(self, k: int) -> float:
        return -math.pi + k * (2.0 * math.pi / self.n_directions)

    def power(self, j: int) -> float:
        if self.n_powers == 1:
            return self.power_min
        return self.power_min + j * (self.power_max - self.power_min) / (self.n_powers - 1)

    @property
    def cells_per_kick_type(self) -> int:
        return self.n_directions * self.n_powers

    @property
    def n_cells(self) -> int:
        return len(self.kick_types) * self.cells_per_kick_type


@dataclass(frozen=True)
class PassWeights:
    intercept_time: float = 1.0
    shoot_angle: float = 2.0
    goal_distance: float = 1.5
    refraction: float = 0.5
    margin: float = 1.0


@dataclass(frozen=True)
class RunWeights:
    goal_distance: float = 1.0
    ball_distance: float = 0.5
    goal_angle: float = 1.0
    guard_time: float = 0.5
    exposure: float = 1.0


@dataclass(frozen=True)
class WeightConfig:
    """Feature weights plus normalisation bounds.

    Lengths are divided by ``length_bound`` (the field length when unset) and
    angles by ``angle_bound``; times stay in seconds. ``margin_cap`` bounds the
    interception margin when no opponent can reach the ball at all.
    """

    profile: str = "default"
    passing: PassWeights = PassWeights()
    running: RunWeights = RunWeights()
    length_bound: float | None = None
    angle_bound: float = math.pi
    margin_cap: float = 3.0

    def __post_init__(self):
        weights = dataclasses.astuple(self.passing) + dataclasses.astuple(self.running)
        if not all(math.isfinite(w) for w in weights):
            raise ConfigError("weights must be finite")
        for name in ("angle_bound", "margin_cap"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        if self.length_bound is not None and not self.length_bound > 0:
            raise ConfigError("length_bound must be positive")

    def scaled(self, factor: float) -> "WeightConfig":
        def scale(w):
            return type(w)(**{k: v * factor for k, v in dataclasses.asdict(w).items()})
        return dataclasses.replace(self, passing=scale(self.passing), running=scale(self.running))


ZERO_WEIGHTS = WeightConfig(
    profile="zero",
    passing=PassWeights(0.0, 0.0, 0.0, 0.0, 0.0),
    running=RunWeights(0.0, 0.0, 0.0, 0.0, 0.0),
)

PROFILES = {"default": WeightConfig(), "zero": ZERO_WEIGHTS}


@dataclass(frozen=True)
class PlannerConfig:
    ball: BallModelParams = BallModelParams()
    limits_ours: MotionLimits = MotionLimits()
    limits_theirs: MotionLimits = MotionLimits()
    grid: SearchGrid = SearchGrid()
    weights: WeightConfig = WeightConfig()
    dt: float = 1.0 / 60.0
    robot_radius: float = 0.09
    safety_margin: float = 0.3
    possession_radius: float = 0.15
    angle_threshold: float = 0.1
    shot_power: float | None = None
    buffer: float = 0.3
    contest_epsilon: float = 1e-3
    v_min: float = 1.0
    grid_step: float = 0.1
    min_zone_width: float = 1.0
    guard_time_cap: float = 10.0
    angle_band: tuple[float, float] = (math.radians(15.0), math.radians(45.0))
    angle_band_decay: float = math.radians(45.0)
    workers: int = 1

    def __post_init__(self):
        positive = ("dt", "grid_step", "min_zone_width", "guard_time_cap", "angle_band_decay", "contest_epsilon")
        for name in positive:
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ConfigError(f"{name} must be finite and positive, got {v!r}")
        non_negative = ("robot_radius", "safety_margin", "possession_radius", "angle_threshold", "buffer", "v_min")
        for name in non_negative:
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0):
                raise ConfigError(f"{name} must be finite and non-negative, got {v!r}")
        lo, hi = self.angle_band
        if not 0 <= lo <= hi <= math.pi:
            raise ConfigError("angle_band must satisfy 0 <= lo <= hi <= pi")
        if self.shot_power is not None and not self.shot_power > 0:
            raise ConfigError("shot_power must be positive")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    @property
    def effective_shot_power(self) -> float:
        return self.ball.power_max if self.shot_power is None else self.shot_power

    def limits_for(self, team) -> MotionLimits:
        from .worldmodel import Team
        return self.limits_ours if Team(team) is Team.OURS else self.limits_theirs


# -- (de)serialisation ------------------------------------------------------

_NESTED = {
    "ball": BallModelParams,
    "limits_ours": MotionLimits,
    "limits_theirs": MotionLimits,
    "grid": SearchGrid,
}


def _build(cls, data, path):
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: expected an object")
    names = {f.name for f in dataclasses.fields(cls)}
    extra = set(data) - names
    if extra:
        raise ConfigError(f"{path}: unknown keys {sorted(extra)}")
    kwargs = {}
    for k, v in data.items():
        if isinstance(v, bool) or not isinstance(v, (int, float, list, str, type(None))):
            raise ConfigError(f"{path}.{k}: unsupported value {v!r}")
        kwargs[k] = tuple(v) if isinstance(v, list) else v
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _weights_from(data) -> WeightConfig:
    if not isinstance(data, dict):
        raise ConfigError("weights: expected an object")
    data = dict(data)
    profile = data.pop("profile", "default")
    if profile not in PROFILES:
        raise ConfigError(f"weights.profile: unknown profile {profile!r}")
    base = PROFILES[profile]
    passing = dataclasses.asdict(base.passing) | data.pop("pass", {})
    running = dataclasses.asdict(base.running) | data.pop("run", {})
    extra = set(data) - {"length_bound", "angle_bound", "margin_cap"}
    if extra:
        raise ConfigError(f"weights: unknown keys {sorted(extra)}")
    try:
        return dataclasses.replace(
            base, profile=profile,
            passing=_build(PassWeights, passing, "weights.pass"),
            running=_build(RunWeights, running, "weights.run"),
            **data,
        )
    except TypeError as exc:
        raise ConfigError(f"weights: {exc}") from None


def config_from_dict(data) -> PlannerConfig:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    data = dict(data)
    kwargs = {}
    for key, cls in _NESTED.items():
        if key in data:
            kwargs[key] = _build(cls, data.pop(key), key)
    if "limits" in data:
        # shorthand: same limits for both teams
        both = _build(MotionLimits, data.pop("limits"), "limits")
        kwargs.setdefault("limits_ours", both)
        kwargs.setdefault("limits_theirs", both)
    if "weights" in data:
        kwargs["weights"] = _weights_from(data.pop("weights"))
    scalars = {f.name for f in dataclasses.fields(PlannerConfig)} - set(_NESTED) - {"weights"}
    extra = set(data) - scalars
    if extra:
        raise ConfigError(f"unknown config keys {sorted(extra)}")
    for k, v in data.items():
        if isinstance(v, bool) or not isinstance(v, (int, float, list, type(None))):
            raise ConfigError(f"{k}: unsupported value {v!r}")
        kwargs[k] = tuple(v) if isinstance(v, list) else v
    if "grid" not in kwargs and "ball" in kwargs:
        # the search range follows the kicker's power range unless given
        b = kwargs["ball"]
        kwargs["grid"] = SearchGrid(power_min=b.power_min, power_max=b.power_max)
    try:
        return PlannerConfig(**kwargs)
    except PlannerError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def load_config(raw: bytes | str | None) -> PlannerConfig:
    if raw is None:
        return PlannerConfig()
    try:
        data = load_json_text(raw, "config")
    except PlannerError as exc:
        raise ConfigError(str(exc)) from None
    return config_from_dict(data)


def config_to_dict(cfg: PlannerConfig) -> dict:
    def plain(v):
        if dataclasses.is_dataclass(v):
            return {f.name: plain(getattr(v, f.name)) for f in dataclasses.fields(v)}
        if isinstance(v, tuple):
            return [plain(x) for x in v]
        if isinstance(v, KickType):
            return v.value
        return v

    out = plain(cfg)
    w = out.pop("weights")
    out["weights"] = {
        "profile": w["profile"],
        "pass": w["passing"],
        "run": w["running"],
        "length_bound": w["length_bound"],
        "angle_bound": w["angle_bound"],
        "margin_cap": w["margin_cap"],
    }
    return out


def dump_config(cfg: PlannerConfig) -> str:
    return json.dumps(config_to_dict(cfg), indent=2)
