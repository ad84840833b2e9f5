"""Two-phase ball kinematics and pass power inversion.

A flat kick first slides, losing speed quickly until it reaches
``transition_ratio`` (5/7) of the launch speed, then rolls with a small
deceleration until it stops. A chip kick follows the same speed schedule but
cannot be touched while airborne, i.e. over the first
``chip_flight_fraction`` of its stopping distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .errors import ConfigError, DomainError
from .worldmodel import Vec2

NEVER = math.inf


class KickType(str, Enum):
    FLAT = "flat"
    CHIP = "chip"


@dataclass(frozen=True)
class BallModelParams:
    slide_decel: float = 3.4
    roll_decel: float = 0.5
    transition_ratio: float = 5.0 / 7.0
    power_min: float = 1.0
    power_max: float = 6.5
    chip_flight_fraction: float = 0.5

    def __post_init__(self):
        values = (self.slide_decel, self.roll_decel, self.transition_ratio,
                  self.power_min, self.power_max, self.chip_flight_fraction)
        if not all(math.isfinite(v) for v in values):
            raise ConfigError("ball model parameters must be finite")
        if not self.slide_decel > self.roll_decel > 0:
            raise ConfigError("need slide_decel > roll_decel > 0")
        if not 0 < self.transition_ratio < 1:
            raise ConfigError("transition_ratio must lie in (0, 1)")
        if not 0 < self.power_min < self.power_max:
            raise ConfigError("need 0 < power_min < power_max")
        if not 0 < self.chip_flight_fraction < 1:
            raise ConfigError("chip_flight_fraction must lie in (0, 1)")


@dataclass(frozen=True)
class BallTrajectory:
    """A kicked (or already rolling) ball moving in a straight line.

    Build with :func:`launch`; the phase boundaries are derived there.
    ``rolling=True`` starts directly in the rolling phase, which is how a ball
    observed mid-flight is modelled.
    """

    origin: Vec2
    direction: Vec2
    kick_speed: float
    kick_type: KickType
    params: BallModelParams
    rolling: bool
    v1: float
    slide_time: float
    slide_distance: float
    stop_time: float
    stop_distance: float

    @property
    def flight_distance(self) -> float:
        """Distance over which the ball cannot be intercepted."""
        if self.kick_type is KickType.CHIP:
            return self.params.chip_flight_fraction * self.stop_distance
        return 0.0

    @property
    def stop_point(self) -> Vec2:
        return self.point_at_distance(self.stop_distance)

    def point_at_distance(self, s: float) -> Vec2:
        return Vec2(self.origin.x + s * self.direction.x, self.origin.y + s * self.direction.y)


def launch(origin, direction, kick_speed: float, params: BallModelParams | None = None,
           kick_type: KickType = KickType.FLAT, rolling: bool = False) -> BallTrajectory:
    params = params or BallModelParams()
    if not math.isfinite(kick_speed) or kick_speed < 0:
        raise DomainError(f"kick speed must be finite and non-negative, got {kick_speed!r}")
    direction = Vec2(*direction)
    n = direction.norm()
    if n == 0.0:
        direction = Vec2(1.0, 0.0)
    elif abs(n - 1.0) > 1e-12:
        direction = Vec2(direction.x / n, direction.y / n)

    if rolling:
        v1, t1, d1 = kick_speed, 0.0, 0.0
    else:
        v1 = params.transition_ratio * kick_speed
        t1 = (kick_speed - v1) / params.slide_decel
        d1 = 0.5 * (kick_speed + v1) * t1
    t2 = v1 / params.roll_decel
    d2 = v1 * v1 / (2.0 * params.roll_decel)
    return BallTrajectory(Vec2(*origin), direction, float(kick_speed), KickType(kick_type), params,
                          rolling, v1, t1, d1, t1 + t2, d1 + d2)


class BallSample(NamedTuple):
    position: Vec2
    speed: float
    airborne: bool


def distance_and_speed_at(traj: BallTrajectory, t: float) -> tuple[float, float]:
    if t >= traj.stop_time:
        return traj.stop_distance, 0.0
    if t <= traj.slide_time:
        a = traj.params.slide_decel
        return traj.kick_speed * t - 0.5 * a * t * t, traj.kick_speed - a * t
    a = traj.params.roll_decel
    tau = t - traj.slide_time
    return traj.slide_distance + traj.v1 * tau - 0.5 * a * tau * tau, traj.v1 - a * tau


def ball_state_at(traj: BallTrajectory, t: float) -> BallSample:
    """Position, speed and airborne flag ``t`` seconds after the kick."""
    if math.isnan(t) or t < 0:
        raise DomainError(f"time must be non-negative, got {t!r}")
    s, speed = distance_and_speed_at(traj, t)
    return BallSample(traj.point_at_distance(s), speed, s < traj.flight_distance)


def travel_time_to_distance(traj: BallTrajectory, d: float) -> float:
    """Earliest time the ball has travelled ``d`` metres; ``NEVER`` past the stop point."""
    if math.isnan(d) or d < 0:
        raise DomainError(f"distance must be non-negative, got {d!r}")
    if d > traj.stop_distance:
        return NEVER
    if d <= traj.slide_distance and traj.slide_time > 0:
        v0 = traj.kick_speed
        disc = max(0.0, v0 * v0 - 2.0 * traj.params.slide_decel * d)
        return 2.0 * d / (v0 + math.sqrt(disc))
    rest = d - traj.slide_distance
    if rest <= 0:
        return traj.slide_time
    disc = max(0.0, traj.v1 * traj.v1 - 2.0 * traj.params.roll_decel * rest)
    denom = traj.v1 + math.sqrt(disc)
    return traj.slide_time + (2.0 * rest / denom if denom > 0 else 0.0)


def time_of_first_interceptable_point(traj: BallTrajectory, d: float) -> float:
    """Like :func:`travel_time_to_distance`, but ``NEVER`` where a chip is still airborne."""
    if d < traj.flight_distance:
        return NEVER
    return travel_time_to_distance(traj, d)


class PassPower(NamedTuple):
    speed: float
    clamped: bool
    unclamped: float
    v1: float


def kick_speed_for(d: float, t: float, roll_decel: float, transition_ratio: float = 5.0 / 7.0) -> float:
    """Launch speed putting the ball ``d`` metres away after ``t`` seconds.

    The short sliding phase is neglected: the ball is assumed to roll at
    ``roll_decel`` from speed v1 = d/t + a*t/2, and the launch speed is
    v1 / transition_ratio.
    """
    if not (d > 0 and t > 0):
        raise DomainError(f"distance and time must be positive, got d={d!r}, t={t!r}")
    if roll_decel < 0:
        raise DomainError("roll_decel must be non-negative")
    return _rolling_speed(d, t, roll_decel) * (1.0 / transition_ratio)


def _rolling_speed(d: float, t: float, roll_decel: float) -> float:
    return (d + 0.5 * roll_decel * t * t) / t


def pass_power_for(d: float, t: float, params: BallModelParams | None = None) -> PassPower:
    """Pass power for distance ``d`` and time ``t``, clamped to the kicker's range."""
    params = params or BallModelParams()
    raw = kick_speed_for(d, t, params.roll_decel, params.transition_ratio)
    speed = min(max(raw, params.power_min), params.power_max)
    return PassPower(speed, speed != raw, raw, _rolling_speed(d, t, params.roll_decel))
