"""Robot arrival-time model.

A point mass with bounded acceleration, braking and top speed is driven
along the straight line to the target with a bang-bang (trapezoidal)
profile. Initial velocity across that line has to be braked away; the two
axes run in parallel and the slower one decides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, DomainError


@dataclass(frozen=True)
class MotionLimits:
    max_speed: float = 3.25
    max_accel: float = 3.0
    max_decel: float = 3.0

    def __post_init__(self):
        for name in ("max_speed", "max_accel", "max_decel"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ConfigError(f"motion limit {name} must be finite and positive, got {v!r}")


def time_from_rest(distance: float, limits: MotionLimits) -> float:
    """Time to cover ``distance`` starting and ending at rest."""
    return along_track_time(distance, 0.0, limits)


def along_track_time(distance: float, v0: float, limits: MotionLimits) -> float:
    """1D time to stop exactly ``distance`` ahead, starting with signed speed ``v0``."""
    a, b, vmax = limits.max_accel, limits.max_decel, limits.max_speed
    if v0 < 0:
        # brake the backwards motion first, then start from rest further away
        return -v0 / b + along_track_time(distance + v0 * v0 / (2.0 * b), 0.0, limits)
    stop = v0 * v0 / (2.0 * b)
    if stop > distance:
        return v0 / b + along_track_time(stop - distance, 0.0, limits)
    if v0 > vmax:
        return v0 / b + (distance - stop) / vmax
    peak_sq = (distance + v0 * v0 / (2.0 * a)) / (1.0 / (2.0 * a) + 1.0 / (2.0 * b))
    if peak_sq <= vmax * vmax:
        peak = math.sqrt(peak_sq)
        return (peak - v0) / a + peak / b
    cruise = distance - (vmax * vmax - v0 * v0) / (2.0 * a) - vmax * vmax / (2.0 * b)
    return (vmax - v0) / a + vmax / b + cruise / vmax


def arrival_time_from(position, velocity, target, limits: MotionLimits, reach: float = 0.0) -> float:
    """Arrival time for a robot at ``position`` moving at ``velocity``.

    ``reach`` shortens the distance to cover (robot radius when the robot
    only needs to touch the target with its front).
    """
    dx = target[0] - position[0]
    dy = target[1] - position[1]
    d = math.sqrt(dx * dx + dy * dy)
    vx, vy = velocity[0], velocity[1]
    if d > 0.0:
        ux, uy = dx / d, dy / d
        v_along = vx * ux + vy * uy
        v_cross = abs(vx * uy - vy * ux)
    else:
        v_along = 0.0
        v_cross = math.sqrt(vx * vx + vy * vy)
    along = along_track_time(max(d - reach, 0.0), v_along, limits)
    return max(along, v_cross / limits.max_decel)


def arrival_time(robot, target, limits: MotionLimits | None = None) -> float:
    return arrival_time_from(robot.position, robot.velocity, target, limits or MotionLimits())


def arrival_time_with_buffer(robot, target, limits: MotionLimits | None = None, buffer: float = 0.3) -> float:
    if not buffer >= 0:
        raise DomainError(f"buffer must be non-negative, got {buffer!r}")
    return arrival_time(robot, target, limits) + buffer


def speed_bound(velocity, limits: MotionLimits) -> float:
    """Fastest the robot can ever move, for lower-bounding arrival times."""
    return max(limits.max_speed, math.hypot(velocity[0], velocity[1]))
