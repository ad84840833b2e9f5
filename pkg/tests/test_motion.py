import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from sslplan.errors import ConfigError, DomainError
from sslplan.motion import (MotionLimits, along_track_time, arrival_time, arrival_time_from,
                            arrival_time_with_buffer, time_from_rest)
from sslplan.worldmodel import RobotState, Team, Vec2, dist

from oracles import simulate_bang_bang

LIM = MotionLimits()


def robot(x=0.0, y=0.0, vx=0.0, vy=0.0):
    return RobotState(0, Team.OURS, Vec2(x, y), Vec2(vx, vy))


def test_at_target():
    assert arrival_time(robot(1.0, 1.0), Vec2(1.0, 1.0)) == 0.0


def test_cruise_closed_form():
    d = 10.0
    expected = d / 3.25 + 3.25 / 2 * (1 / 3.0 + 1 / 3.0)
    assert arrival_time(robot(), Vec2(d, 0.0)) == pytest.approx(expected, rel=1e-12)
    assert simulate_bang_bang(d, 0.0, 3.25, 3.0, 3.0) == pytest.approx(expected, abs=1e-3)


@pytest.mark.parametrize("d,v0", [(0.5, 0.0), (2.0, 1.0), (3.0, -1.5), (0.3, 2.5), (6.0, 3.0), (1.0, 3.25)])
def test_along_track_against_simulation(d, v0):
    assert along_track_time(d, v0, LIM) == pytest.approx(simulate_bang_bang(d, v0, 3.25, 3.0, 3.0), abs=1e-3)


def test_asymmetric_limits_against_simulation():
    lim = MotionLimits(max_speed=2.0, max_accel=1.5, max_decel=4.0)
    for d, v0 in ((0.4, 0.0), (5.0, 0.5), (2.0, -1.0)):
        assert along_track_time(d, v0, lim) == pytest.approx(simulate_bang_bang(d, v0, 2.0, 1.5, 4.0), abs=1e-3)


def test_moving_away_is_slower():
    at_rest = arrival_time(robot(), Vec2(2.0, 0.0))
    assert arrival_time(robot(vx=-1.0), Vec2(2.0, 0.0)) > at_rest


def test_faster_than_cap():
    # braking down to the cap is accounted for
    lim = MotionLimits(max_speed=2.0)
    assert along_track_time(20.0, 4.0, lim) > 20.0 / 4.0


def test_cross_track_penalty():
    t = arrival_time(robot(vy=3.0), Vec2(0.01, 0.0))
    assert t >= 3.0 / 3.0


def test_buffer():
    r, tgt = robot(vx=0.5), Vec2(3.0, 1.0)
    base = arrival_time(r, tgt)
    assert arrival_time_with_buffer(r, tgt, LIM, 0.0) == base
    assert arrival_time_with_buffer(r, tgt, LIM) == pytest.approx(base + 0.3)
    assert arrival_time_with_buffer(r, tgt, LIM, 0.1 + 0.2) == pytest.approx(
        arrival_time_with_buffer(r, tgt, LIM, 0.1) + 0.2)
    with pytest.raises(DomainError):
        arrival_time_with_buffer(r, tgt, LIM, -0.1)


def test_bad_limits():
    with pytest.raises(ConfigError):
        MotionLimits(max_speed=0.0)


@settings(max_examples=300)
@given(st.floats(-4, 4), st.floats(-4, 4), st.floats(0, 2 * math.pi))
def test_rest_symmetry(x, y, phi):
    d = math.hypot(x, y)
    a = arrival_time(robot(), Vec2(x, y))
    b = arrival_time(robot(), Vec2(d * math.cos(phi), d * math.sin(phi)))
    assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


def test_continuity():
    rng = random.Random(3)
    for _ in range(2000):
        r = robot(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-2, 2), rng.uniform(-2, 2))
        tgt = Vec2(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if dist(r.position, tgt) < 0.05:
            continue
        nudge = Vec2(tgt.x + rng.uniform(-1e-7, 1e-7), tgt.y + rng.uniform(-1e-7, 1e-7))
        assert abs(arrival_time(r, tgt) - arrival_time(r, nudge)) < 1e-4


@pytest.mark.parametrize("speed", [0.0, 0.5])
def test_triangle_bound_slow_robots(speed):
    rng = random.Random(4)
    for _ in range(20000):
        a = rng.uniform(-math.pi, math.pi)
        v = Vec2(speed * math.cos(a), speed * math.sin(a))
        p, b, c = (Vec2(rng.uniform(-5, 5), rng.uniform(-5, 5)) for _ in range(3))
        lhs = arrival_time_from(p, v, c, LIM)
        assert lhs <= arrival_time_from(p, v, b, LIM) + time_from_rest(dist(b, c), LIM) + 1e-12


@pytest.mark.xfail(strict=True, reason="decoupled model ignores the sideways drift while braking cross-track speed")
def test_triangle_bound_fast_robots():
    p, v = Vec2(-3.41, 2.13), Vec2(-2.90, 2.89)
    b, c = Vec2(-3.13, 3.53), Vec2(1.66, -1.62)
    assert arrival_time_from(p, v, c, LIM) <= arrival_time_from(p, v, b, LIM) + time_from_rest(dist(b, c), LIM)


def test_reach_shortens_distance():
    assert arrival_time_from(Vec2(0, 0), Vec2(0, 0), Vec2(1.0, 0), LIM, 0.09) == pytest.approx(
        time_from_rest(0.91, LIM))
