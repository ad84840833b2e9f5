import math
import random

import pytest

from sslplan.ballmodel import NEVER, KickType, distance_and_speed_at, launch
from sslplan.errors import DomainError
from sslplan.interception import DEFAULT_DT, first_interceptor, intercept_all, intercept_time
from sslplan.motion import MotionLimits, arrival_time_from
from sslplan.scenarios import random_world
from sslplan.worldmodel import FieldGeometry, RobotState, Team, Vec2

from conftest import make_world

FIELD = FieldGeometry()


def bot(x, y, vx=0.0, vy=0.0, team=Team.OURS, i=0):
    return RobotState(i, team, Vec2(x, y), Vec2(vx, vy))


def random_case(rng):
    origin = Vec2(rng.uniform(-5, 5), rng.uniform(-4, 4))
    a = rng.uniform(-math.pi, math.pi)
    traj = launch(origin, (math.cos(a), math.sin(a)), rng.uniform(1, 6.5),
                  kick_type=rng.choice([KickType.FLAT, KickType.CHIP]))
    r = bot(rng.uniform(-6, 6), rng.uniform(-4.5, 4.5), rng.uniform(-2, 2), rng.uniform(-2, 2))
    return r, traj


def test_robot_on_a_dead_ball():
    traj = launch((0, 0), (1, 0), 0.0)
    assert intercept_time(bot(0.0, 0.0), traj, fld=FIELD).time == 0.0


def test_rest_point_always_reachable():
    traj = launch((0, 0), (1, 0), 2.0)
    assert traj.stop_distance < 6.0
    res = intercept_time(bot(-5.0, 4.0), traj, fld=FIELD)
    assert math.isfinite(res.time)
    assert res.time >= traj.stop_time
    assert res.point == traj.stop_point


def test_ball_leaving_field_is_lost():
    traj = launch((5.0, 0.0), (1, 0), 6.5)
    assert intercept_time(bot(-5.0, 0.0), traj, fld=FIELD).time == NEVER


def test_bad_dt():
    with pytest.raises(DomainError):
        intercept_time(bot(0, 0), launch((0, 0), (1, 0), 1.0), dt=0.0)


def test_fine_dt_oracle():
    rng = random.Random(21)
    for _ in range(150):
        r, traj = random_case(rng)
        coarse = intercept_time(r, traj, dt=DEFAULT_DT, fld=FIELD).time
        fine = intercept_time(r, traj, dt=1e-3, fld=FIELD).time
        assert math.isinf(coarse) == math.isinf(fine)
        if math.isinf(coarse):
            continue
        assert abs(coarse - fine) <= DEFAULT_DT + 1e-9


def test_earliest_feasibility():
    rng = random.Random(22)
    lim = MotionLimits()
    for _ in range(200):
        r, traj = random_case(rng)
        res = intercept_time(r, traj, fld=FIELD)
        if not res.reachable or res.time >= traj.stop_time:
            continue
        reach = 0.09
        assert arrival_time_from(r.position, r.velocity, res.point, lim, reach) <= res.time
        k = 0
        while k * DEFAULT_DT < res.time - 1e-12:
            t = k * DEFAULT_DT
            s, _ = distance_and_speed_at(traj, t)
            if s >= traj.flight_distance:
                assert arrival_time_from(r.position, r.velocity, traj.point_at_distance(s), lim, reach) > t
            k += 1


def test_result_point_on_trajectory():
    rng = random.Random(23)
    for _ in range(100):
        r, traj = random_case(rng)
        res = intercept_time(r, traj, fld=FIELD)
        if res.reachable and res.time < traj.stop_time:
            s, _ = distance_and_speed_at(traj, res.time)
            assert res.point == traj.point_at_distance(s)


def test_capability_monotone():
    rng = random.Random(24)
    slow, fast_v, fast_a = MotionLimits(2.0, 2.0, 3.0), MotionLimits(3.0, 2.0, 3.0), MotionLimits(2.0, 3.5, 3.0)
    for _ in range(150):
        r, traj = random_case(rng)
        base = intercept_time(r, traj, slow, fld=FIELD).time
        assert intercept_time(r, traj, fast_v, fld=FIELD).time <= base
        assert intercept_time(r, traj, fast_a, fld=FIELD).time <= base


def test_chip_shadowing():
    flat = launch((0, 0), (1, 0), 5.0)
    chip = launch((0, 0), (1, 0), 5.0, kick_type=KickType.CHIP)
    for x in (0.5, 1.5, 2.5, 0.5 * chip.stop_distance - 0.1):
        for y in (0.0, 0.2, -0.4):
            r = bot(x, y)
            assert intercept_time(r, chip, fld=FIELD).time >= intercept_time(r, flat, fld=FIELD).time


def test_intercept_all_order_and_vacuous_opponents():
    rng = random.Random(25)
    w = random_world(rng, 16, 16)
    traj = launch(w.ball.position, (1, 0), 3.0)
    res = intercept_all(w, traj)
    assert len(res) == 32
    assert [(r.team, r.robot_id) for r in res] == [(r.team, r.id) for r in w.robots]
    assert [r.robot_id for r in res[:16]] == list(range(16))

    lonely = make_world(ours=[(0.0, 0.0)])
    res = intercept_all(lonely, launch((0, 0), (1, 0), 2.0))
    assert first_interceptor(res, Team.THEIRS) is None


def test_adding_an_opponent_never_hurts_them():
    rng = random.Random(26)
    for _ in range(50):
        w = random_world(rng, 3, rng.randint(1, 6))
        a = rng.uniform(-math.pi, math.pi)
        traj = launch(w.ball.position, (math.cos(a), math.sin(a)), rng.uniform(1, 6.5))
        before = first_interceptor(intercept_all(w, traj), Team.THEIRS).time
        extra = RobotState(99, Team.THEIRS, Vec2(rng.uniform(-6, 6), rng.uniform(-4.5, 4.5)))
        after = first_interceptor(intercept_all(w.with_robots(w.robots + (extra,)), traj), Team.THEIRS).time
        assert after <= before


def test_first_interceptor_tie_goes_to_lower_id():
    w = make_world(ours=[(1.0, 1.0), (1.0, -1.0)])
    res = intercept_all(w, launch((0, 0), (1, 0), 3.0))
    assert res[0].time == res[1].time
    assert first_interceptor(res, Team.OURS).robot_id == 0
    assert first_interceptor(res, Team.OURS, exclude=0).robot_id == 1
