import math
import random

import pytest

from sslplan.config import ZERO_WEIGHTS, PlannerConfig, WeightConfig
from sslplan.errors import DegenerateGeometry, OutOfRegion
from sslplan.motion import arrival_time
from sslplan.offball import (ZoneLabel, Zone, band_score, best_running_points, drag_decision, drag_judge,
                             guard_points, guard_time, lattice, partition_zones, raster, running_features,
                             score_running_point, score_zone)
from sslplan.worldmodel import FieldGeometry, RobotState, Team, Vec2, dist

from conftest import make_world

FIELD = FieldGeometry()
CFG = PlannerConfig()


def test_partition_centered_ball():
    part = partition_zones(FIELD, Vec2(0.0, 0.0))
    assert part.y_cut == 0.0 and part.x_cut == 3.0
    assert {z.area for z in part.zones} == {3.0 * 4.5}
    assert part[ZoneLabel.I].y_lo == 0.0 and part[ZoneLabel.III].x_lo == 3.0


def test_partition_clamps():
    assert partition_zones(FIELD, Vec2(1.0, 4.5)).y_cut == 3.5
    assert partition_zones(FIELD, Vec2(1.0, -4.4)).y_cut == -3.5
    assert partition_zones(FIELD, Vec2(1.0, 4.5), min_zone_width=2.0).y_cut == 2.5


def test_partition_covers_front_field():
    rng = random.Random(41)
    front = FIELD.half_length * FIELD.width
    for _ in range(1000):
        part = partition_zones(FIELD, Vec2(rng.uniform(-6, 6), rng.uniform(-4.5, 4.5)))
        assert sum(z.area for z in part.zones) == pytest.approx(front, abs=1e-9)
        assert min(z.y_hi - z.y_lo for z in part.zones) >= 1.0 - 1e-12
        # interiors are disjoint: a random point is strictly inside at most one zone
        p = Vec2(rng.uniform(0, 6), rng.uniform(-4.5, 4.5))
        assert sum(z.strictly_contains(p) for z in part.zones) <= 1
        assert part.containing(p)


def test_raster_count():
    zone = Zone(ZoneLabel.III, 3.0, 6.0, 2.5, 4.5)
    pts = raster(zone, 0.1)
    assert len(pts) == 31 * 21 == 651
    assert pts[0] == Vec2(3.0, 2.5) and pts[-1] == Vec2(6.0, 4.5)
    assert lattice(0.05, 0.31, 0.1) == [0.1, 0.2, 0.30000000000000004]


def test_zero_weights_score_zero():
    w = make_world(ours=[(0.0, 0.0)], theirs=[(5.5, 0.0)], ball=(0.0, 0.0))
    for p in raster(partition_zones(FIELD, w.ball.position)[ZoneLabel.IV], 0.5):
        if not (4.2 < p.x and abs(p.y) < 1.8):
            assert score_running_point(p, w, CFG, ZERO_WEIGHTS)[0] == 0.0


def test_out_of_region():
    w = make_world(theirs=[(5.5, 0.0)])
    for p in (Vec2(-0.1, 0.0), Vec2(3.0, 4.6), Vec2(6.01, 0.0)):
        with pytest.raises(OutOfRegion):
            score_running_point(p, w, CFG)


def test_exposure_definition():
    w = make_world(ours=[(2.0, 0.0)], theirs=[(-1.0, 0.0), (5.5, 0.0)], ball=(0.0, 0.0))
    assert running_features(Vec2(0.5, 0.0), w, CFG).defense_exposure == 0
    assert running_features(Vec2(3.0, 0.0), w, CFG).defense_exposure == 1


def test_guard_time_monotone():
    # mirror pair: same distance to ball and goal, guard nearer one of them
    w = make_world(theirs=[(5.0, 1.2)], ball=(0.0, 0.0))
    a, b = Vec2(3.0, 2.0), Vec2(3.0, -2.0)
    fa, fb = running_features(a, w, CFG), running_features(b, w, CFG)
    assert fa.dist_to_goal == fb.dist_to_goal and fa.dist_to_ball == fb.dist_to_ball
    assert fa.guard_time < fb.guard_time
    assert score_running_point(a, w, CFG)[0] < score_running_point(b, w, CFG)[0]


def test_guard_axis_symmetry():
    w = make_world(theirs=[(5.1, 0.0)])
    P, Q = guard_points(Vec2(1.0, 0.0), FIELD)
    assert P.x == Q.x and P.y == -Q.y
    lim = CFG.limits_theirs
    g = w.theirs[0]
    assert arrival_time(g, P, lim) == arrival_time(g, Q, lim)


def test_guard_time_cap_without_opponents():
    assert guard_time(Vec2(1.0, 1.0), make_world()) == 10.0
    far = make_world(theirs=[(-5.9, 4.4)])
    assert guard_time(Vec2(0.0, -4.4), far, cap=1.5) == 1.5


def test_guard_points_inside_area():
    with pytest.raises(DegenerateGeometry):
        guard_points(Vec2(5.0, 0.0), FIELD)


def test_guard_points_residuals():
    rng = random.Random(42)
    x_lo, x_hi, y_lo, y_hi = FIELD.defense_area
    n = 0
    while n < 1000:
        p = Vec2(rng.uniform(0, 6), rng.uniform(-4.5, 4.5))
        if x_lo < p.x and y_lo < p.y < y_hi:
            continue
        n += 1
        for q, post in zip(guard_points(p, FIELD), FIELD.goal_posts):
            on_edge = min(abs(q.x - x_lo), abs(q.x - x_hi), abs(q.y - y_lo), abs(q.y - y_hi))
            assert on_edge <= 1e-9
            assert x_lo - 1e-9 <= q.x <= x_hi + 1e-9 and y_lo - 1e-9 <= q.y <= y_hi + 1e-9
            u = (post[0] - p.x, post[1] - p.y)
            cross = abs(u[0] * (q.y - p.y) - u[1] * (q.x - p.x)) / math.hypot(*u)
            assert cross <= 1e-9


def test_band_score():
    band = (math.radians(15), math.radians(45))
    assert band_score(0.3, band, 0.5) == 1.0
    assert band_score(0.0, band, 0.5) < 1.0
    assert band_score(math.pi / 2, band, 0.5) == 0.0


def test_score_zone_skips_defense_area():
    w = make_world(theirs=[(5.5, 0.0)])
    zone = partition_zones(FIELD, Vec2(0.0, 0.0))[ZoneLabel.III]
    pts = [v.point for v in score_zone(zone, w, CFG)]
    assert len(pts) < len(raster(zone, 0.1))
    assert all(not (4.2 < p.x < 6.0 and 0.0 < p.y < 1.8) for p in pts)


def world_for_runners():
    return make_world(ours=[(-0.09, 0.0), (1.0, 1.0), (1.0, -1.0), (2.0, 2.0), (2.0, -2.0)],
                      theirs=[(5.5, 0.3), (3.0, 1.0), (2.5, -1.5)], ball=(0.0, 0.5))


def test_running_points_on_lattice_and_inside():
    w = world_for_runners()
    part = partition_zones(FIELD, w.ball.position)
    rps = best_running_points(w, CFG)
    assert set(rps) == set(ZoneLabel)
    for label, rp in rps.items():
        assert part[label].strictly_contains(rp.point)
        for c in rp.point:
            assert abs(c / 0.1 - round(c / 0.1)) < 1e-9
        best = max(v.score for v in score_zone(part[label], w, CFG) if part[label].strictly_contains(v.point))
        assert rp.score == best


def test_two_runners_get_zones_three_and_four():
    rps = best_running_points(world_for_runners(), CFG, n_runners=2)
    assert set(rps) == {ZoneLabel.III, ZoneLabel.IV}


def test_one_runner_gets_the_better_goal_zone():
    w = world_for_runners()
    both = best_running_points(w, CFG, n_runners=2)
    one = best_running_points(w, CFG, n_runners=1)
    assert len(one) == 1
    (label, rp), = one.items()
    assert rp.score == max(r.score for r in both.values())


def test_pass_point_zone_excluded():
    w = world_for_runners()
    rps = best_running_points(w, CFG, best_pass_point=Vec2(1.5, -2.0))
    assert ZoneLabel.II not in rps and len(rps) == 3
    assert ZoneLabel.I not in best_running_points(w, CFG, occupied={"I"})


def test_drag_judge_examples():
    assert drag_judge((0, 0), (0, 1), (1, 0)) == 1
    assert drag_judge((0, 0), (2, 2), (1, 1)) == 0
    assert drag_judge((0, 0), (1, 0), (0, 1)) == -1


def me_at(x, y):
    return RobotState(0, Team.OURS, Vec2(x, y))


def opp_at(x, y):
    return RobotState(0, Team.THEIRS, Vec2(x, y))


def test_drag_direction():
    d = drag_decision(me_at(0, 0), opp_at(0, 0.5), Vec2(1, 0), 0.0)
    assert d.judge > 0 and d.marked and not d.reversed
    # defender on the left of me->ball, so move right
    assert d.accel_direction == Vec2(0.0, -1.0)
    r = drag_decision(me_at(0, 0), opp_at(0, 0.5), Vec2(1, 0), 1.5)
    assert r.reversed and r.accel_direction == Vec2(0.0, 1.0)
    far = drag_decision(me_at(0, 0), opp_at(0, 3.0), Vec2(1, 0), 0.0)
    assert not far.marked


def test_drag_perpendicular_and_unit():
    rng = random.Random(43)
    for _ in range(1000):
        me, opp = me_at(rng.uniform(-5, 5), rng.uniform(-4, 4)), opp_at(rng.uniform(-5, 5), rng.uniform(-4, 4))
        ball = Vec2(rng.uniform(-5, 5), rng.uniform(-4, 4))
        d = drag_decision(me, opp, ball, rng.uniform(0, 3))
        tb = ball - me.position
        assert abs(d.accel_direction.dot(tb)) / tb.norm() <= 1e-9
        assert d.accel_direction.norm() == pytest.approx(1.0, abs=1e-12)


def test_drag_degenerate():
    with pytest.raises(DegenerateGeometry):
        drag_decision(me_at(0, 0), opp_at(0, 0), Vec2(1, 0), 0.0)
    with pytest.raises(DegenerateGeometry):
        drag_decision(me_at(1, 0), opp_at(0, 0), Vec2(1, 0), 0.0)


def test_drag_closed_loop_opens_a_gap():
    """A defender that lags behind our lateral moves loses the mark after a reversal."""
    me, opp, ball = Vec2(0.0, 0.0), Vec2(0.3, 0.6), Vec2(3.0, 0.0)
    vel_me, vel_opp, dt = Vec2(0.0, 0.0), Vec2(0.0, 0.0), 0.02
    flipped = False
    for _ in range(150):
        d = drag_decision(me_at(*me), opp_at(*opp), ball, vel_opp.norm())
        flipped |= d.reversed
        vel_me = Vec2(*(vel_me + d.accel_direction * (3.0 * dt)))
        if vel_me.norm() > 2.0:
            vel_me = vel_me * (2.0 / vel_me.norm())
        me = me + vel_me * dt
        # scripted defender: copies our velocity with a 0.3 s lag
        vel_opp = vel_opp + (vel_me - vel_opp) * (dt / 0.3)
        opp = opp + vel_opp * dt
    assert flipped
    assert dist(me, opp) > dist(Vec2(0.0, 0.0), Vec2(0.3, 0.6))


def test_running_weight_scaling_keeps_argmax():
    w = world_for_runners()
    a = best_running_points(w, CFG)
    b = best_running_points(w, CFG, weights=WeightConfig().scaled(3.0))
    assert {k: v.point for k, v in a.items()} == {k: v.point for k, v in b.items()}
