"""Compiled DPPS cell kernel.

Mirrors ``ballmodel``/``motion``/``interception`` operation for operation so
that per-cell results match the pure-Python path. The only addition is
cheap rejection of samples that are provably unreachable, which never
changes a result:

* ``_reach(t)`` bounds the distance any motion-model profile can cover by
  time ``t`` (start speed at most |v|, accel <= a, speed <= max(vmax, |v|),
  and braking at <= b to rest at ``t``). A sample further away than that is
  skipped without evaluating the arrival time.
* Since the ball never speeds up, from a sample at effective distance ``d``
  the next candidate cannot come before ``_reach(t) + speed*t`` catches up
  with ``d + speed*t_k``; the scan jumps there directly (``_catch_up``).
"""

import math

import numpy as np
from numba import njit

INF = math.inf

# robot table columns
PX, PY, VX, VY, VMAX, AMAX, DMAX, VBOUND, SPEED = range(9)
N_ROBOT_COLS = 9


@njit(cache=True, nogil=True)
def _from_rest(dist, vmax, a, b):
    peak_sq = (dist + 0.0) / (1.0 / (2.0 * a) + 1.0 / (2.0 * b))
    if peak_sq <= vmax * vmax:
        peak = math.sqrt(peak_sq)
        return (peak - 0.0) / a + peak / b
    cruise = dist - (vmax * vmax - 0.0) / (2.0 * a) - vmax * vmax / (2.0 * b)
    return (vmax - 0.0) / a + vmax / b + cruise / vmax


@njit(cache=True, nogil=True)
def _along(dist, v0, vmax, a, b):
    if v0 < 0:
        return -v0 / b + _from_rest(dist + v0 * v0 / (2.0 * b), vmax, a, b)
    stop = v0 * v0 / (2.0 * b)
    if stop > dist:
        return v0 / b + _from_rest(stop - dist, vmax, a, b)
    if v0 > vmax:
        return v0 / b + (dist - stop) / vmax
    peak_sq = (dist + v0 * v0 / (2.0 * a)) / (1.0 / (2.0 * a) + 1.0 / (2.0 * b))
    if peak_sq <= vmax * vmax:
        peak = math.sqrt(peak_sq)
        return (peak - v0) / a + peak / b
    cruise = dist - (vmax * vmax - v0 * v0) / (2.0 * a) - vmax * vmax / (2.0 * b)
    return (vmax - v0) / a + vmax / b + cruise / vmax


@njit(cache=True, nogil=True)
def _arrival(rob, tx, ty, reach):
    dx = tx - rob[PX]
    dy = ty - rob[PY]
    d = math.sqrt(dx * dx + dy * dy)
    vx = rob[VX]
    vy = rob[VY]
    if d > 0.0:
        ux = dx / d
        uy = dy / d
        v_along = vx * ux + vy * uy
        v_cross = abs(vx * uy - vy * ux)
    else:
        v_along = 0.0
        v_cross = math.sqrt(vx * vx + vy * vy)
    along = _along(max(d - reach, 0.0), v_along, rob[VMAX], rob[AMAX], rob[DMAX])
    return max(along, v_cross / rob[DMAX])


@njit(cache=True, nogil=True)
def _dist_speed(t, v0, v1, t1, d1, a1, a2, stop_t, stop_d):
    if t >= stop_t:
        return stop_d, 0.0
    if t <= t1:
        return v0 * t - 0.5 * a1 * t * t, v0 - a1 * t
    tau = t - t1
    return d1 + v1 * tau - 0.5 * a2 * tau * tau, v1 - a2 * tau


@njit(cache=True, nogil=True)
def _exit_distance(ox, oy, ux, uy, hl, hw):
    sx = INF
    sy = INF
    if ux > 0:
        sx = (hl - ox) / ux
    elif ux < 0:
        sx = (-hl - ox) / ux
    if uy > 0:
        sy = (hw - oy) / uy
    elif uy < 0:
        sy = (-hw - oy) / uy
    return max(0.0, min(sx, sy))


@njit(cache=True, nogil=True)
def _reach(t, u, vcap, a, b):
    """Upper bound on distance covered by ``t``: integral of min(u + a s, vcap, b (t - s))."""
    if u >= b * t:
        return 0.5 * b * t * t
    s1 = (b * t - u) / (a + b)
    peak = u + a * s1
    if peak <= vcap:
        r = t - s1
        return u * s1 + 0.5 * a * s1 * s1 + 0.5 * b * r * r
    ta = (vcap - u) / a
    s2 = t - vcap / b
    return u * ta + 0.5 * a * ta * ta + vcap * (s2 - ta) + 0.5 * vcap * vcap / b


@njit(cache=True, nogil=True)
def _catch_up(rhs, sp, u, vcap, a, b):
    """Smallest t with _reach(t) + sp t >= rhs (rhs >= 0).

    _reach is b t^2/2 up to t = u/b, then the quadratic
    (a b t^2 + 2 u b t - u^2) / (2 (a + b)) until the peak speed hits vcap,
    then linear with slope vcap.
    """
    ta = u / b
    if 0.5 * b * ta * ta + sp * ta >= rhs:
        return 2.0 * rhs / (sp + math.sqrt(sp * sp + 2.0 * b * rhs))
    k = 1.0 / (a + b)
    tb = ((vcap - u) * (a + b) / a + u) / b
    if _reach(tb, u, vcap, a, b) + sp * tb >= rhs:
        qa = 0.5 * a * b * k
        qb = u * b * k + sp
        qc = 0.5 * u * u * k + rhs
        return 2.0 * qc / (qb + math.sqrt(qb * qb + 4.0 * qa * qc))
    tc = (vcap - u) / a
    c0 = u * tc + 0.5 * a * tc * tc - vcap * tc - 0.5 * vcap * vcap / b
    return (rhs - c0) / (vcap + sp)


@njit(cache=True, nogil=True)
def _jump(deff, speed, t, dt, u, vcap, a, b):
    """Index of the first sample that is not provably out of reach."""
    t_next = _catch_up(deff + speed * t, speed, u, vcap, a, b)
    t_next = t_next * (1.0 - 1e-9) - 1e-12
    return int(math.floor(t_next / dt))


@njit(cache=True, nogil=True)
def sbip(rob, ox, oy, ux, uy, v0, v1, t1, d1, a1, a2, stop_t, stop_d,
         s_exit, s_air, dt, reach, bound, k_start):
    """Interception time strictly before ``bound`` (INF if none).

    Scanning starts at sample ``k_start``, which the caller guarantees is not
    past the first feasible sample.
    """
    k = k_start
    vb = rob[VBOUND]
    u = rob[SPEED]
    a = rob[AMAX]
    b = rob[DMAX]
    while True:
        t = k * dt
        if t >= stop_t:
            break
        if t >= bound:
            return INF
        s, speed = _dist_speed(t, v0, v1, t1, d1, a1, a2, stop_t, stop_d)
        if s > s_exit:
            return INF
        if s < s_air:
            k += 1
            continue
        bx = ox + s * ux
        by = oy + s * uy
        dx = bx - rob[PX]
        dy = by - rob[PY]
        deff = math.sqrt(dx * dx + dy * dy) - reach
        if deff > _reach(t, u, vb, a, b) * (1.0 + 1e-9) + 1e-12:
            k_next = _jump(deff, speed, t, dt, u, vb, a, b)
            k = k_next if k_next > k else k + 1
            continue
        if _arrival(rob, bx, by, reach) <= t:
            return t
        k += 1
    if stop_d > s_exit:
        return INF
    bx = ox + stop_d * ux
    by = oy + stop_d * uy
    t = max(_arrival(rob, bx, by, reach), stop_t)
    return t if t < bound else INF


@njit(cache=True, nogil=True)
def _first_sample(t_air, v0, v1, t1, d1, a1, a2, stop_t, stop_d, s_air, dt):
    """First sample index at which a chip has landed."""
    k = int(math.floor(t_air / dt))
    if k > 0:
        k -= 1
    while True:
        t = k * dt
        if t >= stop_t:
            return k
        s, _ = _dist_speed(t, v0, v1, t1, d1, a1, a2, stop_t, stop_d)
        if s >= s_air:
            return k
        k += 1


@njit(cache=True, nogil=True)
def _travel_time(d, v0, v1, t1, d1, a1, a2):
    if d <= d1 and t1 > 0:
        disc = max(0.0, v0 * v0 - 2.0 * a1 * d)
        return 2.0 * d / (v0 + math.sqrt(disc))
    rest = d - d1
    if rest <= 0:
        return t1
    disc = max(0.0, v1 * v1 - 2.0 * a2 * rest)
    denom = v1 + math.sqrt(disc)
    return t1 + (2.0 * rest / denom if denom > 0 else 0.0)


@njit(cache=True, nogil=True)
def dpps_block(start, stop, robots, team, kicker, dirs, powers, chip_flags,
               ox, oy, ratio, a1, a2, chip_frac, hl, hw, dt, reach, margin,
               our_idx, our_t, opp_idx, opp_t, recv_x, recv_y, feasible, calls):
    n_dir = dirs.shape[0]
    n_pow = powers.shape[0]
    n_rob = robots.shape[0]

    # Every trajectory starts at the ball, so the first jump depends only on
    # the robot and the launch speed.
    k0 = np.zeros((n_rob, n_pow), dtype=np.int64)
    for i in range(n_rob):
        rob = robots[i]
        dx = ox - rob[PX]
        dy = oy - rob[PY]
        deff = math.sqrt(dx * dx + dy * dy) - reach
        if deff > 1e-12:
            for j in range(n_pow):
                k0[i, j] = max(0, _jump(deff, powers[j], 0.0, dt, rob[SPEED], rob[VBOUND], rob[AMAX], rob[DMAX]))

    for c in range(start, stop):
        kt = c // (n_dir * n_pow)
        di = (c // n_pow) % n_dir
        pj = c % n_pow
        ux = dirs[di, 0]
        uy = dirs[di, 1]
        v0 = powers[pj]
        v1 = ratio * v0
        t1 = (v0 - v1) / a1
        d1 = 0.5 * (v0 + v1) * t1
        t2 = v1 / a2
        d2 = v1 * v1 / (2.0 * a2)
        stop_t = t1 + t2
        stop_d = d1 + d2
        s_exit = _exit_distance(ox, oy, ux, uy, hl, hw)
        s_air = 0.0
        k_air = 0
        if chip_flags[kt]:
            s_air = chip_frac * stop_d
            k_air = _first_sample(_travel_time(s_air, v0, v1, t1, d1, a1, a2),
                                  v0, v1, t1, d1, a1, a2, stop_t, stop_d, s_air, dt)

        best_our = INF
        best_our_i = -1
        best_opp = INF
        best_opp_i = -1
        n_calls = 0
        for i in range(n_rob):
            rob = robots[i]
            n_calls += 1
            k_start = max(k0[i, pj], k_air)
            if team[i] == 0:
                t = sbip(rob, ox, oy, ux, uy, v0, v1, t1, d1, a1, a2, stop_t, stop_d,
                         s_exit, s_air, dt, reach, best_our, k_start)
                # the kicker is simulated like everyone else but never receives its own pass
                if t < best_our and i != kicker:
                    best_our = t
                    best_our_i = i
            else:
                t = sbip(rob, ox, oy, ux, uy, v0, v1, t1, d1, a1, a2, stop_t, stop_d,
                         s_exit, s_air, dt, reach, best_opp, k_start)
                if t < best_opp:
                    best_opp = t
                    best_opp_i = i

        our_idx[c] = best_our_i
        our_t[c] = best_our
        opp_idx[c] = best_opp_i
        opp_t[c] = best_opp
        calls[c] = n_calls
        if best_our_i >= 0:
            s, _ = _dist_speed(best_our, v0, v1, t1, d1, a1, a2, stop_t, stop_d)
            recv_x[c] = ox + s * ux
            recv_y[c] = oy + s * uy
            feasible[c] = best_opp_i < 0 or best_our + margin <= best_opp
        else:
            recv_x[c] = np.nan
            recv_y[c] = np.nan
            feasible[c] = False
