"""Numba-compiled kernels: njit twins of the pure-numpy fallback.

Decision logic (candidate ordering, tie-breaks, budget accounting) matches
_kernels_numpy exactly; only per-element floating-point evaluation order may
differ at the ulp level. All kernels are single-threaded for bit-for-bit
reproducibility.
"""

import math

import numpy as np
from numba import njit

HALFSPACE, UNITBALL, PUNCTURED, TWICE_PUNCTURED, SEGMENT_COMPLEMENT, BOX = range(6)

_INVPHI = 0.6180339887498949


@njit(cache=True)
def _dist(kind, params, x):
    n = x.shape[0]
    if kind == HALFSPACE:
        return x[n - 1]
    if kind == UNITBALL:
        s = 0.0
        for i in range(n):
            s += x[i] * x[i]
        return 1.0 - math.sqrt(s)
    if kind == PUNCTURED:
        s = 0.0
        for i in range(n):
            d = x[i] - params[i]
            s += d * d
        return math.sqrt(s)
    if kind == TWICE_PUNCTURED:
        su = 0.0
        sv = 0.0
        for i in range(n):
            du = x[i] - params[i]
            dv = x[i] - params[n + i]
            su += du * du
            sv += dv * dv
        return min(math.sqrt(su), math.sqrt(sv))
    if kind == SEGMENT_COMPLEMENT:
        ww = 0.0
        dot = 0.0
        for i in range(n):
            w = params[n + i] - params[i]
            ww += w * w
            dot += (x[i] - params[i]) * w
        t = dot / ww
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        s = 0.0
        for i in range(n):
            z = params[i] + t * (params[n + i] - params[i])
            d = x[i] - z
            s += d * d
        return math.sqrt(s)
    # BOX
    best = np.inf
    for i in range(n):
        a = x[i] - params[i]
        b = params[n + i] - x[i]
        if a < best:
            best = a
        if b < best:
            best = b
    return best


@njit(cache=True)
def _sep(x, y):
    s = 0.0
    for i in range(x.shape[0]):
        d = x[i] - y[i]
        s += d * d
    return math.sqrt(s)


@njit(cache=True)
def _h(kind, params, c, x, y):
    dx = _dist(kind, params, x)
    dy = _dist(kind, params, y)
    if dx <= 0.0 or dy <= 0.0:
        return np.inf
    # sqrt(dx)*sqrt(dy) avoids underflow of the product for tiny distances
    return math.log1p(c * _sep(x, y) / (math.sqrt(dx) * math.sqrt(dy)))


@njit(cache=True)
def _defect(kind, params, c, x, y, z):
    return (_h(kind, params, c, x, z) + _h(kind, params, c, z, y)
            - _h(kind, params, c, x, y))


@njit(cache=True)
def dist_batch(kind, params, X):
    N = X.shape[0]
    out = np.empty(N)
    for i in range(N):
        out[i] = _dist(kind, params, X[i])
    return out


def dist_point(kind, params, x):
    return float(_dist(kind, params, x))


@njit(cache=True)
def pair_stats(kind, params, X, Y):
    N = X.shape[0]
    r = np.empty(N)
    dx = np.empty(N)
    dy = np.empty(N)
    for i in range(N):
        r[i] = _sep(X[i], Y[i])
        dx[i] = _dist(kind, params, X[i])
        dy[i] = _dist(kind, params, Y[i])
    return r, dx, dy


@njit(cache=True)
def h_batch(kind, params, c, X, Y):
    N = X.shape[0]
    out = np.empty(N)
    for i in range(N):
        out[i] = _h(kind, params, c, X[i], Y[i])
    return out


@njit(cache=True)
def defect_batch(kind, params, c, X, Y, Z):
    N = X.shape[0]
    out = np.empty(N)
    for i in range(N):
        out[i] = _defect(kind, params, c, X[i], Y[i], Z[i])
    return out


@njit(cache=True)
def _trip_defect_or_inf(kind, params, c, trip, lo, hi, d_floor):
    n = lo.shape[0]
    for p in range(3):
        for i in range(n):
            v = trip[p * n + i]
            if v < lo[i] or v > hi[i]:
                return np.inf
        if _dist(kind, params, trip[p * n:(p + 1) * n]) < d_floor:
            return np.inf
    return _defect(kind, params, c, trip[:n], trip[n:2 * n], trip[2 * n:])


@njit(cache=True)
def polish_defect(kind, params, c, T, f, step, lo, hi, d_floor, step_min, max_evals):
    R, D = T.shape
    active = np.empty(R, dtype=np.bool_)
    for i in range(R):
        active[i] = step[i] >= step_min
    evals = 0
    while True:
        na = 0
        for i in range(R):
            if active[i]:
                na += 1
        if na == 0:
            break
        cost = na * 2 * D
        if evals + cost > max_evals:
            break
        evals += cost
        for i in range(R):
            if not active[i]:
                continue
            bestv = np.inf
            bestj = -1
            bestsg = 0.0
            for j in range(D):
                old = T[i, j]
                for k in range(2):
                    sg = 1.0 if k == 0 else -1.0
                    T[i, j] = old + sg * step[i]
                    v = _trip_defect_or_inf(kind, params, c, T[i], lo, hi, d_floor)
                    if v < bestv:
                        bestv = v
                        bestj = j
                        bestsg = sg
                T[i, j] = old
            if bestv < f[i]:
                T[i, bestj] += bestsg * step[i]
                f[i] = bestv
            else:
                step[i] *= 0.5
                if step[i] < step_min:
                    active[i] = False
    return evals


# ---------------------------------------------------------------------------
# Boundary path infimum
# ---------------------------------------------------------------------------

@njit(cache=True)
def _bent_circle(x, y, t):
    cz = math.cos(t)
    sz = math.sin(t)
    a = math.sqrt((x[0] - cz) ** 2 + (x[1] - sz) ** 2)
    b = math.sqrt((y[0] - cz) ** 2 + (y[1] - sz) ** 2)
    return a + b


@njit(cache=True)
def _golden_circle(x, y, a, b, iters):
    best = min(_bent_circle(x, y, a), _bent_circle(x, y, b))
    for _ in range(iters):
        w = b - a
        x1 = b - _INVPHI * w
        x2 = a + _INVPHI * w
        f1 = _bent_circle(x, y, x1)
        f2 = _bent_circle(x, y, x2)
        if f1 < best:
            best = f1
        if f2 < best:
            best = f2
        if f1 < f2:
            b = x2
        else:
            a = x1
    mid = _bent_circle(x, y, 0.5 * (a + b))
    return min(best, mid)


@njit(cache=True)
def _path_ball_2d(X, Y, n_grid, refine):
    N = X.shape[0]
    out = np.empty(N)
    th = np.linspace(0.0, 2.0 * np.pi, n_grid + 1)[:n_grid]
    g = np.empty(n_grid)
    h = 2.0 * np.pi / n_grid
    for i in range(N):
        for k in range(n_grid):
            g[k] = _bent_circle(X[i], Y[i], th[k])
        best = np.inf
        for k in range(n_grid):
            if g[k] < best:
                best = g[k]
        used = np.zeros(n_grid, dtype=np.bool_)
        for _rep in range(refine):
            pick = -1
            pickv = np.inf
            for k in range(n_grid):
                if used[k]:
                    continue
                prev = g[(k - 1) % n_grid]
                nxt = g[(k + 1) % n_grid]
                if g[k] <= prev and g[k] <= nxt and g[k] < pickv:
                    pickv = g[k]
                    pick = k
            if pick < 0:
                break
            used[pick] = True
            v = _golden_circle(X[i], Y[i], th[pick] - h, th[pick] + h, 60)
            if v < best:
                best = v
        out[i] = best
    return out


@njit(cache=True)
def _bent_sphere(x, y, t, p):
    sp = math.sin(p)
    zx = sp * math.cos(t)
    zy = sp * math.sin(t)
    zz = math.cos(p)
    a = math.sqrt((x[0] - zx) ** 2 + (x[1] - zy) ** 2 + (x[2] - zz) ** 2)
    b = math.sqrt((y[0] - zx) ** 2 + (y[1] - zy) ** 2 + (y[2] - zz) ** 2)
    return a + b


@njit(cache=True)
def _pattern_sphere(x, y, t, p, s1, s2, iters):
    f = _bent_sphere(x, y, t, p)
    for _ in range(iters):
        bestv = np.inf
        bestm = -1
        for m in range(4):
            if m == 0:
                v = _bent_sphere(x, y, t + s1, p)
            elif m == 1:
                v = _bent_sphere(x, y, t - s1, p)
            elif m == 2:
                v = _bent_sphere(x, y, t, p + s2)
            else:
                v = _bent_sphere(x, y, t, p - s2)
            if v < bestv:
                bestv = v
                bestm = m
        if bestv < f:
            f = bestv
            if bestm == 0:
                t += s1
            elif bestm == 1:
                t -= s1
            elif bestm == 2:
                p += s2
            else:
                p -= s2
        else:
            s1 *= 0.5
            s2 *= 0.5
    return f


@njit(cache=True)
def _path_ball_3d(X, Y, n_th, n_ph, refine):
    N = X.shape[0]
    out = np.empty(N)
    th = np.linspace(0.0, 2.0 * np.pi, n_th + 1)[:n_th]
    ph = np.empty(n_ph)
    for k in range(n_ph):
        ph[k] = (k + 0.5) * (np.pi / n_ph)
    g = np.empty((n_th, n_ph))
    for i in range(N):
        best = np.inf
        for a in range(n_th):
            for b in range(n_ph):
                g[a, b] = _bent_sphere(X[i], Y[i], th[a], ph[b])
                if g[a, b] < best:
                    best = g[a, b]
        used = np.zeros((n_th, n_ph), dtype=np.bool_)
        for _rep in range(refine):
            pa = -1
            pb = -1
            pickv = np.inf
            for a in range(n_th):
                for b in range(n_ph):
                    if used[a, b]:
                        continue
                    v = g[a, b]
                    if v > g[(a - 1) % n_th, b] or v > g[(a + 1) % n_th, b]:
                        continue
                    if b > 0 and v > g[a, b - 1]:
                        continue
                    if b < n_ph - 1 and v > g[a, b + 1]:
                        continue
                    if v < pickv:
                        pickv = v
                        pa = a
                        pb = b
            if pa < 0:
                break
            used[pa, pb] = True
            v = _pattern_sphere(X[i], Y[i], th[pa], ph[pb],
                                2.0 * np.pi / n_th, np.pi / n_ph, 120)
            if v < best:
                best = v
        out[i] = best
    return out


@njit(cache=True)
def _bent_at(x, y, z):
    n = x.shape[0]
    a = 0.0
    b = 0.0
    for i in range(n):
        a += (x[i] - z[i]) ** 2
        b += (y[i] - z[i]) ** 2
    return math.sqrt(a) + math.sqrt(b)


@njit(cache=True)
def _bent_seg(x, y, u, v, t):
    n = x.shape[0]
    a = 0.0
    b = 0.0
    for i in range(n):
        z = u[i] + t * (v[i] - u[i])
        a += (x[i] - z) ** 2
        b += (y[i] - z) ** 2
    return math.sqrt(a) + math.sqrt(b)


@njit(cache=True)
def _path_segment(X, Y, u, v):
    N = X.shape[0]
    out = np.empty(N)
    for i in range(N):
        a = 0.0
        b = 1.0
        best = min(_bent_seg(X[i], Y[i], u, v, a), _bent_seg(X[i], Y[i], u, v, b))
        for _ in range(80):
            w = b - a
            x1 = b - _INVPHI * w
            x2 = a + _INVPHI * w
            f1 = _bent_seg(X[i], Y[i], u, v, x1)
            f2 = _bent_seg(X[i], Y[i], u, v, x2)
            if f1 < best:
                best = f1
            if f2 < best:
                best = f2
            if f1 < f2:
                b = x2
            else:
                a = x1
        mid = _bent_seg(X[i], Y[i], u, v, 0.5 * (a + b))
        out[i] = min(best, mid)
    return out


@njit(cache=True)
def _bent_edge_2d(x, y, axis, other, fixed, lo_o, hi_o, t):
    z0 = 0.0
    z1 = 0.0
    zo = lo_o + t * (hi_o - lo_o)
    if axis == 0:
        z0 = fixed
        z1 = zo
    else:
        z0 = zo
        z1 = fixed
    a = math.sqrt((x[0] - z0) ** 2 + (x[1] - z1) ** 2)
    b = math.sqrt((y[0] - z0) ** 2 + (y[1] - z1) ** 2)
    return a + b


@njit(cache=True)
def _path_box_2d(X, Y, lo, hi):
    N = X.shape[0]
    out = np.empty(N)
    for i in range(N):
        best = np.inf
        for axis in range(2):
            other = 1 - axis
            for side in range(2):
                fixed = lo[axis] if side == 0 else hi[axis]
                a = 0.0
                b = 1.0
                v0 = _bent_edge_2d(X[i], Y[i], axis, other, fixed, lo[other], hi[other], a)
                v1 = _bent_edge_2d(X[i], Y[i], axis, other, fixed, lo[other], hi[other], b)
                loc = min(v0, v1)
                for _ in range(80):
                    w = b - a
                    x1 = b - _INVPHI * w
                    x2 = a + _INVPHI * w
                    f1 = _bent_edge_2d(X[i], Y[i], axis, other, fixed, lo[other], hi[other], x1)
                    f2 = _bent_edge_2d(X[i], Y[i], axis, other, fixed, lo[other], hi[other], x2)
                    if f1 < loc:
                        loc = f1
                    if f2 < loc:
                        loc = f2
                    if f1 < f2:
                        b = x2
                    else:
                        a = x1
                mid = _bent_edge_2d(X[i], Y[i], axis, other, fixed, lo[other], hi[other], 0.5 * (a + b))
                loc = min(loc, mid)
                if loc < best:
                    best = loc
        out[i] = best
    return out


@njit(cache=True)
def _bent_face_3d(x, y, axis, o0, o1, fixed, lo, hi, t, p):
    z = np.empty(3)
    z[axis] = fixed
    tc = t
    if tc < lo[o0]:
        tc = lo[o0]
    elif tc > hi[o0]:
        tc = hi[o0]
    pc = p
    if pc < lo[o1]:
        pc = lo[o1]
    elif pc > hi[o1]:
        pc = hi[o1]
    z[o0] = tc
    z[o1] = pc
    return _bent_at(x, y, z)


@njit(cache=True)
def _path_box_3d(X, Y, lo, hi):
    N = X.shape[0]
    out = np.empty(N)
    for i in range(N):
        best = np.inf
        for axis in range(3):
            o0 = 1 if axis == 0 else 0
            o1 = 1 if axis == 2 else 2
            for side in range(2):
                fixed = lo[axis] if side == 0 else hi[axis]
                t = 0.5 * (lo[o0] + hi[o0])
                p = 0.5 * (lo[o1] + hi[o1])
                s1 = 0.5 * (hi[o0] - lo[o0])
                s2 = 0.5 * (hi[o1] - lo[o1])
                f = _bent_face_3d(X[i], Y[i], axis, o0, o1, fixed, lo, hi, t, p)
                for _ in range(140):
                    bestv = np.inf
                    bestm = -1
                    for m in range(4):
                        if m == 0:
                            v = _bent_face_3d(X[i], Y[i], axis, o0, o1, fixed, lo, hi, t + s1, p)
                        elif m == 1:
                            v = _bent_face_3d(X[i], Y[i], axis, o0, o1, fixed, lo, hi, t - s1, p)
                        elif m == 2:
                            v = _bent_face_3d(X[i], Y[i], axis, o0, o1, fixed, lo, hi, t, p + s2)
                        else:
                            v = _bent_face_3d(X[i], Y[i], axis, o0, o1, fixed, lo, hi, t, p - s2)
                        if v < bestv:
                            bestv = v
                            bestm = m
                    if bestv < f:
                        f = bestv
                        if bestm == 0:
                            t += s1
                        elif bestm == 1:
                            t -= s1
                        elif bestm == 2:
                            p += s2
                        else:
                            p -= s2
                    else:
                        s1 *= 0.5
                        s2 *= 0.5
                if f < best:
                    best = f
        out[i] = best
    return out


def boundary_path_min(kind, params, X, Y):
    """inf over boundary z of |x-z| + |z-y| for kinds without a closed form."""
    n = X.shape[1]
    if kind == UNITBALL:
        if n == 2:
            return _path_ball_2d(X, Y, 64, 4)
        return _path_ball_3d(X, Y, 32, 16, 4)
    if kind == SEGMENT_COMPLEMENT:
        return _path_segment(X, Y, params[:n].copy(), params[n:2 * n].copy())
    if kind == BOX:
        lo, hi = params[:n].copy(), params[n:2 * n].copy()
        if n == 2:
            return _path_box_2d(X, Y, lo, hi)
        return _path_box_3d(X, Y, lo, hi)
    raise ValueError("boundary_path_min: kind has a closed form")


# ---------------------------------------------------------------------------
# First crossing of h = r along rays
# ---------------------------------------------------------------------------

@njit(cache=True)
def _exit_distance_one(kind, params, x, u):
    n = x.shape[0]
    if kind == HALFSPACE:
        if u[n - 1] < 0.0:
            return x[n - 1] / -u[n - 1]
        return np.inf
    if kind == UNITBALL:
        b = 0.0
        xx = 0.0
        for i in range(n):
            b += u[i] * x[i]
            xx += x[i] * x[i]
        disc = b * b + 1.0 - xx
        if disc < 0.0:
            disc = 0.0
        return -b + math.sqrt(disc)
    if kind == BOX:
        out = np.inf
        for i in range(n):
            if u[i] > 0.0:
                s = (params[n + i] - x[i]) / u[i]
            elif u[i] < 0.0:
                s = (params[i] - x[i]) / u[i]
            else:
                continue
            if s < out:
                out = s
        return out
    return np.inf


@njit(cache=True)
def _h_along(kind, params, c, x, u, dx, scale, finite, tau, y):
    if finite:
        s = scale * tau
    else:
        s = scale * tau / (1.0 - tau)
    for i in range(x.shape[0]):
        y[i] = x[i] + s * u[i]
    d = _dist(kind, params, y)
    if d <= 0.0:
        return np.inf, s
    return math.log1p(c * s / (math.sqrt(dx) * math.sqrt(d))), s


@njit(cache=True)
def ray_h_crossing(kind, params, c, x, dirs, r, coarse, iters, dense):
    M = dirs.shape[0]
    dx = _dist(kind, params, x)
    s_out = np.empty(M)
    ncross = np.zeros(M, dtype=np.int64)
    y = np.empty(x.shape[0])
    for m in range(M):
        u = dirs[m]
        S = _exit_distance_one(kind, params, x, u)
        finite = np.isfinite(S)
        scale = S if finite else dx
        lo_t = 0.0
        hi_t = np.nan
        found = False
        prev = 0.0
        for i in range(1, coarse + 1):
            tau = i / (coarse + 1.0)
            h, _ = _h_along(kind, params, c, x, u, dx, scale, finite, tau, y)
            if h >= r:
                lo_t = prev
                hi_t = tau
                found = True
                break
            prev = tau
        if not found:
            s_out[m] = np.nan
        else:
            lo_b = lo_t
            hi_b = hi_t
            for _ in range(iters):
                mid = 0.5 * (lo_b + hi_b)
                h, _ = _h_along(kind, params, c, x, u, dx, scale, finite, mid, y)
                if h >= r:
                    hi_b = mid
                else:
                    lo_b = mid
            _, s = _h_along(kind, params, c, x, u, dx, scale, finite, hi_b, y)
            s_out[m] = s
        below = True
        for i in range(1, dense + 1):
            tau = i / (dense + 1.0)
            h, _ = _h_along(kind, params, c, x, u, dx, scale, finite, tau, y)
            now_below = h < r
            if now_below != below:
                ncross[m] += 1
            below = now_below
    return s_out, ncross
