"""Pure-numpy kernels: vectorized fallback for the numba implementations.

Both kernel modules expose the same functions with identical semantics and
decision logic (candidate ordering, tie-breaking, budget accounting), so the
backends differ only in floating-point evaluation order at the ulp level.
Domain encoding: an integer kind plus a flat float64 parameter vector, see
domains.Domain.
"""

import numpy as np

HALFSPACE, UNITBALL, PUNCTURED, TWICE_PUNCTURED, SEGMENT_COMPLEMENT, BOX = range(6)

_INVPHI = 0.6180339887498949  # (sqrt(5)-1)/2


def dist_batch(kind, params, X):
    """Distance to the domain boundary for each row of X (negative outside
    for halfspace/ball/box; zero exactly on excluded sets)."""
    if kind == HALFSPACE:
        return X[:, -1].copy()
    if kind == UNITBALL:
        return 1.0 - np.sqrt(np.sum(X * X, axis=1))
    n = X.shape[1]
    if kind == PUNCTURED:
        p = params[:n]
        return np.sqrt(np.sum((X - p) ** 2, axis=1))
    if kind == TWICE_PUNCTURED:
        u, v = params[:n], params[n:2 * n]
        du = np.sqrt(np.sum((X - u) ** 2, axis=1))
        dv = np.sqrt(np.sum((X - v) ** 2, axis=1))
        return np.minimum(du, dv)
    if kind == SEGMENT_COMPLEMENT:
        u, v = params[:n], params[n:2 * n]
        w = v - u
        t = np.clip((X - u) @ w / np.dot(w, w), 0.0, 1.0)
        return np.sqrt(np.sum((X - (u + t[:, None] * w)) ** 2, axis=1))
    if kind == BOX:
        lo, hi = params[:n], params[n:2 * n]
        return np.minimum((X - lo).min(axis=1), (hi - X).min(axis=1))
    raise ValueError("unknown domain kind")


def dist_point(kind, params, x):
    return float(dist_batch(kind, params, x[None, :])[0])


def pair_stats(kind, params, X, Y):
    """(|x-y|, d(x), d(y)) for paired rows of X and Y."""
    r = np.sqrt(np.sum((X - Y) ** 2, axis=1))
    return r, dist_batch(kind, params, X), dist_batch(kind, params, Y)


def h_batch(kind, params, c, X, Y):
    r, dx, dy = pair_stats(kind, params, X, Y)
    out = np.full(r.shape[0], np.inf)
    ok = (dx > 0.0) & (dy > 0.0)
    # sqrt(dx)*sqrt(dy) avoids underflow of the product for tiny distances
    out[ok] = np.log1p(c * r[ok] / (np.sqrt(dx[ok]) * np.sqrt(dy[ok])))
    return out


def defect_batch(kind, params, c, X, Y, Z):
    """Triangle defect h(x,z) + h(z,y) - h(x,y) per row (nan when a leg
    degenerates to an infinite h; searches rank those last)."""
    with np.errstate(invalid="ignore"):
        return (h_batch(kind, params, c, X, Z)
                + h_batch(kind, params, c, Z, Y)
                - h_batch(kind, params, c, X, Y))


def _defect_or_inf(kind, params, c, flat, lo, hi, d_floor):
    """Defect of packed triples (rows of flat, length 3n); +inf when any of
    the three points leaves [lo, hi] or comes within d_floor of the boundary."""
    n = lo.shape[0]
    X, Y, Z = flat[:, :n], flat[:, n:2 * n], flat[:, 2 * n:]
    bad = np.zeros(flat.shape[0], dtype=bool)
    for P in (X, Y, Z):
        bad |= (P < lo).any(axis=1) | (P > hi).any(axis=1)
        bad |= dist_batch(kind, params, P) < d_floor
    out = np.full(flat.shape[0], np.inf)
    ok = ~bad
    if ok.any():
        out[ok] = defect_batch(kind, params, c, X[ok], Y[ok], Z[ok])
    return out


def polish_defect(kind, params, c, T, f, step, lo, hi, d_floor, step_min, max_evals):
    """Lockstep pattern search minimizing the triangle defect over triples.

    T (R, 3n), f (R,), step (R,) are updated in place; returns the number of
    defect evaluations spent. Each sweep tries +/- step along every coordinate,
    takes the best strictly-improving move per restart, and halves the step of
    restarts that failed to improve, retiring them below step_min.
    """
    R, D = T.shape
    active = step >= step_min
    evals = 0
    while True:
        idx = np.nonzero(active)[0]
        na = idx.size
        if na == 0:
            break
        cost = na * 2 * D
        if evals + cost > max_evals:
            break
        evals += cost
        Ta = T[idx]
        cand = np.repeat(Ta[None, :, :], 2 * D, axis=0)
        for j in range(D):
            cand[2 * j, :, j] += step[idx]
            cand[2 * j + 1, :, j] -= step[idx]
        fv = _defect_or_inf(kind, params, c, cand.reshape(2 * D * na, D),
                            lo, hi, d_floor).reshape(2 * D, na)
        m = np.argmin(fv, axis=0)
        best = fv[m, np.arange(na)]
        improved = best < f[idx]
        imp = np.nonzero(improved)[0]
        T[idx[imp]] = cand[m[imp], imp, :]
        f[idx[imp]] = best[imp]
        stuck = idx[~improved]
        step[stuck] *= 0.5
        active[stuck] = step[stuck] >= step_min
    return evals


# ---------------------------------------------------------------------------
# Boundary path infimum inf_z (|x-z| + |z-y|) for numerically-minimized kinds
# ---------------------------------------------------------------------------

def _bent_path(X, Y, Z):
    return (np.sqrt(np.sum((X - Z) ** 2, axis=-1))
            + np.sqrt(np.sum((Y - Z) ** 2, axis=-1)))


def _golden_vec(fn, a, b, iters):
    """Vectorized golden-ratio shrink of per-row brackets [a, b]; returns the
    best value seen (both probes and the final midpoint)."""
    best = np.minimum(fn(a), fn(b))
    for _ in range(iters):
        w = b - a
        x1 = b - _INVPHI * w
        x2 = a + _INVPHI * w
        f1 = fn(x1)
        f2 = fn(x2)
        best = np.minimum(best, np.minimum(f1, f2))
        left = f1 < f2
        b = np.where(left, x2, b)
        a = np.where(left, a, x1)
    return np.minimum(best, fn(0.5 * (a + b)))


def _path_ball_2d(X, Y, n_grid, refine):
    th = np.linspace(0.0, 2.0 * np.pi, n_grid, endpoint=False)
    Z = np.stack([np.cos(th), np.sin(th)], axis=1)
    g = _bent_path(X[:, None, :], Y[:, None, :], Z[None, :, :])
    best = g.min(axis=1)
    local = (g <= np.roll(g, 1, axis=1)) & (g <= np.roll(g, -1, axis=1))
    masked = np.where(local, g, np.inf)
    order = np.argsort(masked, axis=1, kind="stable")[:, :refine]
    h = 2.0 * np.pi / n_grid

    def on_circle(t):
        Zt = np.stack([np.cos(t), np.sin(t)], axis=1)
        return _bent_path(X, Y, Zt)

    for j in range(refine):
        t0 = th[order[:, j]]
        best = np.minimum(best, _golden_vec(on_circle, t0 - h, t0 + h, 60))
    return best


def _pattern2(fn, t1, t2, s1, s2, iters):
    """Vectorized 2-variable pattern search with halving steps."""
    f = fn(t1, t2)
    for _ in range(iters):
        cands = (
            (t1 + s1, t2), (t1 - s1, t2), (t1, t2 + s2), (t1, t2 - s2),
        )
        vals = [fn(a, b) for a, b in cands]
        V = np.stack(vals, axis=0)
        m = np.argmin(V, axis=0)
        bestv = V[m, np.arange(t1.shape[0])]
        improved = bestv < f
        a_new = np.stack([c[0] for c in cands], axis=0)[m, np.arange(t1.shape[0])]
        b_new = np.stack([c[1] for c in cands], axis=0)[m, np.arange(t1.shape[0])]
        t1 = np.where(improved, a_new, t1)
        t2 = np.where(improved, b_new, t2)
        f = np.where(improved, bestv, f)
        s1 = np.where(improved, s1, 0.5 * s1)
        s2 = np.where(improved, s2, 0.5 * s2)
    return f


def _path_ball_3d(X, Y, n_th, n_ph, refine):
    th = np.linspace(0.0, 2.0 * np.pi, n_th, endpoint=False)
    ph = (np.arange(n_ph) + 0.5) * (np.pi / n_ph)
    TH, PH = np.meshgrid(th, ph, indexing="ij")
    Z = np.stack([np.sin(PH) * np.cos(TH), np.sin(PH) * np.sin(TH),
                  np.cos(PH)], axis=-1).reshape(-1, 3)
    g = _bent_path(X[:, None, :], Y[:, None, :], Z[None, :, :])
    best = g.min(axis=1)
    G = g.reshape(-1, n_th, n_ph)
    local = ((G <= np.roll(G, 1, axis=1)) & (G <= np.roll(G, -1, axis=1)))
    up = np.ones_like(G, dtype=bool)
    up[:, :, 1:] = G[:, :, 1:] <= G[:, :, :-1]
    dn = np.ones_like(G, dtype=bool)
    dn[:, :, :-1] = G[:, :, :-1] <= G[:, :, 1:]
    local &= up & dn
    masked = np.where(local.reshape(-1, n_th * n_ph), g, np.inf)
    order = np.argsort(masked, axis=1, kind="stable")[:, :refine]

    def on_sphere(t, p):
        Zt = np.stack([np.sin(p) * np.cos(t), np.sin(p) * np.sin(t),
                       np.cos(p)], axis=1)
        return _bent_path(X, Y, Zt)

    for j in range(refine):
        it = order[:, j] // n_ph
        ip = order[:, j] % n_ph
        s1 = np.full(X.shape[0], 2.0 * np.pi / n_th)
        s2 = np.full(X.shape[0], np.pi / n_ph)
        best = np.minimum(best, _pattern2(on_sphere, th[it], ph[ip], s1, s2, 120))
    return best


def _path_segment(X, Y, u, v):
    w = v - u

    def on_seg(t):
        return _bent_path(X, Y, u + t[:, None] * w)

    a = np.zeros(X.shape[0])
    b = np.ones(X.shape[0])
    return _golden_vec(on_seg, a, b, 80)


def _path_box_2d(X, Y, lo, hi):
    best = np.full(X.shape[0], np.inf)
    for axis in range(2):
        other = 1 - axis
        for side in range(2):
            fixed = lo[axis] if side == 0 else hi[axis]

            def on_edge(t, axis=axis, other=other, fixed=fixed):
                Z = np.empty((t.shape[0], 2))
                Z[:, axis] = fixed
                Z[:, other] = lo[other] + t * (hi[other] - lo[other])
                return _bent_path(X, Y, Z)

            a = np.zeros(X.shape[0])
            b = np.ones(X.shape[0])
            best = np.minimum(best, _golden_vec(on_edge, a, b, 80))
    return best


def _path_box_3d(X, Y, lo, hi):
    best = np.full(X.shape[0], np.inf)
    for axis in range(3):
        oth = [i for i in range(3) if i != axis]
        for side in range(2):
            fixed = lo[axis] if side == 0 else hi[axis]

            def on_face(t, p, axis=axis, oth=oth, fixed=fixed):
                Z = np.empty((t.shape[0], 3))
                Z[:, axis] = fixed
                Z[:, oth[0]] = np.clip(t, lo[oth[0]], hi[oth[0]])
                Z[:, oth[1]] = np.clip(p, lo[oth[1]], hi[oth[1]])
                return _bent_path(X, Y, Z)

            t0 = np.full(X.shape[0], 0.5 * (lo[oth[0]] + hi[oth[0]]))
            p0 = np.full(X.shape[0], 0.5 * (lo[oth[1]] + hi[oth[1]]))
            s1 = np.full(X.shape[0], 0.5 * (hi[oth[0]] - lo[oth[0]]))
            s2 = np.full(X.shape[0], 0.5 * (hi[oth[1]] - lo[oth[1]]))
            best = np.minimum(best, _pattern2(on_face, t0, p0, s1, s2, 140))
    return best


def boundary_path_min(kind, params, X, Y):
    """inf over boundary z of |x-z| + |z-y| for kinds without a closed form
    (unit ball, segment complement, box); 2D and 3D only."""
    n = X.shape[1]
    if kind == UNITBALL:
        if n == 2:
            return _path_ball_2d(X, Y, 64, 4)
        return _path_ball_3d(X, Y, 32, 16, 4)
    if kind == SEGMENT_COMPLEMENT:
        return _path_segment(X, Y, params[:n], params[n:2 * n])
    if kind == BOX:
        lo, hi = params[:n], params[n:2 * n]
        if n == 2:
            return _path_box_2d(X, Y, lo, hi)
        return _path_box_3d(X, Y, lo, hi)
    raise ValueError("boundary_path_min: kind has a closed form")


# ---------------------------------------------------------------------------
# First crossing of h = r along rays (metric-sphere sampling)
# ---------------------------------------------------------------------------

def _exit_distance(kind, params, x, dirs):
    """Distance along each unit ray at which the domain is exited, +inf when
    the ray stays inside (complement-type domains, or rays into halfspace)."""
    M, n = dirs.shape
    if kind == HALFSPACE:
        out = np.full(M, np.inf)
        down = dirs[:, -1] < 0.0
        out[down] = x[-1] / -dirs[down, -1]
        return out
    if kind == UNITBALL:
        b = dirs @ x
        disc = b * b + 1.0 - float(np.dot(x, x))
        return -b + np.sqrt(np.maximum(disc, 0.0))
    if kind == BOX:
        lo, hi = params[:n], params[n:2 * n]
        out = np.full(M, np.inf)
        for i in range(n):
            pos = dirs[:, i] > 0.0
            neg = dirs[:, i] < 0.0
            si = np.full(M, np.inf)
            si[pos] = (hi[i] - x[i]) / dirs[pos, i]
            si[neg] = (lo[i] - x[i]) / dirs[neg, i]
            out = np.minimum(out, si)
        return out
    return np.full(M, np.inf)


def ray_h_crossing(kind, params, c, x, dirs, r, coarse, iters, dense):
    """First s > 0 with h(x, x + s*dir) = r per unit direction, by coarse
    bracketing of the first crossing then bisection. Also counts crossings
    seen by a dense scan (flags non-monotone rays). Returns (s, ncross)."""
    M = dirs.shape[0]
    dx = dist_point(kind, params, x)
    S = _exit_distance(kind, params, x, dirs)
    finite = np.isfinite(S)
    scale = np.where(finite, S, dx)

    def h_of(tau):
        s = np.where(finite, scale * tau, scale * tau / (1.0 - tau))
        Y = x[None, :] + s[:, None] * dirs
        d = dist_batch(kind, params, Y)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.log1p(c * s / (np.sqrt(dx) * np.sqrt(d)))
        return np.where(d > 0.0, val, np.inf), s

    lo_t = np.zeros(M)
    hi_t = np.full(M, np.nan)
    found = np.zeros(M, dtype=bool)
    prev = 0.0
    for i in range(1, coarse + 1):
        tau = i / (coarse + 1.0)
        h, _ = h_of(np.full(M, tau))
        newly = ~found & (h >= r)
        lo_t[newly] = prev
        hi_t[newly] = tau
        found |= newly
        prev = tau
        if found.all():
            break

    lo_b = np.where(found, lo_t, 0.0)
    hi_b = np.where(found, hi_t, 0.5)
    for _ in range(iters):
        mid = 0.5 * (lo_b + hi_b)
        h, _ = h_of(mid)
        high = h >= r
        hi_b = np.where(high, mid, hi_b)
        lo_b = np.where(high, lo_b, mid)
    _, s_out = h_of(hi_b)
    s_out = np.where(found, s_out, np.nan)

    ncross = np.zeros(M, dtype=np.int64)
    below = np.ones(M, dtype=bool)
    for i in range(1, dense + 1):
        tau = i / (dense + 1.0)
        h, _ = h_of(np.full(M, tau))
        now_below = h < r
        ncross += (now_below != below).astype(np.int64)
        below = now_below
    return s_out, ncross
