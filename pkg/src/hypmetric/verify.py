"""Numerical verification engine: triangle-defect search, critical-constant
bisection, proof-derived counterexample families, and sharp-constant sweeps.

A negative triangle defect h(x,z) + h(z,y) - h(x,y) certifies failure of the
triangle inequality. Two point families drive the searches: points collapsing
onto a nearest boundary point (defect tending to log c), and points collapsing
onto a pair of boundary points with an inscribed ball between them (defect
tending to log(c/2)). Random multistart search plus derivative-free polish
supplies the evidence that no violation exists above the critical constant.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import backend
from .domains import (BOX, HALFSPACE, PUNCTURED, SEGMENT_COMPLEMENT,
                      TWICE_PUNCTURED, UNITBALL, Domain, as_point,
                      default_box, dist_to_boundary, dist_to_boundary_batch,
                      nearest_boundary_point, path_infimum_batch,
                      sample_interior_batch)
from .errors import SearchError
from .metrics import conformal_self_maps_half_space

#: slack applied to every theoretical bound before counting a violation
BOUND_SLACK = 1e-12

LEMMA_IDS = ("L4.1", "C4.2", "L4.3", "L4.5", "L4.6", "C4.7", "C4.7-convex",
             "L4.8", "R4.4")


# ---------------------------------------------------------------------------
# Defect records and counterexample families
# ---------------------------------------------------------------------------

@dataclass
class DefectRecord:
    """A triple with its triangle defect under h; negative defect certifies
    failure of the triangle inequality. poly_residual is the equivalent
    polynomial form whose sign matches the defect's."""

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    c: float
    defect: float
    poly_residual: float
    k: float | None = None

    def to_json(self):
        return {
            "x": self.x, "y": self.y, "z": self.z,
            "c": self.c, "defect": self.defect,
            "poly_residual": self.poly_residual, "k": self.k,
        }


def _defect_scalar(domain, c, x, y, z):
    kern = backend.kernels()
    return float(kern.defect_batch(domain.kind, domain.params, c,
                                   x[None, :], y[None, :], z[None, :])[0])


def _poly_residual(domain, c, x, y, z):
    dx = dist_to_boundary(domain, x)
    dy = dist_to_boundary(domain, y)
    dz = dist_to_boundary(domain, z)
    xz = np.linalg.norm(x - z)
    zy = np.linalg.norm(z - y)
    xy = np.linalg.norm(x - y)
    return float(xz * math.sqrt(dz * dy) + zy * math.sqrt(dx * dz)
                 + c * xz * zy - xy * dz)


def triangle_defect(domain, c, x, y, z, k=None):
    """Defect h(x,z) + h(z,y) - h(x,y) with the polynomial cross-check."""
    if not c > 0.0:
        raise ValueError(f"constant c must be positive, got {c}")
    x = as_point(x, domain.dim)
    y = as_point(y, domain.dim)
    z = as_point(z, domain.dim)
    for p in (x, y, z):
        dist_to_boundary(domain, p)
    return DefectRecord(x, y, z, float(c), _defect_scalar(domain, c, x, y, z),
                        _poly_residual(domain, c, x, y, z), k)


def family_triple_boundary_collapse(domain, x, k):
    """z and y marching from x onto its nearest boundary point q.

    Built as z = q - k(q-x), y = q - k^2(q-x) (identical to
    x + (1-k)(q-x) and x + (1-k^2)(q-x) but exact for k below float
    resolution of 1-k)."""
    x = as_point(x, domain.dim)
    q = nearest_boundary_point(domain, x)
    z = q - k * (q - x)
    y = q - (k * k) * (q - x)
    return x, y, z


def family_defect_boundary_collapse(domain, x, c, k):
    """Defect of the boundary-collapse family; tends to log(c) as k -> 0+."""
    if not 0.0 < k < 1.0:
        raise ValueError(f"family parameter k must lie in (0, 1), got {k}")
    x, y, z = family_triple_boundary_collapse(domain, x, k)
    return triangle_defect(domain, c, x, y, z, k=float(k))


def family_triple_inscribed(u, v, k):
    """x, y marching from boundary points u, v toward each other, with the
    midpoint as the third point: x = u + k(v-u), y = v + k(u-v), z = (u+v)/2."""
    u = as_point(u)
    v = as_point(v, u.shape[0])
    x = u + k * (v - u)
    y = v + k * (u - v)
    z = 0.5 * (u + v)
    return x, y, z


def family_defect_inscribed(domain, u, v, c, k):
    """Defect of the inscribed-ball family; tends to log(c/2) as k -> 0+.
    Requires u, v on the boundary with the ball between them inside."""
    if not 0.0 < k < 0.5:
        raise ValueError(f"family parameter k must lie in (0, 1/2), got {k}")
    u = as_point(u, domain.dim)
    v = as_point(v, domain.dim)
    kern = backend.kernels()
    for p in (u, v):
        if abs(kern.dist_point(domain.kind, domain.params, p)) > 1e-12:
            raise ValueError(f"point {p.tolist()} is not on the boundary of "
                             f"{domain.literal()}")
    x, y, z = family_triple_inscribed(u, v, k)
    return triangle_defect(domain, c, x, y, z, k=float(k))


def inscribed_boundary_pair(domain):
    """Canonical boundary pair (u, v) with B((u+v)/2, |u-v|/2) inside the
    domain, or None when no such pair exists (halfspace, once-punctured,
    segment complement)."""
    n = domain.dim
    if domain.kind == UNITBALL:
        u = np.zeros(n)
        u[0] = -1.0
        return u, -u
    if domain.kind == TWICE_PUNCTURED:
        return domain.params[:n].copy(), domain.params[n:].copy()
    if domain.kind == BOX:
        lo, hi = domain.params[:n], domain.params[n:]
        axis = int(np.argmin(hi - lo))
        u = 0.5 * (lo + hi)
        v = u.copy()
        u[axis] = lo[axis]
        v[axis] = hi[axis]
        return u, v
    return None


def anchor_point(domain):
    """A canonical interior point used as a deterministic search/probe base."""
    n = domain.dim
    if domain.kind == HALFSPACE:
        x = np.zeros(n)
        x[-1] = 1.0
        return x
    if domain.kind == UNITBALL:
        x = np.zeros(n)
        x[0] = 0.3
        return x
    if domain.kind == PUNCTURED:
        x = domain.params.copy()
        x[0] += 1.0
        return x
    if domain.kind == TWICE_PUNCTURED:
        return 0.5 * (domain.params[:n] + domain.params[n:])
    if domain.kind == SEGMENT_COMPLEMENT:
        u, v = domain.params[:n], domain.params[n:]
        w = v - u
        return 0.5 * (u + v) + 0.5 * np.linalg.norm(w) * _unit_perp(w)
    lo, hi = domain.params[:n], domain.params[n:]
    return 0.5 * (lo + hi)


def _unit_perp(w):
    """First coordinate direction not parallel to w, orthogonalized."""
    n = w.shape[0]
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        p = e - np.dot(e, w) / np.dot(w, w) * w
        nrm = np.linalg.norm(p)
        if nrm > 1e-9:
            return p / nrm
    raise ValueError("degenerate segment direction")


# ---------------------------------------------------------------------------
# Multistart defect search
# ---------------------------------------------------------------------------

@dataclass
class SearchConfig:
    restarts: int = 64
    budget: int = 60000
    box: tuple | None = None
    seed: int = 0
    polish_top: int = 8
    k_grid: tuple = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7)
    n_bases: int = 4
    step0: float = 0.25
    step_min: float = 1e-7
    d_floor: float = 1e-9


def _search_candidates(domain, cfg, rng):
    """Seed triples: boundary-collapse families from anchor + random bases,
    the inscribed-ball family where applicable, and random triples."""
    n = domain.dim
    bases = [anchor_point(domain)]
    if cfg.n_bases > 0:
        bases.extend(sample_interior_batch(domain, rng, cfg.n_bases, cfg.box))
    triples = []
    for x in bases:
        for k in cfg.k_grid:
            triples.append(family_triple_boundary_collapse(domain, x, k))
    pair = inscribed_boundary_pair(domain)
    if pair is not None:
        for k in cfg.k_grid:
            triples.append(family_triple_inscribed(pair[0], pair[1], k))
    pts = sample_interior_batch(domain, rng, 3 * cfg.restarts, cfg.box)
    for i in range(cfg.restarts):
        triples.append((pts[3 * i], pts[3 * i + 1], pts[3 * i + 2]))
    X = np.ascontiguousarray([t[0] for t in triples], dtype=float)
    Y = np.ascontiguousarray([t[1] for t in triples], dtype=float)
    Z = np.ascontiguousarray([t[2] for t in triples], dtype=float)
    return X, Y, Z


def _min_defect_search_counted(domain, c, cfg):
    kern = backend.kernels()
    rng = np.random.default_rng(cfg.seed)
    X, Y, Z = _search_candidates(domain, cfg, rng)
    f = kern.defect_batch(domain.kind, domain.params, c, X, Y, Z)
    evals = f.shape[0]

    lo, hi = (cfg.box if cfg.box is not None else default_box(domain))
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    order = np.argsort(f, kind="stable")
    dmins = np.minimum(np.minimum(dist_to_boundary_batch(domain, X),
                                  dist_to_boundary_batch(domain, Y)),
                       dist_to_boundary_batch(domain, Z))
    inside = (np.all(X >= lo, axis=1) & np.all(X <= hi, axis=1)
              & np.all(Y >= lo, axis=1) & np.all(Y <= hi, axis=1)
              & np.all(Z >= lo, axis=1) & np.all(Z <= hi, axis=1))
    polishable = order[(dmins[order] >= cfg.d_floor) & inside[order]][:cfg.polish_top]

    best_idx = int(order[0])
    best_f = float(f[best_idx])
    best_triple = (X[best_idx].copy(), Y[best_idx].copy(), Z[best_idx].copy())

    if polishable.size and evals < cfg.budget:
        T = np.ascontiguousarray(
            np.concatenate([X[polishable], Y[polishable], Z[polishable]], axis=1))
        fp = f[polishable].copy()
        step = np.full(polishable.size, cfg.step0)
        evals += kern.polish_defect(domain.kind, domain.params, c, T, fp, step,
                                    lo, hi, cfg.d_floor, cfg.step_min,
                                    cfg.budget - evals)
        j = int(np.argmin(fp))
        if fp[j] < best_f:
            n = domain.dim
            best_f = float(fp[j])
            best_triple = (T[j, :n].copy(), T[j, n:2 * n].copy(), T[j, 2 * n:].copy())

    rec = triangle_defect(domain, c, *best_triple)
    evals += 1  # final re-evaluation of the winning triple
    return rec, evals


def min_defect_search(domain, c, cfg=None):
    """The most negative triangle defect found by family-seeded multistart
    derivative-free search; deterministic for a fixed (seed, budget)."""
    rec, _ = _min_defect_search_counted(domain, c, cfg or SearchConfig())
    return rec


# ---------------------------------------------------------------------------
# Critical constant by bisection
# ---------------------------------------------------------------------------

@dataclass
class CriticalCInterval:
    """Bracket for the empirical critical constant: some defect < -epsilon
    was found at lo, none at hi within the evaluation budget."""

    lo: float
    hi: float
    epsilon: float
    budget: int

    def to_json(self):
        return {"lo": self.lo, "hi": self.hi, "epsilon": self.epsilon,
                "budget": self.budget}


@dataclass
class CriticalCConfig:
    seed: int = 0
    budget: int = 1_000_000
    width: float = 1e-3
    epsilon: float = 1e-4
    c_lo: float = 0.25
    c_hi: float = 4.0
    search: SearchConfig = field(default_factory=SearchConfig)


def theory_window(domain):
    """(lo, hi, grade) for the expected critical constant; grade records
    whether the window is theorem-backed or numerical evidence only."""
    if domain.kind in (HALFSPACE, PUNCTURED):
        return 0.95, 1.05, "theorem"
    if domain.kind in (UNITBALL, TWICE_PUNCTURED, BOX):
        return 1.90, 2.10, "theorem"
    return 0.90, 1.10, "conjecture-evidence"


def critical_c(domain, cfg=None):
    """Bisect the smallest c at which no defect below -epsilon is found.

    The counterexample families are mandatory search seeds: the defect infimum
    is approached only as the family parameter k -> 0 (never attained), so
    pure random search misses it.
    """
    cfg = cfg or CriticalCConfig()
    if cfg.width < 1e-3:
        raise ValueError("bisection width must be >= 1e-3")
    steps = 2 + int(math.ceil(math.log2((cfg.c_hi - cfg.c_lo) / cfg.width)))
    per_call = cfg.budget // steps - 8  # headroom for the final re-evaluations
    used = 0
    call = 0

    def violated(c):
        nonlocal used, call
        scfg = SearchConfig(**{**cfg.search.__dict__,
                               "budget": per_call,
                               "seed": cfg.seed * 1000 + call})
        call += 1
        rec, ev = _min_defect_search_counted(domain, c, scfg)
        used += ev
        return rec.defect < -cfg.epsilon

    lo, hi = cfg.c_lo, cfg.c_hi
    if not violated(lo):
        raise SearchError(
            f"no defect below -{cfg.epsilon} found at c={lo}; bracket is "
            f"inconsistent for {domain.literal()}")
    if violated(hi):
        raise SearchError(
            f"defect below -{cfg.epsilon} found at c={hi}; bracket is "
            f"inconsistent for {domain.literal()}")
    while hi - lo > cfg.width:
        mid = 0.5 * (lo + hi)
        if violated(mid):
            lo = mid
        else:
            hi = mid
    return CriticalCInterval(lo, hi, cfg.epsilon, used)


# ---------------------------------------------------------------------------
# Quotient sweeps for the sharp inequalities
# ---------------------------------------------------------------------------

@dataclass
class BoundReport:
    """Empirical extremes of a metric quotient against theoretical constants.
    violations is empty iff the extremes lie within
    [theoretical_lo - 1e-12, theoretical_hi + 1e-12]."""

    lemma_id: str
    quotient: str
    sample_count: int
    empirical_min: float
    empirical_max: float
    theoretical_lo: float
    theoretical_hi: float
    violations: list
    extras: dict

    def to_json(self):
        return {
            "lemma_id": self.lemma_id, "quotient": self.quotient,
            "sample_count": self.sample_count,
            "empirical_min": self.empirical_min,
            "empirical_max": self.empirical_max,
            "theoretical_lo": self.theoretical_lo,
            "theoretical_hi": self.theoretical_hi,
            "violations": self.violations, "extras": self.extras,
        }


_SWEEP_SEP_LO = 1e-6
_SWEEP_SEP_HI = 1e3
_SWEEP_DMIN = 1e-120  # acceptance floor for d(y); keeps u^2 far from overflow


def sample_pair_sweep(domain, count, rng, equal_d=False):
    """Random interior pairs with log-uniform separation |x-y| in
    [1e-6, 1e3] d(x); equal_d=True instead mirrors x into a partner with the
    same boundary distance."""
    n = domain.dim
    X = np.empty((count, n))
    Y = np.empty((count, n))
    have = 0
    while have < count:
        m = max(2 * (count - have), 64)
        Xc = sample_interior_batch(domain, rng, m)
        if equal_d:
            Yc = mirror_partner(domain, Xc)
        else:
            dx = dist_to_boundary_batch(domain, Xc)
            dirs = rng.standard_normal((m, n))
            dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
            sep = np.exp(rng.uniform(np.log(_SWEEP_SEP_LO), np.log(_SWEEP_SEP_HI),
                                     size=m)) * dx
            Yc = Xc + sep[:, None] * dirs
        dy = dist_to_boundary_batch(domain, Yc)
        r = np.linalg.norm(Xc - Yc, axis=1)
        ok = (dy >= _SWEEP_DMIN) & (r > 0.0)
        Xg, Yg = Xc[ok], Yc[ok]
        take = min(count - have, Xg.shape[0])
        X[have:have + take] = Xg[:take]
        Y[have:have + take] = Yg[:take]
        have += take
    return X, Y


def mirror_partner(domain, X):
    """Partner points with equal boundary distance, via each domain's
    symmetry: reflection of the first coordinate (halfspace, about the
    center for ball/punctured/box) or across the perpendicular bisector of
    the defining segment/punctures."""
    n = domain.dim
    Y = X.copy()
    if domain.kind == HALFSPACE:
        Y[:, 0] = -Y[:, 0]
        return Y
    if domain.kind == UNITBALL:
        Y[:, 0] = -Y[:, 0]
        return Y
    if domain.kind == PUNCTURED:
        Y[:, 0] = 2.0 * domain.params[0] - Y[:, 0]
        return Y
    if domain.kind in (TWICE_PUNCTURED, SEGMENT_COMPLEMENT):
        u, v = domain.params[:n], domain.params[n:]
        mid = 0.5 * (u + v)
        w = (v - u) / np.linalg.norm(v - u)
        t = (X - mid) @ w
        return X - 2.0 * t[:, None] * w
    lo, hi = domain.params[:n], domain.params[n:]
    Y[:, 0] = lo[0] + hi[0] - X[:, 0]
    return Y


def _offplane_base(domain, pull):
    """A deterministic interior point off the mirror symmetry plane with
    d(base) scaled by `pull` toward its nearest boundary point."""
    n = domain.dim
    anchor = anchor_point(domain)
    if domain.kind == TWICE_PUNCTURED:
        u = domain.params[:n]
        anchor = anchor + 0.25 * (u - anchor)
    elif domain.kind == SEGMENT_COMPLEMENT:
        u, v = domain.params[:n], domain.params[n:]
        w = v - u
        anchor = anchor + 0.25 * w
    elif domain.kind == BOX:
        lo, hi = domain.params[:n], domain.params[n:]
        anchor = anchor.copy()
        anchor[0] += 0.25 * (hi[0] - lo[0]) * 0.9
    q = nearest_boundary_point(domain, anchor)
    return q - pull * (q - anchor)


def boundary_ray_probe_pairs(domain, k_grid=None, t_grid=None):
    """Deterministic pairs along the ray from the anchor to its nearest
    boundary point q, probing both quotient limits: y = q - k(q-x) drives
    u = |x-y|/sqrt(d(x)d(y)) -> infinity as k -> 0, while y = x + t(q-x)
    with small t probes u -> 0."""
    if k_grid is None:
        k_grid = [10.0 ** -e for e in (1, 2, 4, 8, 16, 30, 45, 60)]
    if t_grid is None:
        t_grid = [10.0 ** -e for e in (8, 6, 4, 2, 1)]
    xs, ys = [], []
    x = anchor_point(domain)
    q = nearest_boundary_point(domain, x)
    for k in k_grid:
        xs.append(x)
        ys.append(q - k * (q - x))
    for t in t_grid:
        xs.append(x)
        ys.append(x + t * (q - x))
    return np.asarray(xs), np.asarray(ys)


def equal_d_probe_pairs(domain, c):
    """Deterministic equal-boundary-distance pairs spanning separations from
    1e-8 d(x) up to the mirror separation, including |x-y| = 2c d(x) exactly
    (the point-pair quotient's maximizer u = c)."""
    xs, ys = [], []
    if domain.kind == HALFSPACE:
        n = domain.dim
        for height in (1.0, 1e-6):
            x = np.zeros(n)
            x[-1] = height
            for mult in (1e-8, 1e-4, 1.0, 2.0 * c, 1e3, 1e6):
                y = x.copy()
                y[0] = mult * height
                xs.append(x.copy())
                ys.append(y)
        return np.asarray(xs), np.asarray(ys)

    for pull in (0.5, 1e-3, 1e-6):
        x = _offplane_base(domain, pull)
        X1 = x[None, :]
        d = float(dist_to_boundary_batch(domain, X1)[0])
        y_full = mirror_partner(domain, X1)[0]
        sep_max = float(np.linalg.norm(y_full - x))
        if sep_max <= 0.0 or d <= 0.0:
            continue
        direction = (y_full - x) / sep_max
        for sep in (1e-8 * d, 1e-4 * d, 0.01 * d, d, 2.0 * c * d,
                    0.5 * sep_max, sep_max):
            if 0.0 < sep <= sep_max:
                xs.append(x)
                ys.append(x + sep * direction)
    return np.asarray(xs), np.asarray(ys)


def away_from_boundary_probe_pairs(domain, c):
    """Pairs with d(y) = d(x) + |x-y| exactly (receding from the nearest
    boundary point), including the j*-quotient maximizer separation
    |x-y| = 2c(c + sqrt(c^2+1)) d(x); the run length is capped by each
    domain's geometry."""
    u_star = 2.0 * c * (c + math.sqrt(c * c + 1.0))
    n = domain.dim
    if domain.kind == HALFSPACE:
        x0 = np.zeros(n)
        x0[-1] = 1.0
        away = np.zeros(n)
        away[-1] = 1.0
        dx = 1.0
    elif domain.kind == UNITBALL:
        dx = 0.95 / (1.0 + u_star)
        x0 = np.zeros(n)
        x0[0] = 1.0 - dx
        away = np.zeros(n)
        away[0] = -1.0
    elif domain.kind == PUNCTURED:
        x0 = domain.params.copy()
        x0[0] += 1.0
        away = np.zeros(n)
        away[0] = 1.0
        dx = 1.0
    elif domain.kind == TWICE_PUNCTURED:
        u, v = domain.params[:n], domain.params[n:]
        w = (v - u) / np.linalg.norm(v - u)
        dx = 0.5 * np.linalg.norm(v - u)
        x0 = u - dx * w
        away = -w
    elif domain.kind == SEGMENT_COMPLEMENT:
        u, v = domain.params[:n], domain.params[n:]
        perp = _unit_perp(v - u)
        dx = 0.5 * np.linalg.norm(v - u)
        x0 = 0.5 * (u + v) + dx * perp
        away = perp
    else:
        lo, hi = domain.params[:n], domain.params[n:]
        axis = int(np.argmin(hi - lo))
        half = 0.5 * (hi[axis] - lo[axis])
        dx = 0.95 * half / (1.0 + u_star)
        x0 = 0.5 * (lo + hi)
        x0[axis] = lo[axis] + dx
        away = np.zeros(n)
        away[axis] = 1.0
    xs, ys = [], []
    for v_sep in (dx, 0.5 * u_star * dx, u_star * dx):
        xs.append(x0)
        ys.append(x0 + v_sep * away)
    return np.asarray(xs), np.asarray(ys)


def extremal_config_jstar(c):
    """Halfspace pair attaining the sharp j* vs tanh(h/2) constant
    sqrt(1 + 1/c^2): d(y) = d(x) + |x-y| with |x-y| = 2c(c+sqrt(c^2+1)) d(x)."""
    if not c > 0.0:
        raise ValueError("c must be positive")
    x = np.array([0.0, 1.0])
    y = np.array([0.0, 1.0 + 2.0 * c * (c + math.sqrt(c * c + 1.0))])
    return x, y


def extremal_config_p(c):
    """Halfspace pair attaining the sharp p vs tanh(h/2) constant: equal
    boundary distances with |x-y| = 2c d(x), i.e. u = c."""
    if not c > 0.0:
        raise ValueError("c must be positive")
    x = np.array([0.0, 1.0])
    y = np.array([2.0 * c, 1.0])
    return x, y


def _witnesses(X, Y, Q, bad_mask, cap=10, Z=None):
    out = []
    for i in np.nonzero(bad_mask)[0][:cap]:
        w = {"x": X[i], "y": Y[i]}
        if Z is not None:
            w["z"] = Z[i]
        w["quotient"] = float(Q[i])
        out.append(w)
    return out


def _report(lemma_id, desc, X, Y, Q, lo, hi, extras, Z=None):
    finite = np.isfinite(Q)
    Qf = Q[finite]
    bad = (Q < lo - BOUND_SLACK) | (Q > hi + BOUND_SLACK)
    return BoundReport(lemma_id, desc, int(Q.shape[0]),
                       float(Qf.min()), float(Qf.max()), float(lo), float(hi),
                       _witnesses(X, Y, Q, bad, Z=Z), extras)


def quotient_bounds_check(lemma_id, domain, params, sample_count, seed):
    """Sweep an inequality's quotient over random pairs (triples for the relaxed
    triangle inequality) plus deterministic limit probes; report empirical
    extremes against the theoretical constants and any violations."""
    if lemma_id not in LEMMA_IDS:
        raise ValueError(f"unknown lemma id {lemma_id!r}; expected one of {LEMMA_IDS}")
    rng = np.random.default_rng(seed)

    if lemma_id == "C4.2":
        return _check_relaxed_triangle(domain, params, sample_count, rng)

    c = params.get("c")
    if lemma_id == "L4.1":
        c0, c1 = params["c0"], params["c1"]
        if not (0.0 < c0 <= c1):
            raise ValueError("L4.1 needs 0 < c0 <= c1")
        cc = c1
    else:
        if not (c is not None and c > 0.0):
            raise ValueError("c must be positive")
        cc = c
        if lemma_id == "L4.8":
            if domain.kind != HALFSPACE:
                raise ValueError("L4.8 relates h to the halfspace hyperbolic metric")
            if not c >= 1.0:
                raise ValueError("L4.8 needs c >= 1")
        elif lemma_id == "R4.4" and not c < 1.0:
            raise ValueError("R4.4 witnesses need 0 < c < 1")
        elif lemma_id == "C4.7-convex" and not domain.is_convex:
            raise ValueError(f"{domain.name!r} is not convex")

    probes = [boundary_ray_probe_pairs(domain), equal_d_probe_pairs(domain, cc)]
    if lemma_id == "L4.5":
        probes.append(away_from_boundary_probe_pairs(domain, c))
        if domain.kind == HALFSPACE:
            ex, ey = extremal_config_jstar(c)
            probes.append((ex[None, :], ey[None, :]))
    if lemma_id == "L4.6" and domain.kind == HALFSPACE:
        ex, ey = extremal_config_p(c)
        probes.append((ex[None, :], ey[None, :]))
    n_probe = sum(p[0].shape[0] for p in probes)
    Xr, Yr = sample_pair_sweep(domain, max(sample_count - n_probe, 0), rng,
                               equal_d=(lemma_id == "R4.4"))
    X = np.concatenate([p[0] for p in probes] + [Xr])
    Y = np.concatenate([p[1] for p in probes] + [Yr])

    kern = backend.kernels()
    X = np.ascontiguousarray(X)
    Y = np.ascontiguousarray(Y)
    r, dx, dy = kern.pair_stats(domain.kind, domain.params, X, Y)
    # probe points driven fully onto the boundary (float-collapsed distances
    # on domains whose d is a difference of O(1) terms) carry no information
    ok = (dx > 0.0) & (dy > 0.0) & (r > 0.0)
    X, Y, r, dx, dy = X[ok], Y[ok], r[ok], dx[ok], dy[ok]
    dmin = np.minimum(dx, dy)
    gm = np.sqrt(dx) * np.sqrt(dy)

    def h_of(cv):
        return np.log1p(cv * r / gm)

    def th_of(cv):
        return r / (r + (2.0 / cv) * gm)

    extras = {}
    if lemma_id == "L4.1":
        c0, c1 = params["c0"], params["c1"]
        Q = h_of(c0) / h_of(c1)
        lo, hi = c0 / c1, 1.0
        desc = f"h(c={c0:g}) / h(c={c1:g})"
    elif lemma_id == "L4.3":
        Q = h_of(c) / np.log1p(r / dmin)
        lo, hi = 0.5 * min(c, 1.0), max(c, 1.0)
        desc = f"h(c={c:g}) / j"
    elif lemma_id == "L4.5":
        Q = (r / (r + 2.0 * dmin)) / th_of(c)
        lo, hi = min(1.0, 1.0 / c), math.sqrt(1.0 + 1.0 / c ** 2)
        desc = f"j* / th(h(c={c:g})/2)"
        if domain.kind == HALFSPACE:
            ex, ey = extremal_config_jstar(c)
            extras["extremal_quotient"] = _jstar_quotient_at(domain, c, ex, ey)
            extras["extremal_gap"] = abs(extras["extremal_quotient"] - hi)
    elif lemma_id == "L4.6":
        Q = (r / np.sqrt(r * r + 4.0 * dx * dy)) / th_of(c)
        lo, hi = min(1.0, 1.0 / c), math.sqrt(1.0 + 1.0 / c ** 2)
        desc = f"p / th(h(c={c:g})/2)"
        if domain.kind == HALFSPACE:
            ex, ey = extremal_config_p(c)
            extras["extremal_quotient"] = _p_quotient_at(domain, c, ex, ey)
            extras["extremal_gap"] = abs(extras["extremal_quotient"] - hi)
    elif lemma_id in ("C4.7", "C4.7-convex"):
        path = path_infimum_batch(domain, X, Y)
        Q = (r / path) / th_of(c)
        lo = min(1.0, 1.0 / c)
        hi = (math.sqrt(1.0 + 1.0 / c ** 2) if lemma_id == "C4.7-convex"
              else math.sqrt(2.0 + 2.0 / c ** 2))
        desc = f"s / th(h(c={c:g})/2)"
    elif lemma_id == "L4.8":
        rho = 2.0 * np.arcsinh(r / (2.0 * gm))
        Q = rho / h_of(c)
        lo, hi = 1.0 / c, 2.0
        desc = f"rho / h(c={c:g})"
        for uprobe, label in ((1e-6, "probe_u_1e-6"), (1e6, "probe_u_1e6"),
                              (1e30, "probe_u_1e30")):
            extras[label] = float(2.0 * math.asinh(uprobe)
                                  / math.log1p(2.0 * c * uprobe))
    else:  # R4.4: the retracted bound h <= c j fails on equal-distance pairs
        Q = h_of(c) / np.log1p(r / dmin)
        lo, hi = c / (2.0 * (1.0 + c)), c
        desc = f"h(c={c:g}) / j (retracted bound h <= c j)"
        extras["witness_count"] = int(np.sum(Q > c + BOUND_SLACK))

    rep = _report(lemma_id, desc, X, Y, Q, lo, hi, extras)
    rep.extras["gap_lo"] = rep.empirical_min - rep.theoretical_lo
    rep.extras["gap_hi"] = rep.theoretical_hi - rep.empirical_max
    return rep


def _jstar_quotient_at(domain, c, x, y):
    from .metrics import j_star, th_half_h
    return j_star(domain, x, y) / th_half_h(domain, c, x, y)


def _p_quotient_at(domain, c, x, y):
    from .metrics import p_metric, th_half_h
    return p_metric(domain, x, y) / th_half_h(domain, c, x, y)


def _check_relaxed_triangle(domain, params, sample_count, rng):
    """h(x,y) <= (2/c)(h(x,z) + h(z,y)) for 0 < c < 2 on random and
    family-seeded triples."""
    c = params["c"]
    if not 0.0 < c < 2.0:
        raise ValueError("the relaxed triangle inequality covers 0 < c < 2")
    kern = backend.kernels()
    n = domain.dim
    triples = []
    for k in (1e-2, 1e-4, 1e-6):
        triples.append(family_triple_boundary_collapse(domain, anchor_point(domain), k))
    pair = inscribed_boundary_pair(domain)
    if pair is not None:
        for k in (1e-2, 1e-4, 1e-6):
            triples.append(family_triple_inscribed(pair[0], pair[1], k))
    count = max(sample_count - len(triples), 0)
    Xr, Yr = sample_pair_sweep(domain, count, rng)
    Zr = sample_interior_batch(domain, rng, count)
    X = np.ascontiguousarray(
        np.concatenate([np.asarray([t[0] for t in triples]).reshape(-1, n), Xr]))
    Y = np.ascontiguousarray(
        np.concatenate([np.asarray([t[1] for t in triples]).reshape(-1, n), Yr]))
    Z = np.ascontiguousarray(
        np.concatenate([np.asarray([t[2] for t in triples]).reshape(-1, n), Zr]))
    hxy = kern.h_batch(domain.kind, domain.params, c, X, Y)
    hxz = kern.h_batch(domain.kind, domain.params, c, X, Z)
    hzy = kern.h_batch(domain.kind, domain.params, c, Z, Y)
    denom = hxz + hzy
    with np.errstate(divide="ignore", invalid="ignore"):
        Q = np.where(denom > 0.0, hxy / denom, 0.0)
    rep = _report("C4.2", f"h(x,y) / (h(x,z)+h(z,y)) with c={c:g}",
                  X, Y, Q, 0.0, 2.0 / c, {}, Z=Z)
    rep.extras["gap_hi"] = rep.theoretical_hi - rep.empirical_max
    return rep


def _invariance_pairs(dim, count, rng):
    """Pairs with separation comparable to the coordinate magnitudes, so the
    1e-12 relative-deviation target is resolvable in double precision (the
    rounding of mapped coordinates is amplified by 1/relative-separation;
    micro-separated pairs would drown the check in float noise)."""
    lo = np.full(dim, -2.0)
    hi = np.full(dim, 2.0)
    lo[-1], hi[-1] = 0.5, 2.0
    X = rng.uniform(lo, hi, size=(4 * count, dim))
    dirs = rng.standard_normal((4 * count, dim))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    sep = np.exp(rng.uniform(np.log(0.05), np.log(5.0), size=4 * count))
    Y = X + sep[:, None] * dirs
    ok = Y[:, -1] >= 0.05
    return X[ok][:count], Y[ok][:count]


def mobius_invariance_check(c, sample_count, seed, dim=2):
    """Invariance of h on the halfspace under conformal self-maps: scalings,
    boundary-parallel translations, and the boundary-centered unit-sphere
    inversion. Reports the max relative deviation (must be <= 1e-12)."""
    if dim not in (2, 3):
        raise ValueError("invariance check supports dimensions 2 and 3")
    if not c > 0.0:
        raise ValueError("c must be positive")
    domain = Domain.halfspace(dim)
    rng = np.random.default_rng(seed)
    X, Y = _invariance_pairs(dim, sample_count, rng)
    kern = backend.kernels()
    base = kern.h_batch(domain.kind, domain.params, c, X, Y)
    worst = np.zeros(X.shape[0])
    extras = {}
    for name, f in conformal_self_maps_half_space(dim).items():
        mapped = kern.h_batch(domain.kind, domain.params, c,
                              np.ascontiguousarray(f(X)),
                              np.ascontiguousarray(f(Y)))
        dev = np.abs(mapped - base) / base
        extras[f"max_dev[{name}]"] = float(dev.max())
        worst = np.maximum(worst, dev)
    return _report("R2.2", f"relative deviation of h(c={c:g}) under conformal "
                   "self-maps", X, Y, worst, 0.0, 0.0, extras)
