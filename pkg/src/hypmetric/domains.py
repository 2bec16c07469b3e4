"""Canonical domains with exact boundary-distance and path-infimum oracles.

Six proper subdomains of R^n (n >= 2) are supported: the upper halfspace
{x : x_n > 0}, the open unit ball, the once- and twice-punctured space, the
complement of a closed segment, and an open axis-aligned box. Every domain
has an exact distance-to-boundary; the bent-path infimum
inf_z (|x-z| + |z-y|) over the boundary is exact where a closed form exists
(halfspace by reflection, punctures) and numerically minimized otherwise
(2D/3D only).
"""

from dataclasses import dataclass, field

import numpy as np

from . import backend
from .errors import DomainError, SamplingError, UnsupportedDimensionError

HALFSPACE, UNITBALL, PUNCTURED, TWICE_PUNCTURED, SEGMENT_COMPLEMENT, BOX = range(6)

_KIND_NAMES = {
    HALFSPACE: "halfspace",
    UNITBALL: "ball",
    PUNCTURED: "punctured",
    TWICE_PUNCTURED: "twice",
    SEGMENT_COMPLEMENT: "segment",
    BOX: "box",
}

#: domains whose path infimum needs numerical boundary minimization
_NUMERIC_PATH_KINDS = (UNITBALL, SEGMENT_COMPLEMENT, BOX)

#: rejected as "on the boundary" to avoid silent overflow of the metrics
BOUNDARY_GUARD = 1e-300

#: interior margin used by rejection sampling
SAMPLE_MARGIN = 1e-6


def as_point(x, dim=None):
    """Coerce to a finite float64 vector of length >= 2."""
    p = np.asarray(x, dtype=float)
    if p.ndim != 1 or p.shape[0] < 2:
        raise ValueError(f"point must be a vector of dimension >= 2, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError("point has non-finite coordinates")
    if dim is not None and p.shape[0] != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {p.shape[0]}")
    return p


@dataclass(frozen=True)
class Domain:
    """A canonical domain, encoded as (kind, dim, flat parameter vector)."""

    kind: int
    dim: int
    params: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("domain dimension must be >= 2")
        object.__setattr__(self, "params", np.asarray(self.params, dtype=float))

    @classmethod
    def halfspace(cls, dim=2):
        return cls(HALFSPACE, dim)

    @classmethod
    def unit_ball(cls, dim=2):
        return cls(UNITBALL, dim)

    @classmethod
    def punctured(cls, p):
        p = as_point(p)
        return cls(PUNCTURED, p.shape[0], p)

    @classmethod
    def twice_punctured(cls, u, v):
        u = as_point(u)
        v = as_point(v, u.shape[0])
        if np.array_equal(u, v):
            raise ValueError("punctures must be distinct")
        return cls(TWICE_PUNCTURED, u.shape[0], np.concatenate([u, v]))

    @classmethod
    def segment_complement(cls, u, v):
        u = as_point(u)
        v = as_point(v, u.shape[0])
        if np.array_equal(u, v):
            raise ValueError("segment endpoints must be distinct")
        return cls(SEGMENT_COMPLEMENT, u.shape[0], np.concatenate([u, v]))

    @classmethod
    def box(cls, lo, hi):
        lo = as_point(lo)
        hi = as_point(hi, lo.shape[0])
        if not np.all(lo < hi):
            raise ValueError("box requires lo < hi componentwise")
        return cls(BOX, lo.shape[0], np.concatenate([lo, hi]))

    @property
    def name(self):
        return _KIND_NAMES[self.kind]

    @property
    def is_convex(self):
        return self.kind in (HALFSPACE, UNITBALL, BOX)

    def literal(self):
        """CLI literal round-trip, e.g. "twice:2:-1,0:1,0"."""
        parts = [self.name, str(self.dim)]
        n = self.dim
        for i in range(self.params.shape[0] // n):
            parts.append(",".join(repr(float(v)) for v in self.params[i * n:(i + 1) * n]))
        return ":".join(parts)

    def __repr__(self):
        return f"Domain({self.literal()!r})"


def parse_domain(text):
    """Parse a domain literal like "halfspace:2" or "box:2:0,0:1,1"."""
    parts = text.strip().split(":")
    name = parts[0].lower()
    kinds = {v: k for k, v in _KIND_NAMES.items()}
    if name not in kinds:
        raise ValueError(f"unknown domain {name!r} in literal {text!r}")
    if len(parts) < 2:
        raise ValueError(f"domain literal {text!r} is missing a dimension")
    try:
        dim = int(parts[1])
    except ValueError:
        raise ValueError(f"bad dimension {parts[1]!r} in literal {text!r}") from None

    def vec(tok):
        try:
            vals = [float(t) for t in tok.split(",")]
        except ValueError:
            raise ValueError(f"bad coordinate tuple {tok!r} in literal {text!r}") from None
        if len(vals) != dim:
            raise ValueError(f"tuple {tok!r} has {len(vals)} coordinates, expected {dim}")
        return np.array(vals)

    kind = kinds[name]
    want = {HALFSPACE: 0, UNITBALL: 0, PUNCTURED: 1, TWICE_PUNCTURED: 2,
            SEGMENT_COMPLEMENT: 2, BOX: 2}[kind]
    got = len(parts) - 2
    if got != want:
        raise ValueError(f"domain {name!r} takes {want} point tuple(s), got {got} in {text!r}")
    if kind == HALFSPACE:
        return Domain.halfspace(dim)
    if kind == UNITBALL:
        return Domain.unit_ball(dim)
    if kind == PUNCTURED:
        return Domain.punctured(vec(parts[2]))
    if kind == TWICE_PUNCTURED:
        return Domain.twice_punctured(vec(parts[2]), vec(parts[3]))
    if kind == SEGMENT_COMPLEMENT:
        return Domain.segment_complement(vec(parts[2]), vec(parts[3]))
    return Domain.box(vec(parts[2]), vec(parts[3]))


# ---------------------------------------------------------------------------
# Point operations
# ---------------------------------------------------------------------------

def contains(domain, x):
    """True iff x lies strictly inside the open domain."""
    x = as_point(x, domain.dim)
    return backend.kernels().dist_point(domain.kind, domain.params, x) > 0.0


def dist_to_boundary(domain, x):
    """Exact Euclidean distance from an interior point to the boundary."""
    x = as_point(x, domain.dim)
    d = backend.kernels().dist_point(domain.kind, domain.params, x)
    if d <= 0.0:
        raise DomainError(f"point {x.tolist()} is not inside {domain.literal()}")
    return d


def dist_to_boundary_batch(domain, X):
    """Vectorized boundary distance (rows of X assumed interior, unchecked)."""
    X = np.ascontiguousarray(X, dtype=float)
    return backend.kernels().dist_batch(domain.kind, domain.params, X)


def nearest_boundary_point(domain, x):
    """A boundary point realizing dist_to_boundary(x).

    Ties break deterministically: box faces in order lo_1, hi_1, lo_2, ...;
    the first puncture before the second; the +e_1 direction at the ball
    center.
    """
    x = as_point(x, domain.dim)
    dist_to_boundary(domain, x)  # validates interiority
    n = domain.dim
    if domain.kind == HALFSPACE:
        q = x.copy()
        q[-1] = 0.0
        return q
    if domain.kind == UNITBALL:
        r = np.sqrt(np.dot(x, x))
        if r == 0.0:
            q = np.zeros(n)
            q[0] = 1.0
            return q
        return x / r
    if domain.kind == PUNCTURED:
        return domain.params.copy()
    if domain.kind == TWICE_PUNCTURED:
        u, v = domain.params[:n], domain.params[n:]
        du = np.linalg.norm(x - u)
        dv = np.linalg.norm(x - v)
        return u.copy() if du <= dv else v.copy()
    if domain.kind == SEGMENT_COMPLEMENT:
        u, v = domain.params[:n], domain.params[n:]
        w = v - u
        t = np.clip(np.dot(x - u, w) / np.dot(w, w), 0.0, 1.0)
        return u + t * w
    lo, hi = domain.params[:n], domain.params[n:]
    best = np.inf
    face = (0, 0)
    for i in range(n):
        if x[i] - lo[i] < best:
            best = x[i] - lo[i]
            face = (i, 0)
        if hi[i] - x[i] < best:
            best = hi[i] - x[i]
            face = (i, 1)
    q = x.copy()
    i, side = face
    q[i] = lo[i] if side == 0 else hi[i]
    return q


def path_infimum(domain, x, y):
    """inf over boundary z of |x-z| + |z-y|; exact by reflection on the
    halfspace and through punctures, numerically minimized (2D/3D) elsewhere.
    x == y is allowed and yields 2 d(x)."""
    x = as_point(x, domain.dim)
    y = as_point(y, domain.dim)
    dist_to_boundary(domain, x)
    dist_to_boundary(domain, y)
    return float(path_infimum_batch(domain, x[None, :], y[None, :])[0])


def path_infimum_batch(domain, X, Y):
    X = np.ascontiguousarray(X, dtype=float)
    Y = np.ascontiguousarray(Y, dtype=float)
    n = domain.dim
    if domain.kind == HALFSPACE:
        Yr = Y.copy()
        Yr[:, -1] = -Yr[:, -1]
        return np.sqrt(np.sum((X - Yr) ** 2, axis=1))
    if domain.kind == PUNCTURED:
        p = domain.params
        return (np.sqrt(np.sum((X - p) ** 2, axis=1))
                + np.sqrt(np.sum((Y - p) ** 2, axis=1)))
    if domain.kind == TWICE_PUNCTURED:
        u, v = domain.params[:n], domain.params[n:]
        through_u = (np.sqrt(np.sum((X - u) ** 2, axis=1))
                     + np.sqrt(np.sum((Y - u) ** 2, axis=1)))
        through_v = (np.sqrt(np.sum((X - v) ** 2, axis=1))
                     + np.sqrt(np.sum((Y - v) ** 2, axis=1)))
        return np.minimum(through_u, through_v)
    if n > 3:
        raise UnsupportedDimensionError(
            f"path infimum on {domain.name!r} needs a boundary parametrization, "
            f"available only for n in (2, 3), got n={n}")
    return backend.kernels().boundary_path_min(domain.kind, domain.params, X, Y)


def default_box(domain):
    """Default sampling/search box: the unit cube for the ball, the box's own
    extent, and desk scale [-10, 10]^n otherwise."""
    n = domain.dim
    if domain.kind == UNITBALL:
        return -np.ones(n), np.ones(n)
    if domain.kind == BOX:
        return domain.params[:n].copy(), domain.params[n:].copy()
    lo = np.full(n, -10.0)
    hi = np.full(n, 10.0)
    if domain.kind == HALFSPACE:
        lo[-1] = 0.0
    return lo, hi


def sample_interior(domain, rng_seed, bounding_box=None, margin=SAMPLE_MARGIN,
                    budget=10000):
    """Deterministic-for-seed rejection sample of one interior point with
    d_G(x) >= margin."""
    rng = np.random.default_rng(rng_seed)
    return sample_interior_batch(domain, rng, 1, bounding_box, margin, budget)[0]


def sample_interior_batch(domain, rng, count, bounding_box=None,
                          margin=SAMPLE_MARGIN, budget=10000):
    """Rejection-sample `count` interior points using an existing generator."""
    if bounding_box is None:
        lo, hi = default_box(domain)
    else:
        lo = as_point(bounding_box[0], domain.dim)
        hi = as_point(bounding_box[1], domain.dim)
    out = np.empty((count, domain.dim))
    have = 0
    for _ in range(budget):
        need = count - have
        draw = rng.uniform(lo, hi, size=(max(need * 2, 16), domain.dim))
        d = dist_to_boundary_batch(domain, draw)
        good = draw[d >= margin]
        take = min(need, good.shape[0])
        out[have:have + take] = good[:take]
        have += take
        if have == count:
            return out
    raise SamplingError(
        f"rejection sampling failed for {domain.literal()} within budget")
