"""Metric-ball geometry: exact Euclidean representations of h- and rho-balls,
inclusion radii, metric-sphere sampling, and brute-force extremum oracles.

On the halfspace the h-ball is exactly a Euclidean ball (and exactly a
hyperbolic ball); on the unit ball the hyperbolic ball is Euclidean and the
h-values on its boundary sphere are monotone in the polar angle, so inclusion
radii reduce to the two axis poles. Where closed-form radii disagree with the
brute-force sphere extrema, all provenances are reported side by side and
nothing is silently corrected.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .domains import HALFSPACE, UNITBALL, as_point, dist_to_boundary
from .errors import DomainError, SearchError, UnsupportedDimensionError
from .metrics import h_metric, rho_half_space, rho_unit_ball

_INVPHI = 0.6180339887498949


@dataclass
class EuclideanBall:
    center: np.ndarray
    radius: float

    def to_json(self):
        return {"center": self.center, "radius": self.radius}


@dataclass
class InclusionRadii:
    """Radii r0 <= r1 making an h-ball sit inside, and contain, a reference
    ball about the same center. provenance: PaperFormula | ProofDerived |
    BruteForce."""

    r0: float
    r1: float
    provenance: str

    def to_json(self):
        return {"r0": self.r0, "r1": self.r1, "provenance": self.provenance}


def h_ball_half_space(x, r, c):
    """Exact Euclidean representation of the h-ball B_h(x, r) in the upper
    halfspace, plus the equal hyperbolic radius 2 arsinh((e^r - 1)/(2c))."""
    x = as_point(x)
    if x[-1] <= 0.0:
        raise DomainError("center must lie in the open halfspace")
    if not r > 0.0:
        raise ValueError("radius must be positive")
    if not c > 0.0:
        raise ValueError("c must be positive")
    a = math.expm1(r)
    center = x.copy()
    center[-1] += x[-1] * a * a / (2.0 * c * c)
    radius = x[-1] * a * math.sqrt(a * a + 4.0 * c * c) / (2.0 * c * c)
    rho_radius = 2.0 * math.asinh(a / (2.0 * c))
    return EuclideanBall(center, radius), rho_radius


def rho_ball_half_space(x, R):
    """Euclidean representation of the hyperbolic ball B_rho(x, R) in the
    halfspace: center shifted up by x_n(cosh R - 1), radius x_n sinh R."""
    x = as_point(x)
    if x[-1] <= 0.0:
        raise DomainError("center must lie in the open halfspace")
    if not R > 0.0:
        raise ValueError("radius must be positive")
    center = x.copy()
    center[-1] += x[-1] * (math.cosh(R) - 1.0)
    return EuclideanBall(center, x[-1] * math.sinh(R))


def rho_ball_unit_ball(x, R):
    """Euclidean representation of B_rho(x, R) in the unit ball:
    q = x(1-t^2)/(1-|x|^2 t^2), r = (1-|x|^2)t/(1-|x|^2 t^2), t = tanh(R/2).
    Satisfies |q - x| = |x| t r."""
    x = as_point(x)
    nx = float(np.linalg.norm(x))
    if nx >= 1.0:
        raise DomainError("center must lie in the open unit ball")
    if not R > 0.0:
        raise ValueError("radius must be positive")
    t = math.tanh(0.5 * R)
    denom = 1.0 - nx * nx * t * t
    q = x * ((1.0 - t * t) / denom)
    r = (1.0 - nx * nx) * t / denom
    return EuclideanBall(q, r)


def inclusion_radii_euclidean(domain, x, r, c):
    """Radii with B_h(x, r0) inside B^n(x, r) inside B_h(x, r1), from the
    extreme boundary distances on the Euclidean sphere: d-r always, d+r
    generically, and the sharper 1 - ||x|-r| on the unit ball."""
    x = as_point(x, domain.dim)
    if not c > 0.0:
        raise ValueError("c must be positive")
    d = dist_to_boundary(domain, x)
    if not 0.0 < r < d:
        raise ValueError(f"need 0 < r < d_G(x) = {d}, got r = {r}")
    if domain.kind == UNITBALL:
        nx = float(np.linalg.norm(x))
        r0 = math.log1p(c * r / math.sqrt((1.0 - nx) * (1.0 - abs(nx - r))))
    else:
        r0 = math.log1p(c * r / math.sqrt(d * (d + r)))
    r1 = math.log1p(c * r / math.sqrt(d * (d - r)))
    return InclusionRadii(r0, r1, "PaperFormula")


def _perp_unit(x):
    n = x.shape[0]
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        p = e - np.dot(e, x) / np.dot(x, x) * x
        nrm = np.linalg.norm(p)
        if nrm > 1e-9:
            return p / nrm
    raise ValueError("no perpendicular direction")


def rho_sphere_h_profile(x, R, c, samples=20000):
    """h on the rho-sphere of the unit ball as a function of the polar angle
    mu in [0, pi] measured at the Euclidean center q from the direction of x.
    Returns (mu, h) arrays; by symmetry the 2D section through 0, q, x carries
    the full range of h over the (n-1)-sphere."""
    x = as_point(x)
    ball = rho_ball_unit_ball(x, R)
    q, rr = ball.center, ball.radius
    nx = float(np.linalg.norm(x))
    mu = np.linspace(0.0, np.pi, samples)
    if nx == 0.0:
        t = math.tanh(0.5 * R)
        h = np.full(samples, math.log1p(c * t / math.sqrt(1.0 - t)))
        return mu, h
    ex = x / nx
    ey = _perp_unit(x)
    Y = q[None, :] + rr * (np.cos(mu)[:, None] * ex[None, :]
                           + np.sin(mu)[:, None] * ey[None, :])
    sep = np.linalg.norm(Y - x[None, :], axis=1)
    dy = 1.0 - np.linalg.norm(Y, axis=1)
    h = np.log1p(c * sep / (np.sqrt(1.0 - nx) * np.sqrt(dy)))
    return mu, h


def _h_at_mu(x, q, rr, c, nx, mu):
    ex = x / nx
    ey = _perp_unit(x)
    y = q + rr * (math.cos(mu) * ex + math.sin(mu) * ey)
    sep = float(np.linalg.norm(y - x))
    dy = 1.0 - float(np.linalg.norm(y))
    return math.log1p(c * sep / (math.sqrt(1.0 - nx) * math.sqrt(dy)))


def _golden_extremum(f, a, b, sign, iters=80):
    """Golden-section extremum of a scalar function (sign=+1 min, -1 max)."""
    best = min(sign * f(a), sign * f(b))
    for _ in range(iters):
        w = b - a
        x1 = b - _INVPHI * w
        x2 = a + _INVPHI * w
        f1 = sign * f(x1)
        f2 = sign * f(x2)
        best = min(best, f1, f2)
        if f1 < f2:
            b = x2
        else:
            a = x1
    return sign * min(best, sign * f(0.5 * (a + b)))


def inclusion_radii_rho_unit_ball(x, R, c, samples=20000):
    """Three provenances of the inclusion radii of B_h around B_rho(x, R) in
    the unit ball: the displayed closed forms (paper), the pole values of h
    derived from the Euclidean representation (derived), and brute-force
    extrema over the rho-sphere (brute). Discrepancies are reported by the
    caller, never suppressed. Returns a dict with the three InclusionRadii
    plus the monotonicity flag of the brute sweep."""
    x = as_point(x)
    if not c > 0.0:
        raise ValueError("c must be positive")
    ball = rho_ball_unit_ball(x, R)
    q, rr = ball.center, ball.radius
    nx = float(np.linalg.norm(x))
    nq = float(np.linalg.norm(q))
    t = math.tanh(0.5 * R)

    paper_r0 = math.log1p(c * t * (1.0 + nx) * math.sqrt(1.0 - nx)
                          / ((1.0 - nx * t) * math.sqrt(1.0 - nx * t - abs(nx - t))))
    paper_r1 = math.log1p(c * t * (1.0 + nx) / ((1.0 + nx * t) * (1.0 - t)))
    derived_r0 = math.log1p(c * rr * (1.0 + nx * t)
                            / math.sqrt((1.0 - nx) * (1.0 - abs(nq - rr))))
    derived_r1 = math.log1p(c * rr * (1.0 - nx * t)
                            / math.sqrt((1.0 - nx) * (1.0 - nq - rr)))

    if nx == 0.0:
        const = math.log1p(c * t / math.sqrt(1.0 - t))
        brute_r0 = brute_r1 = const
        monotone = True
    else:
        mu, h = rho_sphere_h_profile(x, R, c, samples)
        i_min = int(np.argmin(h))
        i_max = int(np.argmax(h))
        step = np.pi / (samples - 1)

        def f(m):
            return _h_at_mu(x, q, rr, c, nx, min(max(m, 0.0), np.pi))

        brute_r0 = _golden_extremum(f, mu[i_min] - step, mu[i_min] + step, +1)
        brute_r1 = _golden_extremum(f, mu[i_max] - step, mu[i_max] + step, -1)
        brute_r0 = min(brute_r0, float(h.min()))
        brute_r1 = max(brute_r1, float(h.max()))
        diffs = np.diff(h)
        monotone = bool(np.all(diffs <= 1e-12) or np.all(diffs >= -1e-12))

    return {
        "paper": InclusionRadii(paper_r0, paper_r1, "PaperFormula"),
        "derived": InclusionRadii(derived_r0, derived_r1, "ProofDerived"),
        "brute": InclusionRadii(brute_r0, brute_r1, "BruteForce"),
        "monotone_in_angle": monotone,
    }


# ---------------------------------------------------------------------------
# Metric-sphere sampling
# ---------------------------------------------------------------------------

def direction_grid(dim, m):
    """Deterministic unit directions: uniform angles on S^1, Fibonacci
    lattice on S^2. No RNG, so sampling is reproducible regardless of
    scheduling."""
    if dim == 2:
        th = 2.0 * np.pi * np.arange(m) / m
        return np.stack([np.cos(th), np.sin(th)], axis=1)
    if dim == 3:
        i = np.arange(m) + 0.5
        phi = np.arccos(1.0 - 2.0 * i / m)
        golden = np.pi * (1.0 + math.sqrt(5.0))
        th = golden * i
        return np.stack([np.sin(phi) * np.cos(th), np.sin(phi) * np.sin(th),
                         np.cos(phi)], axis=1)
    raise UnsupportedDimensionError("direction grids exist for dimensions 2 and 3")


def sample_h_sphere(domain, c, x, r, m, return_crossing_counts=False,
                    coarse=512, iters=100, dense=512):
    """m points y with |h(x, y) - r| <= 1e-10, one per grid direction, found
    by bracketing the first crossing of h = r along the ray and bisecting.
    A dense post-pass counts crossings per ray to flag non-monotone rays."""
    x = as_point(x, domain.dim)
    if not r > 0.0:
        raise ValueError("radius must be positive")
    if not c > 0.0:
        raise ValueError("c must be positive")
    dist_to_boundary(domain, x)
    dirs = direction_grid(domain.dim, m)
    kern = backend.kernels()
    s, ncross = kern.ray_h_crossing(domain.kind, domain.params, c, x,
                                    np.ascontiguousarray(dirs), r,
                                    coarse, iters, dense)
    if np.any(~np.isfinite(s)):
        raise SearchError("no crossing of h = r found along some ray")
    pts = x[None, :] + s[:, None] * dirs
    hv = kern.h_batch(domain.kind, domain.params, c,
                      np.ascontiguousarray(np.broadcast_to(x, pts.shape)),
                      np.ascontiguousarray(pts))
    worst = float(np.max(np.abs(hv - r)))
    if worst > 1e-10:
        raise SearchError(f"sphere sampling did not converge: max |h - r| = "
                          f"{worst:.3e} (level too steep for float64?)")
    if return_crossing_counts:
        return pts, ncross
    return pts


@dataclass
class InclusionReport:
    """Membership of a sampled inner-ball boundary in an outer ball, with the
    minimal slack found (sharp inclusions drive the slack to zero)."""

    all_inside: bool
    min_slack: float
    argmin_point: np.ndarray
    samples: int

    def to_json(self):
        return {"all_inside": self.all_inside, "min_slack": self.min_slack,
                "argmin_point": self.argmin_point, "samples": self.samples}


def _boundary_points(domain, c, x, spec, m):
    kind, radius = spec
    if kind == "euclidean":
        return x[None, :] + radius * direction_grid(domain.dim, m)
    if kind == "h":
        return sample_h_sphere(domain, c, x, radius, m)
    if kind == "rho":
        if domain.kind == HALFSPACE:
            ball = rho_ball_half_space(x, radius)
        elif domain.kind == UNITBALL:
            ball = rho_ball_unit_ball(x, radius)
        else:
            raise ValueError("rho-balls exist on the halfspace and unit ball only")
        return ball.center[None, :] + ball.radius * direction_grid(domain.dim, m)
    raise ValueError(f"unknown ball spec kind {kind!r}")


def _outer_slack(domain, c, x, spec, pts):
    kind, radius = spec
    if kind == "euclidean":
        return radius - np.linalg.norm(pts - x[None, :], axis=1)
    if kind == "h":
        return np.array([radius - h_metric(domain, c, x, p) for p in pts])
    if kind == "rho":
        if domain.kind == HALFSPACE:
            return np.array([radius - rho_half_space(x, p) for p in pts])
        if domain.kind == UNITBALL:
            return np.array([radius - rho_unit_ball(x, p) for p in pts])
        raise ValueError("rho-balls exist on the halfspace and unit ball only")
    raise ValueError(f"unknown ball spec kind {kind!r}")


def verify_inclusion(domain, c, x, inner, outer, m=1000, tol=1e-9):
    """Sample the inner ball's boundary and check membership in the outer
    ball; specs are (kind, radius) with kind in euclidean | h | rho, all about
    the same center x."""
    x = as_point(x, domain.dim)
    pts = _boundary_points(domain, c, x, inner, m)
    slack = _outer_slack(domain, c, x, outer, pts)
    i = int(np.argmin(slack))
    return InclusionReport(bool(slack[i] >= -tol), float(slack[i]),
                           pts[i].copy(), int(m))
