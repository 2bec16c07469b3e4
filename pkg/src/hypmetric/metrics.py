"""The geometric-mean distance function and companion hyperbolic-type metrics.

Central object: hm(x, y) = log(1 + c|x-y| / sqrt(d(x) d(y))) where d is the
distance to the domain boundary. Companions: the distance-ratio metric j and
its tanh-half modification j*, the triangular-ratio metric s, the point-pair
function p (not a metric in every domain), and the hyperbolic metric of the
halfspace and the unit ball in their well-conditioned arsinh forms.
"""

from dataclasses import dataclass

import numpy as np

from .domains import (BOUNDARY_GUARD, HALFSPACE, UNITBALL, as_point,
                      dist_to_boundary, path_infimum)
from .errors import DomainError


def _guarded_d(domain, x):
    d = dist_to_boundary(domain, x)
    if d < BOUNDARY_GUARD:
        raise DomainError("point is numerically on the boundary (d < 1e-300)")
    return d


def _check_c(c):
    if not c > 0.0:
        raise ValueError(f"constant c must be positive, got {c}")
    return float(c)


def h_metric(domain, c, x, y):
    """log(1 + c|x-y|/sqrt(d(x) d(y))); zero iff x == y."""
    c = _check_c(c)
    x = as_point(x, domain.dim)
    y = as_point(y, domain.dim)
    dx = _guarded_d(domain, x)
    dy = _guarded_d(domain, y)
    return float(np.log1p(c * np.linalg.norm(x - y) / (np.sqrt(dx) * np.sqrt(dy))))


def th_half_h(domain, c, x, y):
    """tanh(h/2) in closed form: |x-y| / (|x-y| + (2/c) sqrt(d(x) d(y)))."""
    c = _check_c(c)
    x = as_point(x, domain.dim)
    y = as_point(y, domain.dim)
    dx = _guarded_d(domain, x)
    dy = _guarded_d(domain, y)
    r = np.linalg.norm(x - y)
    if r == 0.0:
        return 0.0
    return float(r / (r + (2.0 / c) * np.sqrt(dx) * np.sqrt(dy)))


def j_metric(domain, x, y):
    """Distance-ratio metric log(1 + |x-y|/min(d(x), d(y)))."""
    x = as_point(x, domain.dim)
    y = as_point(y, domain.dim)
    dmin = min(_guarded_d(domain, x), _guarded_d(domain, y))
    return float(np.log1p(np.linalg.norm(x - y) / dmin))


def j_star(domain, x, y):
    """tanh(j/2) in closed form: |x-y| / (|x-y| + 2 min(d(x), d(y)))."""
    x = as_point(x, domain.dim)
    y = as_point(y, domain.dim)
    dmin = min(_guarded_d(domain, x), _guarded_d(domain, y))
    r = np.linalg.norm(x - y)
    if r == 0.0:
        return 0.0
    return float(r / (r + 2.0 * dmin))


def s_metric(domain, x, y):
    """Triangular-ratio metric |x-y| / inf_z(|x-z| + |z-y|) over the boundary."""
    x = as_point(x, domain.dim)
    y = as_point(y, domain.dim)
    r = np.linalg.norm(x - y)
    if r == 0.0:
        _guarded_d(domain, x)
        return 0.0
    return float(r / path_infimum(domain, x, y))


def p_metric(domain, x, y):
    """Point-pair function |x-y| / sqrt(|x-y|^2 + 4 d(x) d(y)). Exposed even
    though it fails the triangle inequality in some domains."""
    x = as_point(x, domain.dim)
    y = as_point(y, domain.dim)
    dx = _guarded_d(domain, x)
    dy = _guarded_d(domain, y)
    r = np.linalg.norm(x - y)
    if r == 0.0:
        return 0.0
    return float(r / np.sqrt(r * r + 4.0 * dx * dy))


def rho_half_space(x, y):
    """Hyperbolic metric of the upper halfspace, 2 arsinh(|x-y|/(2 sqrt(x_n y_n))).

    The arsinh form is used instead of arcosh(1 + |x-y|^2/(2 x_n y_n)), which
    loses half the significant digits for nearby points.
    """
    x = as_point(x)
    y = as_point(y, x.shape[0])
    if x[-1] <= 0.0 or y[-1] <= 0.0:
        raise DomainError("rho_half_space needs points with positive last coordinate")
    return float(2.0 * np.arcsinh(np.linalg.norm(x - y) / (2.0 * np.sqrt(x[-1] * y[-1]))))


def rho_unit_ball(x, y):
    """Hyperbolic metric of the unit ball, 2 arsinh(|x-y|/sqrt((1-|x|^2)(1-|y|^2)))."""
    x = as_point(x)
    y = as_point(y, x.shape[0])
    rx = np.linalg.norm(x)
    ry = np.linalg.norm(y)
    if rx >= 1.0 or ry >= 1.0:
        raise DomainError("rho_unit_ball needs points inside the open unit ball")
    # (1-r)(1+r) keeps precision when |x| is close to 1
    wx = (1.0 - rx) * (1.0 + rx)
    wy = (1.0 - ry) * (1.0 + ry)
    return float(2.0 * np.arcsinh(np.linalg.norm(x - y) / np.sqrt(wx * wy)))


def h_from_rho(c, rho):
    """h on the halfspace expressed through the hyperbolic distance:
    log(1 + 2 c sinh(rho/2))."""
    c = _check_c(c)
    if rho < 0.0:
        raise ValueError(f"rho must be nonnegative, got {rho}")
    return float(np.log1p(2.0 * c * np.sinh(0.5 * rho)))


# ---------------------------------------------------------------------------
# Metric identifiers (CLI literals)
# ---------------------------------------------------------------------------

H, THH, J, JSTAR, S, P, RHO = "h", "thh", "j", "jstar", "s", "p", "rho"
_TAGS_WITH_C = (H, THH)
_ALL_TAGS = (H, THH, J, JSTAR, S, P, RHO)


@dataclass(frozen=True)
class MetricId:
    tag: str
    c: float | None = None

    def __post_init__(self):
        if self.tag not in _ALL_TAGS:
            raise ValueError(f"unknown metric tag {self.tag!r}")
        if self.tag in _TAGS_WITH_C:
            if self.c is None or not self.c > 0.0:
                raise ValueError(f"metric {self.tag!r} needs a constant c > 0")
        elif self.c is not None:
            raise ValueError(f"metric {self.tag!r} takes no constant")

    def literal(self):
        if self.tag in _TAGS_WITH_C:
            return f"{self.tag}:c={self.c:g}"
        return self.tag


def parse_metric(text):
    """Parse a metric literal: "h:c=1.5", "thh:c=2", "j", "jstar", "s", "p", "rho"."""
    parts = text.strip().lower().split(":")
    tag = parts[0]
    if tag in _TAGS_WITH_C:
        if len(parts) != 2 or not parts[1].startswith("c="):
            raise ValueError(f"metric literal {text!r} must look like '{tag}:c=<value>'")
        try:
            c = float(parts[1][2:])
        except ValueError:
            raise ValueError(f"bad constant in metric literal {text!r}") from None
        return MetricId(tag, c)
    if tag in _ALL_TAGS and len(parts) == 1:
        return MetricId(tag)
    raise ValueError(f"unknown metric literal {text!r}")


def evaluate(metric, domain, x, y):
    """Evaluate a MetricId; "rho" dispatches on the domain and is valid only
    for the halfspace and the unit ball."""
    if metric.tag == H:
        return h_metric(domain, metric.c, x, y)
    if metric.tag == THH:
        return th_half_h(domain, metric.c, x, y)
    if metric.tag == J:
        return j_metric(domain, x, y)
    if metric.tag == JSTAR:
        return j_star(domain, x, y)
    if metric.tag == S:
        return s_metric(domain, x, y)
    if metric.tag == P:
        return p_metric(domain, x, y)
    if domain.kind == HALFSPACE:
        return rho_half_space(x, y)
    if domain.kind == UNITBALL:
        return rho_unit_ball(x, y)
    raise ValueError(f"metric 'rho' is defined only on halfspace/ball, "
                     f"not {domain.name!r}")


def conformal_self_maps_half_space(dim):
    """Sample conformal self-maps of the halfspace used by the invariance
    check: scalings, boundary-parallel translations, and the unit-sphere
    inversion x -> x/|x|^2 (centered on the boundary)."""
    def scaling(lam):
        return lambda X: lam * X

    def translation(b):
        b = np.asarray(b, dtype=float)
        return lambda X: X + b

    def inversion(X):
        X = np.atleast_2d(X)
        return X / np.sum(X * X, axis=1, keepdims=True)

    b1 = np.zeros(dim)
    b1[0] = 5.0
    b2 = np.zeros(dim)
    b2[:-1] = -1.5
    return {
        "scale:0.25": scaling(0.25),
        "scale:3": scaling(3.0),
        "translate:e1*5": translation(b1),
        "translate:-1.5": translation(b2),
        "inversion": inversion,
    }
