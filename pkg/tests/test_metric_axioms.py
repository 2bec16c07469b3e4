"""Metric-axiom and triangle-inequality property tests.

Covers: symmetry/nonnegativity/identity for every metric on 10^4 random
pairs, the triangle inequality where it is guaranteed (h on the halfspace for
c >= 1, h everywhere for c >= 2, tanh(h/2) whenever h is a metric, j, j*, s),
and monotonicity of h in c. The point-pair function is exempt from triangle
checks by design.
"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypmetric import Domain, backend, h_metric, th_half_h
from hypmetric.domains import path_infimum_batch, sample_interior_batch

from conftest import suite_domains

DOMAIN_NAMES = list(suite_domains())


def _pairs(dom, n, seed):
    rng = np.random.default_rng(seed)
    X = sample_interior_batch(dom, rng, n)
    Y = sample_interior_batch(dom, rng, n)
    return X, Y


def _stats(dom, X, Y):
    kern = backend.kernels()
    return kern.pair_stats(dom.kind, dom.params, np.ascontiguousarray(X),
                           np.ascontiguousarray(Y))


METRIC_FORMS = {
    "h(c=0.5)": lambda r, dx, dy: np.log1p(0.5 * r / np.sqrt(dx * dy)),
    "h(c=2)": lambda r, dx, dy: np.log1p(2.0 * r / np.sqrt(dx * dy)),
    "thh(c=2)": lambda r, dx, dy: r / (r + np.sqrt(dx * dy)),
    "j": lambda r, dx, dy: np.log1p(r / np.minimum(dx, dy)),
    "jstar": lambda r, dx, dy: r / (r + 2.0 * np.minimum(dx, dy)),
    "p": lambda r, dx, dy: r / np.sqrt(r * r + 4.0 * dx * dy),
}


@pytest.mark.parametrize("name", DOMAIN_NAMES)
def test_axioms_on_pairs(domains, name):
    """Symmetry, nonnegativity, identity of indiscernibles on 10^4 pairs."""
    dom = domains[name]
    X, Y = _pairs(dom, 10_000, 11)
    r, dx, dy = _stats(dom, X, Y)
    rT, dxT, dyT = _stats(dom, Y, X)
    for label, form in METRIC_FORMS.items():
        v = form(r, dx, dy)
        w = form(rT, dxT, dyT)
        assert np.all(v >= 0.0), label
        assert np.max(np.abs(v - w)) <= 1e-12, label
        same = form(np.zeros(10), dx[:10], dx[:10])
        assert np.all(same == 0.0), label


def test_rho_axioms(rng):
    from hypmetric import rho_half_space, rho_unit_ball
    half = Domain.halfspace(2)
    X, Y = _pairs(half, 1000, 3)
    for x, y in zip(X, Y):
        assert rho_half_space(x, y) == pytest.approx(rho_half_space(y, x), abs=1e-12)
        assert rho_half_space(x, y) >= 0.0
    ball = Domain.unit_ball(2)
    X, Y = _pairs(ball, 1000, 4)
    for x, y in zip(X, Y):
        assert rho_unit_ball(x, y) == pytest.approx(rho_unit_ball(y, x), abs=1e-12)


def _triples(dom, n, seed):
    rng = np.random.default_rng(seed)
    return (sample_interior_batch(dom, rng, n),
            sample_interior_batch(dom, rng, n),
            sample_interior_batch(dom, rng, n))


def _h_defect(dom, c, X, Y, Z):
    kern = backend.kernels()
    return kern.defect_batch(dom.kind, dom.params, c,
                             np.ascontiguousarray(X), np.ascontiguousarray(Y),
                             np.ascontiguousarray(Z))


def test_triangle_h_halfspace_c_ge_1(domains):
    dom = domains["halfspace"]
    X, Y, Z = _triples(dom, 10_000, 21)
    for c in (1.0, 1.3):
        assert float(_h_defect(dom, c, X, Y, Z).min()) >= -1e-11


@pytest.mark.parametrize("name", DOMAIN_NAMES)
def test_triangle_h_any_domain_c_ge_2(domains, name):
    dom = domains[name]
    X, Y, Z = _triples(dom, 10_000, 22)
    for c in (2.0, 3.0):
        assert float(_h_defect(dom, c, X, Y, Z).min()) >= -1e-11


@pytest.mark.parametrize("name", DOMAIN_NAMES)
def test_triangle_th_half_h_when_h_is_metric(domains, name):
    # tanh(h/2) inherits the triangle inequality from h (c = 2 everywhere)
    dom = domains[name]
    X, Y, Z = _triples(dom, 10_000, 23)
    c = 2.0

    def th(A, B):
        r, da, db = _stats(dom, A, B)
        return r / (r + (2.0 / c) * np.sqrt(da * db))

    defect = th(X, Z) + th(Z, Y) - th(X, Y)
    assert float(defect.min()) >= -1e-12


@pytest.mark.parametrize("name", DOMAIN_NAMES)
def test_triangle_j_and_jstar(domains, name):
    dom = domains[name]
    X, Y, Z = _triples(dom, 10_000, 24)

    def j(A, B):
        r, da, db = _stats(dom, A, B)
        return np.log1p(r / np.minimum(da, db))

    def jstar(A, B):
        r, da, db = _stats(dom, A, B)
        return r / (r + 2.0 * np.minimum(da, db))

    assert float((j(X, Z) + j(Z, Y) - j(X, Y)).min()) >= -1e-12
    assert float((jstar(X, Z) + jstar(Z, Y) - jstar(X, Y)).min()) >= -1e-12


@pytest.mark.parametrize("name", DOMAIN_NAMES)
def test_triangle_s_metric(domains, name):
    dom = domains[name]
    n = 10_000 if dom.kind in (0, 2, 3) else 2000  # numeric path kinds cost more
    X, Y, Z = _triples(dom, n, 25)

    def s(A, B):
        r = np.linalg.norm(A - B, axis=1)
        return r / path_infimum_batch(dom, A, B)

    defect = s(X, Z) + s(Z, Y) - s(X, Y)
    assert float(defect.min()) >= -1e-10


@pytest.mark.parametrize("name", DOMAIN_NAMES)
def test_h_monotone_in_c(domains, name):
    dom = domains[name]
    X, Y = _pairs(dom, 5000, 31)
    r, dx, dy = _stats(dom, X, Y)
    prev = np.log1p(0.25 * r / np.sqrt(dx * dy))
    for c in (0.5, 1.0, 2.0, 4.0):
        cur = np.log1p(c * r / np.sqrt(dx * dy))
        assert np.all(cur >= prev)
        prev = cur


# hypothesis spot checks on arbitrary coordinates (not just the samplers)

finite = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)
positive = st.floats(min_value=1e-3, max_value=5.0, allow_nan=False)


@given(x1=finite, xn=positive, y1=finite, yn=positive, z1=finite, zn=positive,
       c=st.floats(min_value=1.0, max_value=10.0))
def test_hypothesis_triangle_halfspace(x1, xn, y1, yn, z1, zn, c):
    dom = Domain.halfspace(2)
    x, y, z = [x1, xn], [y1, yn], [z1, zn]
    defect = (h_metric(dom, c, x, z) + h_metric(dom, c, z, y)
              - h_metric(dom, c, x, y))
    assert defect >= -1e-11


@given(x1=finite, xn=positive, y1=finite, yn=positive,
       c=st.floats(min_value=0.1, max_value=10.0))
def test_hypothesis_tanh_identity(x1, xn, y1, yn, c):
    dom = Domain.halfspace(2)
    h = h_metric(dom, c, [x1, xn], [y1, yn])
    assert abs(th_half_h(dom, c, [x1, xn], [y1, yn]) - np.tanh(h / 2)) <= 1e-14


@given(x1=finite, xn=positive, y1=finite, yn=positive)
def test_hypothesis_s_equals_p_halfspace(x1, xn, y1, yn):
    from hypmetric import p_metric, s_metric
    dom = Domain.halfspace(2)
    assert abs(s_metric(dom, [x1, xn], [y1, yn])
               - p_metric(dom, [x1, xn], [y1, yn])) <= 1e-12
