import math

import mpmath as mp
import numpy as np
import pytest

from hypmetric import (Domain, DomainError, h_from_rho, h_metric, j_metric,
                       j_star, p_metric, parse_metric, rho_half_space,
                       rho_unit_ball, s_metric, th_half_h)
from hypmetric.domains import sample_interior_batch
from hypmetric.metrics import MetricId, evaluate

mp.mp.dps = 30

HALF = Domain.halfspace(2)
BALL = Domain.unit_ball(2)


def test_h_metric_oracle_values():
    # independent high-precision oracle: log(1 + c|x-y|/sqrt(d(x)d(y)))
    want = float(mp.log(1 + 1 / mp.sqrt(2)))
    assert h_metric(HALF, 1.0, [0, 1], [0, 2]) == pytest.approx(want, abs=1e-15)
    want = float(mp.log(1 + mp.sqrt(2)))
    assert h_metric(HALF, 2.0, [0, 1], [0, 2]) == pytest.approx(want, abs=1e-15)
    assert h_metric(HALF, 1.0, [2, 3], [2, 3]) == 0.0


def test_h_metric_errors():
    with pytest.raises(DomainError):
        h_metric(HALF, 1.0, [0, 0], [0, 1])
    with pytest.raises(ValueError):
        h_metric(HALF, 0.0, [0, 1], [0, 2])
    with pytest.raises(ValueError):
        h_metric(HALF, -2.0, [0, 1], [0, 2])


def test_th_half_h_oracle_values():
    want = float(1 / (1 + 2 * mp.sqrt(2)))
    assert th_half_h(HALF, 1.0, [0, 1], [0, 2]) == pytest.approx(want, abs=1e-15)
    assert th_half_h(HALF, 1.0, [5, 2], [5, 2]) == 0.0
    want = float(mp.mpf("0.5") / (mp.mpf("0.5") + mp.sqrt(mp.mpf("0.5"))))
    assert th_half_h(BALL, 2.0, [0, 0], [0.5, 0]) == pytest.approx(want, abs=1e-15)
    assert th_half_h(BALL, 2.0, [0, 0], [0.5, 0]) == pytest.approx(
        math.sqrt(2) - 1, abs=1e-15)


def test_j_and_j_star_oracle_values():
    assert j_metric(HALF, [0, 1], [0, 2]) == pytest.approx(math.log(2), abs=1e-15)
    assert j_star(HALF, [0, 1], [0, 2]) == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert j_metric(HALF, [1, 1], [1, 1]) == 0.0


def test_s_metric_oracle_values():
    want = float(mp.sqrt(10) / mp.sqrt(18))
    assert s_metric(HALF, [0, 1], [3, 2]) == pytest.approx(want, abs=1e-12)
    assert s_metric(HALF, [1, 2], [1, 2]) == 0.0
    # boundary point on the segment [x, y]: infimum path equals |x-y|
    punct = Domain.punctured([0, 0])
    assert s_metric(punct, [1, 0], [-1, 0]) == pytest.approx(1.0, abs=1e-15)
    # antipodal pair in the ball: known identity s = |x|
    assert s_metric(BALL, [0.5, 0], [-0.5, 0]) == pytest.approx(0.5, abs=1e-9)


def test_p_metric_oracle_values():
    want = float(mp.sqrt(10) / mp.sqrt(18))
    assert p_metric(HALF, [0, 1], [3, 2]) == pytest.approx(want, abs=1e-15)
    assert p_metric(HALF, [4, 1], [4, 1]) == 0.0
    # d(0)=1, d(0.5 e1)=0.5: p = 0.5/sqrt(0.25 + 2) = 1/3
    assert p_metric(BALL, [0, 0], [0.5, 0]) == pytest.approx(1.0 / 3.0, abs=1e-15)


def test_rho_half_space_oracle_values():
    assert rho_half_space([0, 1], [0, 2]) == pytest.approx(math.log(2), abs=1e-15)
    assert rho_half_space([3, 5], [3, 5]) == 0.0
    want = float(2 * mp.asinh(mp.sqrt(10) / (2 * mp.sqrt(2))))
    got = rho_half_space([0, 1], [3, 2])
    assert got == pytest.approx(want, abs=1e-14)
    # cross-check the arcosh form: ch(rho) = 1 + |x-y|^2 / (2 x_n y_n)
    assert math.cosh(got) == pytest.approx(1 + 10 / 4, rel=1e-14)
    with pytest.raises(DomainError):
        rho_half_space([0, 0], [0, 1])


def test_rho_unit_ball_oracle_values():
    assert rho_unit_ball([0, 0], [0.5, 0]) == pytest.approx(math.log(3), abs=1e-14)
    assert rho_unit_ball([0.1, 0.2], [0.1, 0.2]) == 0.0
    # additivity along a diameter: rho(-0.5 e1, 0.5 e1) = 2 log 3
    got = rho_unit_ball([0.5, 0], [-0.5, 0])
    assert got == pytest.approx(2 * math.log(3), abs=1e-13)
    # cross-check sh^2(rho/2) = |x-y|^2 / ((1-|x|^2)(1-|y|^2))
    assert math.sinh(got / 2) ** 2 == pytest.approx(1.0 / (0.75 * 0.75), rel=1e-13)
    with pytest.raises(DomainError):
        rho_unit_ball([1, 0], [0, 0])


def test_h_from_rho_oracle_values():
    want = float(mp.log(1 + 2 * mp.sinh(mp.log(2) / 2)))
    assert h_from_rho(1.0, math.log(2)) == pytest.approx(want, abs=1e-15)
    assert h_from_rho(1.0, math.log(2)) == pytest.approx(
        h_metric(HALF, 1.0, [0, 1], [0, 2]), abs=1e-15)
    assert h_from_rho(2.0, math.log(2)) == pytest.approx(
        math.log(1 + math.sqrt(2)), abs=1e-15)
    assert h_from_rho(3.0, 0.0) == 0.0
    with pytest.raises(ValueError):
        h_from_rho(1.0, -0.1)
    with pytest.raises(ValueError):
        h_from_rho(0.0, 1.0)


def test_identity_chain_tanh(rng):
    # th_half_h == tanh(h/2) and j_star == tanh(j/2) on 10^4 pairs, to 1e-14
    from hypmetric import backend
    for dom in (HALF, BALL):
        X = sample_interior_batch(dom, rng, 10_000)
        Y = sample_interior_batch(dom, rng, 10_000)
        kern = backend.kernels()
        r, dx, dy = kern.pair_stats(dom.kind, dom.params,
                                    np.ascontiguousarray(X),
                                    np.ascontiguousarray(Y))
        for c in (0.7, 1.0, 2.5):
            h = np.log1p(c * r / (np.sqrt(dx) * np.sqrt(dy)))
            th = r / (r + (2.0 / c) * np.sqrt(dx) * np.sqrt(dy))
            assert float(np.max(np.abs(th - np.tanh(h / 2)))) <= 1e-14
        j = np.log1p(r / np.minimum(dx, dy))
        jst = r / (r + 2.0 * np.minimum(dx, dy))
        assert float(np.max(np.abs(jst - np.tanh(j / 2)))) <= 1e-14
    # scalar API spot checks agree with the vectorized identity
    for c in (0.7, 2.5):
        h = h_metric(HALF, c, [0.3, 1.2], [2.0, 0.4])
        assert abs(th_half_h(HALF, c, [0.3, 1.2], [2.0, 0.4])
                   - math.tanh(h / 2)) <= 1e-14
    j = j_metric(HALF, [0.3, 1.2], [2.0, 0.4])
    assert abs(j_star(HALF, [0.3, 1.2], [2.0, 0.4]) - math.tanh(j / 2)) <= 1e-14


def test_prop_identity_h_vs_rho(rng):
    # h == log(1 + 2c sh(rho/2)) on the halfspace: 10^4 pairs per dimension,
    # 1e-12 relative
    for dim in (2, 3):
        dom = Domain.halfspace(dim)
        X = sample_interior_batch(dom, rng, 10_000)
        Y = sample_interior_batch(dom, rng, 10_000)
        r = np.linalg.norm(X - Y, axis=1)
        keep = r > 0
        X, Y, r = X[keep], Y[keep], r[keep]
        gm = np.sqrt(X[:, -1]) * np.sqrt(Y[:, -1])
        for c in (1.0, 1.7):
            h = np.log1p(c * r / gm)
            rho = 2.0 * np.arcsinh(r / (2.0 * gm))
            via = np.log1p(2.0 * c * np.sinh(0.5 * rho))
            assert float(np.max(np.abs(h - via) / h)) <= 1e-12
        # scalar API spot check
        x, y = X[0], Y[0]
        h = h_metric(dom, 1.7, x, y)
        assert abs(h_from_rho(1.7, rho_half_space(x, y)) - h) <= 1e-12 * h


def test_halfspace_s_equals_p(rng):
    X = sample_interior_batch(HALF, rng, 1000)
    Y = sample_interior_batch(HALF, rng, 1000)
    for x, y in zip(X, Y):
        s = s_metric(HALF, x, y)
        p = p_metric(HALF, x, y)
        assert abs(s - p) <= 1e-12


def test_boundary_guard():
    # points closer than 1e-300 to the boundary are rejected, not overflowed
    with pytest.raises(DomainError):
        h_metric(HALF, 1.0, [0.0, 1e-305], [0, 1])


def test_parse_metric():
    m = parse_metric("h:c=1.5")
    assert (m.tag, m.c) == ("h", 1.5)
    assert parse_metric("thh:c=2").c == 2.0
    for lit in ("j", "jstar", "s", "p", "rho"):
        assert parse_metric(lit).tag == lit
    for bad in ("h", "h:1.5", "h:c=", "h:c=abc", "q:c=1", "rho:c=1"):
        with pytest.raises(ValueError):
            parse_metric(bad)


def test_evaluate_dispatch():
    assert evaluate(MetricId("h", 1.0), HALF, [0, 1], [0, 2]) == pytest.approx(
        h_metric(HALF, 1.0, [0, 1], [0, 2]))
    assert evaluate(MetricId("rho"), HALF, [0, 1], [0, 2]) == pytest.approx(
        math.log(2))
    assert evaluate(MetricId("rho"), BALL, [0, 0], [0.5, 0]) == pytest.approx(
        math.log(3))
    with pytest.raises(ValueError):
        evaluate(MetricId("rho"), Domain.punctured([0, 0]), [1, 0], [2, 0])


def test_conformal_invariance(rng):
    from hypmetric.metrics import conformal_self_maps_half_space
    for dim in (2, 3):
        dom = Domain.halfspace(dim)
        X = sample_interior_batch(dom, rng, 300)
        Y = sample_interior_batch(dom, rng, 300)
        for name, f in conformal_self_maps_half_space(dim).items():
            for x, y in zip(X, Y):
                if np.array_equal(x, y):
                    continue
                base = h_metric(dom, 1.5, x, y)
                mapped = h_metric(dom, 1.5, np.atleast_2d(f(np.atleast_2d(x)))[0],
                                  np.atleast_2d(f(np.atleast_2d(y)))[0])
                assert abs(mapped - base) <= 1e-12 * base, name
