import numpy as np
import pytest

from hypmetric import (Domain, DomainError, SamplingError,
                       UnsupportedDimensionError, contains, dist_to_boundary,
                       nearest_boundary_point, parse_domain, path_infimum,
                       sample_interior)
from hypmetric.domains import sample_interior_batch

INVPHI = 0.6180339887498949


def brute_path_over_line(x, y, lo=-50.0, hi=50.0, iters=200):
    """Independent 1D golden-section oracle for the halfspace boundary
    path minimum (the bent path is convex in the boundary point)."""
    def f(t):
        z = np.array([t, 0.0])
        return np.linalg.norm(x - z) + np.linalg.norm(z - y)

    a, b = lo, hi
    for _ in range(iters):
        w = b - a
        t1, t2 = b - INVPHI * w, a + INVPHI * w
        if f(t1) < f(t2):
            b = t2
        else:
            a = t1
    return f(0.5 * (a + b))


def test_contains_examples(domains):
    assert contains(domains["halfspace"], [0, 1]) is True
    assert contains(domains["ball"], [0, 1]) is False  # boundary excluded
    assert contains(domains["segment"], [0, 0]) is False  # midpoint of segment
    assert contains(domains["segment"], [0, 0.1])
    assert contains(domains["punctured"], [0, 0]) is False
    assert contains(domains["box"], [0.5, 0.5])
    assert contains(domains["box"], [0.5, 1.0]) is False


def test_contains_dimension_mismatch(domains):
    with pytest.raises(ValueError):
        contains(domains["halfspace"], [0, 1, 2])


def test_dist_to_boundary_examples(domains):
    assert dist_to_boundary(domains["halfspace"], [3, 2]) == 2.0
    assert dist_to_boundary(domains["ball"], [0.5, 0]) == 0.5
    # point-to-segment via projection: (2,0) is 1 away from endpoint (1,0)
    assert dist_to_boundary(domains["segment"], [2, 0]) == pytest.approx(1.0, abs=1e-15)
    assert dist_to_boundary(domains["segment"], [0.5, 0.25]) == pytest.approx(0.25)
    assert dist_to_boundary(domains["twice"], [0.5, 0]) == pytest.approx(0.5)
    assert dist_to_boundary(domains["box"], [0.2, 0.5]) == pytest.approx(0.2)


def test_dist_to_boundary_outside_raises(domains):
    with pytest.raises(DomainError):
        dist_to_boundary(domains["halfspace"], [0, -1])
    with pytest.raises(DomainError):
        dist_to_boundary(domains["ball"], [2, 0])
    with pytest.raises(DomainError):
        dist_to_boundary(domains["punctured"], [0, 0])


def test_nearest_boundary_point_examples(domains):
    np.testing.assert_allclose(
        nearest_boundary_point(domains["halfspace"], [3, 2]), [3, 0])
    np.testing.assert_allclose(
        nearest_boundary_point(domains["punctured"], [1, 0]), [0, 0])
    np.testing.assert_allclose(
        nearest_boundary_point(domains["ball"], [0.5, 0]), [1, 0])


def test_nearest_boundary_point_ties_deterministic(domains):
    # box center: faces tried in order lo_1, hi_1, lo_2, hi_2
    np.testing.assert_allclose(
        nearest_boundary_point(domains["box"], [0.5, 0.5]), [0.0, 0.5])
    # twice-punctured midpoint: first puncture wins
    np.testing.assert_allclose(
        nearest_boundary_point(domains["twice"], [0, 0]), [-1, 0])
    # ball center: +e1 by convention
    np.testing.assert_allclose(
        nearest_boundary_point(domains["ball"], [0, 0]), [1, 0])


@pytest.mark.parametrize("name", ["halfspace", "ball", "punctured", "twice",
                                  "segment", "box"])
def test_nearest_point_realizes_distance(domains, name, rng):
    dom = domains[name]
    X = sample_interior_batch(dom, rng, 200)
    for x in X:
        q = nearest_boundary_point(dom, x)
        assert abs(np.linalg.norm(x - q) - dist_to_boundary(dom, x)) <= 1e-12


def test_path_infimum_examples(domains):
    # halfspace reflection: |x - mirrored y| = sqrt(18)
    assert path_infimum(domains["halfspace"], [0, 1], [3, 2]) == pytest.approx(
        np.sqrt(18.0), abs=1e-12)
    assert path_infimum(domains["punctured"], [1, 0], [0, 1]) == pytest.approx(2.0)
    # unit-ball antipodal pair: minimum over S^1 is through (+-1, 0), value 2
    # (brute scan oracle: f(0) = 0.5 + 1.5 = 2 is the global minimum)
    assert path_infimum(domains["ball"], [0.5, 0], [-0.5, 0]) == pytest.approx(
        2.0, abs=1e-9)


def test_path_infimum_equal_points(domains):
    for dom in domains.values():
        x = [0.5, 0.5] if dom.kind != 0 else [0.5, 0.5]
        if contains(dom, x):
            assert path_infimum(dom, x, x) == pytest.approx(
                2.0 * dist_to_boundary(dom, x), abs=1e-12)


@pytest.mark.parametrize("name", ["halfspace", "ball", "punctured", "twice",
                                  "segment", "box"])
def test_path_infimum_symmetry_and_lower_bound(domains, name, rng):
    dom = domains[name]
    X = sample_interior_batch(dom, rng, 100)
    Y = sample_interior_batch(dom, rng, 100)
    for x, y in zip(X, Y):
        pxy = path_infimum(dom, x, y)
        pyx = path_infimum(dom, y, x)
        assert abs(pxy - pyx) <= 1e-12 * max(1.0, pxy)
        assert pxy >= np.linalg.norm(x - y) - 1e-12


def test_halfspace_reflection_vs_numeric_minimizer(rng):
    dom = Domain.halfspace(2)
    X = sample_interior_batch(dom, rng, 1000)
    Y = sample_interior_batch(dom, rng, 1000)
    worst = 0.0
    for x, y in zip(X, Y):
        exact = path_infimum(dom, x, y)
        brute = brute_path_over_line(x, y)
        worst = max(worst, abs(exact - brute))
    assert worst <= 1e-8


def test_ball_path_matches_dense_scan(rng):
    dom = Domain.unit_ball(2)
    X = sample_interior_batch(dom, rng, 50)
    Y = sample_interior_batch(dom, rng, 50)
    th = np.linspace(0.0, 2.0 * np.pi, 100001)
    Z = np.stack([np.cos(th), np.sin(th)], axis=1)
    for x, y in zip(X, Y):
        scan = float(np.min(np.linalg.norm(Z - x, axis=1)
                            + np.linalg.norm(Z - y, axis=1)))
        assert path_infimum(dom, x, y) <= scan + 1e-9


def test_path_infimum_high_dimension_unsupported():
    dom = Domain.unit_ball(4)
    with pytest.raises(UnsupportedDimensionError):
        path_infimum(dom, [0.1, 0, 0, 0], [0, 0.1, 0, 0])


def test_exact_path_kinds_work_in_higher_dim():
    dom = Domain.halfspace(5)
    x = np.zeros(5)
    x[-1] = 1.0
    y = np.ones(5)
    yr = y.copy()
    yr[-1] = -1.0
    assert path_infimum(dom, x, y) == pytest.approx(np.linalg.norm(x - yr))


def test_sample_interior(domains):
    x = sample_interior(domains["halfspace"], 1, ([-1, 0], [1, 1]))
    assert x[-1] > 0
    assert -1 <= x[0] <= 1
    x = sample_interior(domains["ball"], 2)
    assert np.linalg.norm(x) < 1
    x = sample_interior(domains["segment"], 3)
    assert dist_to_boundary(domains["segment"], x) >= 1e-6
    # determinism per seed
    np.testing.assert_array_equal(sample_interior(domains["ball"], 7),
                                  sample_interior(domains["ball"], 7))


def test_sample_interior_budget_error():
    dom = Domain.unit_ball(2)
    # a bounding box that misses the domain entirely
    with pytest.raises(SamplingError):
        sample_interior(dom, 0, ([5, 5], [6, 6]), budget=5)


def test_parse_domain_round_trip():
    for lit in ("halfspace:2", "ball:3", "punctured:2:0,0",
                "twice:2:-1,0:1,0", "segment:2:-1,0:1,0", "box:2:0,0:1,1"):
        dom = parse_domain(lit)
        assert parse_domain(dom.literal()).kind == dom.kind


def test_parse_domain_errors():
    for bad in ("gauss:2", "ball", "ball:x", "punctured:2", "box:2:0,0",
                "punctured:2:0", "twice:2:0,0:0,0"):
        with pytest.raises(ValueError):
            parse_domain(bad)


def test_domain_validation():
    with pytest.raises(ValueError):
        Domain.box([0, 0], [1, 0])
    with pytest.raises(ValueError):
        Domain.twice_punctured([1, 1], [1, 1])
    with pytest.raises(ValueError):
        Domain.halfspace(1)
