#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the hot paths (batch defect evaluation, the pattern-search polish via a
full defect search, boundary path minimization, and metric-sphere ray
bisection) on both backends and cross-checks that they agree.

Usage:
    python benchmarks/bench_backends.py [--repeats 3] [--n 200000]
"""

import argparse
import math
import time

import numpy as np

from hypmetric import Domain, backend, verify
from hypmetric.balls import direction_grid
from hypmetric.domains import sample_interior_batch


def timed(fn, repeats):
    best = math.inf
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def build_cases(n):
    rng = np.random.default_rng(0)
    half = Domain.halfspace(2)
    ball = Domain.unit_ball(2)
    X = np.ascontiguousarray(sample_interior_batch(half, rng, n))
    Y = np.ascontiguousarray(sample_interior_batch(half, rng, n))
    Z = np.ascontiguousarray(sample_interior_batch(half, rng, n))
    BX = np.ascontiguousarray(sample_interior_batch(ball, rng, n // 10))
    BY = np.ascontiguousarray(sample_interior_batch(ball, rng, n // 10))
    dirs = np.ascontiguousarray(direction_grid(2, 5000))
    x0 = np.array([0.0, 1.0])

    def case_defect():
        kern = backend.kernels()
        return kern.defect_batch(half.kind, half.params, 1.5, X, Y, Z)

    def case_search():
        rec = verify.min_defect_search(ball, 1.8,
                                       verify.SearchConfig(seed=3, budget=60000))
        return rec.defect

    def case_path():
        kern = backend.kernels()
        return kern.boundary_path_min(ball.kind, ball.params, BX, BY)

    def case_rays():
        kern = backend.kernels()
        s, _ = kern.ray_h_crossing(half.kind, half.params, 1.0, x0, dirs,
                                   math.log(3.0), 512, 100, 512)
        return s

    return {
        f"defect_batch[{n}]": case_defect,
        "min_defect_search[budget=60k]": case_search,
        f"boundary_path_min[{n // 10}]": case_path,
        "ray_h_crossing[5000]": case_rays,
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--n", type=int, default=200_000)
    args = ap.parse_args()

    cases = build_cases(args.n)
    results = {}
    for name in ("numba", "numpy"):
        backend.use(name)
        for label, fn in cases.items():
            fn()  # warmup (JIT compile on the numba side)
            results[(name, label)], out = timed(fn, args.repeats)
            results[(name, label, "out")] = out

    print(f"{'case':36s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}  agreement")
    for label in cases:
        tb = results[("numba", label)]
        tp = results[("numpy", label)]
        a = np.asarray(results[("numba", label, "out")], dtype=float)
        b = np.asarray(results[("numpy", label, "out")], dtype=float)
        diff = float(np.max(np.abs(a - b))) if a.shape == b.shape else math.nan
        print(f"{label:36s} {tb * 1e3:9.1f}ms {tp * 1e3:9.1f}ms "
              f"{tp / tb:7.1f}x  max|diff| = {diff:.2e}")


if __name__ == "__main__":
    main()
