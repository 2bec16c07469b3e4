"""The acceptance suite: every quantitative claim the artifact must reproduce,
run as one deterministic report.

Expected constants marked "oracle" below were frozen from independent
high-precision evaluation (mpmath, 40 digits) of the defining formulas; the
test suite recomputes them from scratch. Each criterion yields claims with a
pass/fail status; paper-formula deviations that the suite is required to
surface (not fix) are recorded with status "recorded" and do not count
against the overall conjunction.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import backend, balls, verify
from .domains import Domain
from .metrics import (h_metric, j_metric, j_star, p_metric, rho_unit_ball,
                      s_metric)

# oracle values (mpmath, 40 digits)
H_C1 = 0.5347999967395703       # log(1 + 1/sqrt(2))
H_C2 = 0.8813735870195430       # log(1 + sqrt(2))
J_VAL = 0.6931471805599453      # log 2
JSTAR_VAL = 1.0 / 3.0
S_P_VAL = 0.7453559924999299    # sqrt(10)/sqrt(18)
RHO_B_VAL = 1.0986122886681098  # log 3
LOG_HALF = -0.6931471805599453
LOG_3_4 = -0.2876820724517809   # log 0.75
T53_RADIUS = 2.8284271247461903  # 2 sqrt(2)
T53_RHO = 1.7627471740390861     # 2 arsinh(1)


def domain_suite():
    """The six canonical 2D domains exercised by the acceptance criteria."""
    return {
        "halfspace": Domain.halfspace(2),
        "ball": Domain.unit_ball(2),
        "punctured": Domain.punctured([0.0, 0.0]),
        "twice": Domain.twice_punctured([-1.0, 0.0], [1.0, 0.0]),
        "segment": Domain.segment_complement([-1.0, 0.0], [1.0, 0.0]),
        "box": Domain.box([0.0, 0.0], [1.0, 1.0]),
    }


@dataclass
class Claim:
    id: str
    status: str   # pass | fail | recorded
    expected: str
    observed: str

    def to_json(self):
        return {"id": self.id, "status": self.status,
                "expected": self.expected, "observed": self.observed}


def _claim(claims, cid, ok, expected, observed):
    claims.append(Claim(cid, "pass" if ok else "fail", expected, observed))


def _record(claims, cid, expected, observed):
    claims.append(Claim(cid, "recorded", expected, observed))


# --- criterion 1: oracle value table ---------------------------------------

def criterion_oracle_table(claims):
    half = Domain.halfspace(2)
    tol = 1e-9
    checks = [
        ("A1:h(c=1)", h_metric(half, 1.0, [0, 1], [0, 2]), H_C1),
        ("A1:h(c=2)", h_metric(half, 2.0, [0, 1], [0, 2]), H_C2),
        ("A1:j", j_metric(half, [0, 1], [0, 2]), J_VAL),
        ("A1:jstar", j_star(half, [0, 1], [0, 2]), JSTAR_VAL),
        ("A1:s", s_metric(half, [0, 1], [3, 2]), S_P_VAL),
        ("A1:p", p_metric(half, [0, 1], [3, 2]), S_P_VAL),
        ("A1:rho_ball", rho_unit_ball([0, 0], [0.5, 0]), RHO_B_VAL),
    ]
    for cid, got, want in checks:
        _claim(claims, cid, abs(got - want) <= tol,
               f"{want!r} within 1e-9", repr(got))
    sp_eq = abs(s_metric(half, [0, 1], [3, 2]) - p_metric(half, [0, 1], [3, 2]))
    _claim(claims, "A1:s=p", sp_eq <= 1e-12, "halfspace identity s = p to 1e-12",
           f"|s-p| = {sp_eq!r}")


# --- criterion 2: identity with the hyperbolic metric -----------------------

def criterion_hyperbolic_identity(claims, seed):
    kern = backend.kernels()
    for dim in (2, 3):
        dom = Domain.halfspace(dim)
        rng = np.random.default_rng(seed + dim)
        X, Y = verify.sample_pair_sweep(dom, 10000, rng)
        c = 1.5
        h = kern.h_batch(dom.kind, dom.params, c, X, Y)
        u = (np.linalg.norm(X - Y, axis=1)
             / (2.0 * np.sqrt(X[:, -1]) * np.sqrt(Y[:, -1])))
        rho = 2.0 * np.arcsinh(u)
        via_rho = np.log1p(2.0 * c * np.sinh(0.5 * rho))
        rel = float(np.max(np.abs(h - via_rho) / h))
        _claim(claims, f"A2:identity-H{dim}", rel <= 1e-12,
               "max relative error <= 1e-12 over 10^4 pairs", repr(rel))


# --- criterion 3: counterexample family limits ------------------------------

def criterion_family_limits(claims):
    rec = verify.family_defect_boundary_collapse(Domain.punctured([0.0, 0.0]),
                                       [1.0, 0.0], 0.5, 1e-8)
    gap = abs(rec.defect - LOG_HALF)
    _claim(claims, "A3:boundary-family:c=0.5", gap <= 1e-3,
           f"defect(k=1e-8) within 1e-3 of log(0.5) = {LOG_HALF!r}",
           f"defect = {rec.defect!r}, gap = {gap!r}")
    rec = verify.family_defect_inscribed(Domain.unit_ball(2), [-1.0, 0.0],
                                       [1.0, 0.0], 1.5, 1e-8)
    gap = abs(rec.defect - LOG_3_4)
    _claim(claims, "A3:inscribed-family:c=1.5", gap <= 1e-3,
           f"defect(k=1e-8) within 1e-3 of log(0.75) = {LOG_3_4!r}",
           f"defect = {rec.defect!r}, gap = {gap!r}")


# --- criterion 4: critical constants ----------------------------------------

def criterion_critical_constants(claims, seed):
    intervals = {}
    for name, dom in domain_suite().items():
        iv = verify.critical_c(dom, verify.CriticalCConfig(seed=seed))
        lo_w, hi_w, grade = verify.theory_window(dom)
        ok = lo_w <= iv.lo and iv.hi <= hi_w and iv.budget <= 1_000_000
        _claim(claims, f"A4:critical-c:{name}", ok,
               f"interval in [{lo_w}, {hi_w}] with <= 1e6 defect evaluations "
               f"({grade})",
               f"[{iv.lo!r}, {iv.hi!r}], evals = {iv.budget}")
        intervals[name] = iv
    return intervals


# --- criterion 5: bound sweeps ----------------------------------------------

SWEEP_SAMPLES = 100_000

#: (lemma, domain selector, params); None selects every suite domain
SWEEP_MATRIX = [
    ("L4.1", None, {"c0": 1.0, "c1": 2.0}),
    ("C4.2", None, {"c": 0.5}),
    ("L4.3", None, {"c": 0.5}),
    ("L4.3", ("halfspace",), {"c": 2.0}),
    ("L4.5", None, {"c": 2.0}),
    ("L4.6", None, {"c": 2.0}),
    ("C4.7", None, {"c": 1.0}),
    ("C4.7-convex", ("halfspace", "ball", "box"), {"c": 1.0}),
    ("L4.8", ("halfspace",), {"c": 1.0}),
    ("L4.8", ("halfspace",), {"c": 2.0}),
]

#: sharp-constant attainment asserted where float distances can represent the
#: approach: every domain for the extremal-configuration lemmas, the domains
#: with exactly-representable tiny boundary distances for the limit lemmas
ATTAIN_DOMAINS = {
    "L4.1": ("halfspace", "punctured", "segment"),
    "L4.5": ("halfspace", "ball", "punctured", "twice", "segment", "box"),
    "L4.6": ("halfspace", "ball", "punctured", "twice", "segment", "box"),
    "L4.8": ("halfspace",),
}


def _params_tag(params):
    return ",".join(f"{k}={v:g}" for k, v in sorted(params.items()))


def criterion_bound_sweeps(claims, seed):
    suite = domain_suite()
    reports = {}
    for lemma, selector, params in SWEEP_MATRIX:
        names = selector if selector is not None else tuple(suite)
        for name in names:
            rep = verify.quotient_bounds_check(lemma, suite[name], params,
                                               SWEEP_SAMPLES, seed)
            tag = f"{lemma}[{_params_tag(params)}]:{name}"
            reports[tag] = rep
            _claim(claims, f"A5:{tag}", len(rep.violations) == 0,
                   f"zero violations of [{rep.theoretical_lo!r}, "
                   f"{rep.theoretical_hi!r}] at slack 1e-12 over "
                   f"{rep.sample_count} samples",
                   f"min = {rep.empirical_min!r}, max = {rep.empirical_max!r}, "
                   f"violations = {len(rep.violations)}")
            if lemma in ATTAIN_DOMAINS and name in ATTAIN_DOMAINS[lemma]:
                if lemma == "L4.8" and params["c"] != 1.0:
                    continue
                gap_lo = rep.empirical_min - rep.theoretical_lo
                gap_hi = rep.theoretical_hi - rep.empirical_max
                ok = gap_lo <= 0.02 and gap_hi <= 0.02
                _claim(claims, f"A5:attain:{tag}", ok,
                       "empirical extremes within 0.02 of the sharp constants",
                       f"gap_lo = {gap_lo!r}, gap_hi = {gap_hi!r}")
    return reports


# --- criterion 6: exact sharpness of the extremal configurations ------------

def criterion_extremal_sharpness(claims):
    half = Domain.halfspace(2)
    for c in (0.5, 1.0, 2.0, 5.0):
        target = math.sqrt(1.0 + 1.0 / c ** 2)
        x, y = verify.extremal_config_jstar(c)
        q = verify._jstar_quotient_at(half, c, x, y)
        _claim(claims, f"A6:jstar:c={c:g}", abs(q - target) <= 1e-12,
               f"quotient sqrt(1+1/c^2) = {target!r} within 1e-12", repr(q))
        x, y = verify.extremal_config_p(c)
        q = verify._p_quotient_at(half, c, x, y)
        _claim(claims, f"A6:p:c={c:g}", abs(q - target) <= 1e-12,
               f"quotient sqrt(1+1/c^2) = {target!r} within 1e-12", repr(q))


# --- criterion 7: retracted-bound witness ------------------------------------

def criterion_retracted_bound_witness(claims, seed):
    rep = verify.quotient_bounds_check("R4.4", Domain.halfspace(2),
                                       {"c": 0.5}, 10_000, seed)
    count = rep.extras["witness_count"]
    _claim(claims, "A7:retracted-upper-bound", count >= 1,
           "at least one equal-distance pair with h > c j (c = 0.5)",
           f"witnesses = {count}, max h/j = {rep.empirical_max!r}")
    return rep


# --- criterion 8: halfspace h-sphere equals a Euclidean and rho sphere -------

def criterion_hball_equality(claims):
    dom = Domain.halfspace(2)
    x = np.array([0.0, 1.0])
    r = math.log(3.0)
    pts, ncross = balls.sample_h_sphere(dom, 1.0, x, r, 1000,
                                        return_crossing_counts=True)
    ball, rho_radius = balls.h_ball_half_space(x, r, 1.0)
    circ_err = float(np.max(np.abs(
        np.linalg.norm(pts - ball.center[None, :], axis=1) - ball.radius)))
    _claim(claims, "A8:euclidean-sphere", circ_err <= 1e-9,
           f"10^3 h-sphere samples on S^1((0,3), {T53_RADIUS!r}) within 1e-9",
           f"max |dist - radius| = {circ_err!r}")
    u = np.linalg.norm(pts - x[None, :], axis=1) / (2.0 * np.sqrt(pts[:, -1]))
    rho_err = float(np.max(np.abs(2.0 * np.arcsinh(u) - T53_RHO)))
    _claim(claims, "A8:rho-sphere", rho_err <= 1e-9,
           f"rho distance 2 arsinh(1) = {T53_RHO!r} within 1e-9",
           f"max |rho - 2 arsinh(1)| = {rho_err!r}, "
           f"crossings per ray = {int(ncross.max())}")


# --- criterion 9: unit-ball inclusion radii cross-check ----------------------

def criterion_rho_ball_radii_grid(claims):
    worst = 0.0
    monotone_all = True
    paper_dev = 0.0
    spotlight = None
    for nx in [i / 10.0 for i in range(10)]:
        x = np.array([nx, 0.0])
        for t in [i / 10.0 for i in range(1, 10)]:
            R = 2.0 * math.atanh(t)
            for c in (1.0, 2.0):
                out = balls.inclusion_radii_rho_unit_ball(x, R, c)
                derived, brute, paper = out["derived"], out["brute"], out["paper"]
                worst = max(worst, abs(derived.r0 - brute.r0),
                            abs(derived.r1 - brute.r1))
                monotone_all &= out["monotone_in_angle"]
                paper_dev = max(paper_dev, abs(paper.r0 - brute.r0),
                                abs(paper.r1 - brute.r1))
                if nx == 0.5 and t == 0.5 and c == 1.0:
                    spotlight = (brute, paper)
    _claim(claims, "A9:derived-vs-brute", worst <= 1e-6,
           "proof-derived pole values match brute-force rho-sphere extrema "
           "to 1e-6 over the (|x|, t, c) grid", f"max gap = {worst!r}")
    _claim(claims, "A9:monotone-profile", monotone_all,
           "h along the rho-sphere is monotone in the polar angle everywhere",
           f"monotone = {monotone_all}")
    brute, paper = spotlight
    _record(claims, "A9:paper-formula-deviation",
            "displayed closed forms differ from the sphere extrema; "
            "deviation recorded, not corrected",
            f"at |x|=0.5, t=0.5, c=1: brute max = {brute.r1!r} vs paper "
            f"{paper.r1!r}; brute min = {brute.r0!r} vs paper {paper.r0!r}; "
            f"max |paper - brute| over grid = {paper_dev!r}")


# --- assembly ----------------------------------------------------------------

def run_report(seed=0):
    """Run criteria 1-9 and assemble the deterministic report object
    (criterion 10, byte-identical reruns, is checked by running this twice)."""
    claims = []
    criterion_oracle_table(claims)
    criterion_hyperbolic_identity(claims, seed)
    criterion_family_limits(claims)
    criterion_critical_constants(claims, seed)
    criterion_bound_sweeps(claims, seed)
    criterion_extremal_sharpness(claims)
    criterion_retracted_bound_witness(claims, seed)
    criterion_hball_equality(claims)
    criterion_rho_ball_radii_grid(claims)
    overall = all(c.status == "pass" for c in claims if c.status != "recorded")
    return {
        "command": "report",
        "config": {"seed": seed, "backend": backend.backend_name(),
                   "sweep_samples": SWEEP_SAMPLES},
        "results": {"overall_pass": overall,
                    "claims_total": len(claims),
                    "claims_failed": sum(c.status == "fail" for c in claims)},
        "claims": [c.to_json() for c in claims],
    }
