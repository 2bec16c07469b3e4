"""Acceptance suite: runs every stated criterion at its stated tolerance and
prints one pass/fail line per criterion.

Expected constants are recomputed here with mpmath (independent of the
package's frozen copies). Criterion 10 (determinism) runs the CLI report
twice and compares bytes.
"""

import time

import mpmath as mp
import pytest

from hypmetric import verify
from hypmetric.acceptance import domain_suite, run_report
from hypmetric.cli import main as cli_main

mp.mp.dps = 40


@pytest.fixture(scope="module")
def report():
    return run_report(seed=0)


def _claims(report, prefix):
    out = [c for c in report["claims"] if c["id"].startswith(prefix)]
    assert out, f"no claims with prefix {prefix}"
    return out


def _assert_all_pass(report, prefix, label):
    claims = _claims(report, prefix)
    bad = [c for c in claims if c["status"] == "fail"]
    status = "FAIL" if bad else "PASS"
    print(f"ACCEPTANCE {label}: {status} ({len(claims)} claims)")
    for c in bad:
        print(f"  failed: {c['id']}: expected {c['expected']}, "
              f"observed {c['observed']}")
    assert not bad


def test_criterion_1_oracle_value_table(report):
    # cross-check the package's frozen constants against mpmath from scratch
    want = {
        "A1:h(c=1)": mp.log(1 + 1 / mp.sqrt(2)),
        "A1:h(c=2)": mp.log(1 + mp.sqrt(2)),
        "A1:j": mp.log(2),
        "A1:jstar": mp.mpf(1) / 3,
        "A1:s": mp.sqrt(10) / mp.sqrt(18),
        "A1:p": mp.sqrt(10) / mp.sqrt(18),
        "A1:rho_ball": mp.log(3),
    }
    by_id = {c["id"]: c for c in report["claims"]}
    for cid, target in want.items():
        observed = float(by_id[cid]["observed"])
        assert abs(observed - float(target)) <= 1e-9, cid
    _assert_all_pass(report, "A1:", "1 (oracle value table)")


def test_criterion_2_hyperbolic_identity(report):
    _assert_all_pass(report, "A2:", "2 (identity h = f(rho) on halfspace)")


def test_criterion_2_runtime():
    start = time.perf_counter()
    claims = []
    from hypmetric.acceptance import criterion_hyperbolic_identity
    criterion_hyperbolic_identity(claims, seed=0)
    elapsed = time.perf_counter() - start
    print(f"ACCEPTANCE 2 runtime: {elapsed:.3f}s (< 1 s required)")
    assert elapsed < 1.0
    assert all(c.status == "pass" for c in claims)


def test_criterion_3_family_limits(report):
    by_id = {c["id"]: c for c in report["claims"]}
    assert abs(float(mp.log(mp.mpf("0.5"))) - (-0.6931471805599453)) < 1e-15
    _assert_all_pass(report, "A3:", "3 (counterexample family limits)")
    assert "log(0.5)" in by_id["A3:boundary-family:c=0.5"]["expected"]


def test_criterion_4_critical_constants(report):
    _assert_all_pass(report, "A4:", "4 (critical constants by bisection)")


def test_criterion_4_runtime_per_domain():
    for name, dom in domain_suite().items():
        start = time.perf_counter()
        iv = verify.critical_c(dom, verify.CriticalCConfig(seed=0))
        elapsed = time.perf_counter() - start
        print(f"ACCEPTANCE 4 runtime[{name}]: {elapsed:.1f}s "
              f"(< 60 s required), {iv.budget} evaluations")
        assert elapsed < 60.0
        assert iv.budget <= 1_000_000


def test_criterion_5_bound_sweeps(report):
    _assert_all_pass(report, "A5:", "5 (bound sweeps and sharp constants)")


def test_criterion_6_extremal_sharpness(report):
    _assert_all_pass(report, "A6:", "6 (exact extremal configurations)")


def test_criterion_7_retracted_bound_witness(report):
    _assert_all_pass(report, "A7:", "7 (retracted upper bound refuted)")


def test_criterion_8_hball_equality(report):
    _assert_all_pass(report, "A8:", "8 (h-sphere = Euclidean = rho sphere)")


def test_criterion_9_rho_ball_grid(report):
    _assert_all_pass(report, "A9:", "9 (rho-ball radii cross-check grid)")
    recorded = [c for c in _claims(report, "A9:")
                if c["status"] == "recorded"]
    assert recorded, "the paper-formula deviation must be recorded"
    text = recorded[0]["observed"]
    assert "brute max" in text and "paper" in text


def test_overall_flag(report):
    assert report["results"]["overall_pass"] is True
    assert report["results"]["claims_failed"] == 0
    print(f"ACCEPTANCE overall: PASS ({report['results']['claims_total']} claims)")


def test_criterion_10_report_determinism(tmp_path, capsys):
    f1, f2 = tmp_path / "r1.json", tmp_path / "r2.json"
    code1 = cli_main(["report", "--seed", "0", "--output", str(f1)])
    code2 = cli_main(["report", "--seed", "0", "--output", str(f2)])
    capsys.readouterr()
    assert code1 == 0 and code2 == 0
    b1, b2 = f1.read_bytes(), f2.read_bytes()
    assert b1 == b2
    print(f"ACCEPTANCE 10: PASS (byte-identical reports, {len(b1)} bytes)")
