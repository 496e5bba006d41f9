import math
from fractions import Fraction as F

import pytest

from ghdist.verify import (CHECK_IDS, VerifyConfig, case1_chain, case1_quadratic, case2_holds,
                           check_case1_arithmetic, check_case2_arithmetic, check_corollary_bound,
                           check_curve_smoke, check_diameter_sandwich, check_divergence_demo,
                           check_scaling_geodesic, run_suite)
from ghdist.spaces import line_space, two_point


def test_sandwich_small():
    rec = check_diameter_sandwich(trials=100, max_points=4, seed=1)
    assert rec.passed and rec.computed["violations"] == 0
    assert rec.computed["point_case_exact"]
    with pytest.raises(ValueError):
        check_diameter_sandwich(max_points=6)


def test_scaling_geodesic_examples():
    rec = check_scaling_geodesic([two_point(1)], ((F(1, 2), F(3, 2)), (F(1), F(1))))
    assert rec.passed
    rows = rec.computed["rows"]
    assert rows[0]["gh"] == F(1, 2) and rows[1]["gh"] == 0
    # d_GH(X, point) = 1/2 = 2 rho
    assert rows[-1]["rho"] == F(1, 4) == rows[-1]["gh_three_halves"] == rows[-1]["gh_half"]


def test_scaling_geodesic_more_spaces():
    spaces = [line_space([F(0), F(1), F(3), F(4)]), line_space([F(0), F(2), F(3)])]
    assert check_scaling_geodesic(spaces).passed


def test_case1_values():
    assert case1_quadratic(F(1, 3)) == 0
    assert case1_quadratic(F(0)) == 3 and not case1_chain(F(0), F(1))
    assert case1_quadratic(F(1, 2)) == F(3, 4) - 5 + 3 < 0 and case1_chain(F(1, 2), F(1))
    assert check_case1_arithmetic().passed


def test_case1_rejects_bad_grid():
    with pytest.raises(ValueError):
        check_case1_arithmetic((F(1),))


def test_case2_values():
    assert case2_holds(F(3, 5)) and 4 - 4 * F(3, 5) == 1 + F(3, 5) == F(8, 5)
    assert not case2_holds(F(0))
    assert case2_holds(F(1))
    assert check_case2_arithmetic().passed


def test_corollary():
    rec = check_corollary_bound()
    assert rec.passed
    assert rec.computed["bound"] > 0
    assert rec.computed["min_ln4_3_ln3_2"] == math.log(4 / 3)


def test_divergence_values():
    rec = check_divergence_demo()
    vals = rec.computed["lower_bounds"]
    assert vals[0] == 0 and vals[4] == 120 and vals[5] == 363
    assert rec.computed["first_N_above"] == 5 and rec.passed


def test_curve_smoke_values():
    rec = check_curve_smoke()
    c = rec.computed
    assert rec.passed
    assert F(2, 10) <= c["hausdorff_zt_z"] <= F(4, 10)
    assert c["gh_endpoint_rd"] == 0 and c["gh_endpoint_zt"] == 0
    assert c["projection_distortion"] <= c["projection_bound"]


def test_every_record_has_anchor():
    report = run_suite()
    assert [c.id for c in report.checks] == sorted(CHECK_IDS)
    assert all(c.paper_anchor for c in report.checks)
    assert report.ok and report.summary == {"passed": 7, "failed": 0, "total": 7}


def test_report_deterministic():
    a = run_suite(VerifyConfig(seed=3, sandwich_trials=50)).to_json()
    b = run_suite(VerifyConfig(seed=3, sandwich_trials=50)).to_json()
    assert a == b


def test_threads_same_pass_fail():
    one = run_suite(VerifyConfig(sandwich_trials=50))
    two = run_suite(VerifyConfig(sandwich_trials=50, threads=2))
    assert [(c.id, c.passed) for c in one.checks] == [(c.id, c.passed) for c in two.checks]
    assert one.to_json() == two.to_json()


def test_single_check_and_unknown():
    assert [c.id for c in run_suite(only="case2_arithmetic").checks] == ["case2_arithmetic"]
    with pytest.raises(KeyError):
        run_suite(only="nope")


def test_failure_is_reported():
    rec = check_divergence_demo(n_max=3, threshold=10 ** 6)
    assert not rec.passed
    assert rec.computed["first_N_above"] is None
