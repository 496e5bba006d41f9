"""Exit criteria.  Each test appends one PASS/FAIL line to the terminal summary."""
import math
import random
import time
from fractions import Fraction as F

import pytest

from conftest import ACCEPTANCE_LINES
from ghdist.gh import distortion, gh_enumerate_oracle, gh_exact, gh_lower_bound_diam, gh_upper_bound_diam
from ghdist.lip import Bijection, delta_from_eps, eps_from_delta, lip_exact
from ghdist.metric import diameter, hausdorff_distance, scale
from ghdist.random_spaces import random_space
from ghdist.spaces import (common_line_ambient, delta1, fiber_projection, geometric_progression,
                           integer_coords, line_space, r_d_window, real_window, two_point, z_t_coords)
from ghdist.verify import case1_chain, case1_quadratic, case2_holds


def report(name, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_ac01_oracle_equivalence():
    rng = random.Random(101)
    start = time.perf_counter()
    mismatches = 0
    for _ in range(200):
        X, Y = random_space(rng, rng.randint(1, 3)), random_space(rng, rng.randint(1, 3))
        if gh_exact(X, Y).value != gh_enumerate_oracle(X, Y).value:
            mismatches += 1
    elapsed = time.perf_counter() - start
    report("AC1 gh_exact == enumeration oracle on 200 pairs (|X|,|Y| <= 3)",
           mismatches == 0 and elapsed < 120, f"mismatches={mismatches}, {elapsed:.1f}s")


def test_ac02_point_formula():
    rng = random.Random(102)
    bad = 0
    for _ in range(100):
        X = random_space(rng, rng.randint(1, 6))
        if gh_exact(delta1(), X).value != diameter(X) / 2:
            bad += 1
    report("AC2 gh(point, X) == diam X / 2 on 100 spaces up to 6 points", bad == 0, f"bad={bad}")


def test_ac03_diameter_sandwich():
    rng = random.Random(103)
    violations = 0
    for _ in range(1000):
        X, Y = random_space(rng, rng.randint(1, 4)), random_space(rng, rng.randint(1, 4))
        v = gh_exact(X, Y).value
        if not gh_lower_bound_diam(X, Y) <= v <= gh_upper_bound_diam(X, Y):
            violations += 1
    report("AC3 diameter sandwich on 1000 pairs (<= 4 points)", violations == 0,
           f"violations={violations}")


def test_ac04_scaling_geodesic():
    ok = True
    for X in (two_point(1), line_space([F(0), F(1), F(3)]), line_space([F(0), F(2), F(3)])):
        rho = gh_exact(X, delta1()).value / 2
        ok &= gh_exact(X, scale(X, F(3, 2))).value == rho
        ok &= gh_exact(X, scale(X, F(1, 2))).value == rho
    report("AC4 gh(X, 3/2 X) == gh(X, 1/2 X) == rho, exact", ok)


def test_ac05_case1():
    root_zero = case1_quadratic(F(1, 3)) == 0
    infeasible = all(not case1_chain(F(e), F(1)) and case1_quadratic(F(e)) > 0
                     for e in ("0", "0.1", "0.2", "0.3"))
    feasible = all(case1_chain(e, F(1)) and case1_quadratic(e) <= 0
                   for e in (F(1, 3), F("0.4"), F("0.9")))
    report("AC5 3e^2-10e+3 root at 1/3; chain infeasible below, feasible above",
           root_zero and infeasible and feasible)


def test_ac06_case2():
    grid = [F(k, 100) for k in range(101)]
    ok = all(case2_holds(e) == (e >= F(3, 5)) for e in grid)
    ok &= 4 - 4 * F(3, 5) == 1 + F(3, 5)
    report("AC6 4-4e <= 1+e iff e >= 3/5 on 101 grid points, equality at 3/5", ok)


def test_ac07_corollary():
    bound = min(delta_from_eps(F(1, 3)), delta_from_eps(F(3, 5)))
    err = abs(bound - math.log(4 / 3))
    ok = err <= 1e-15 and min(math.log(4 / 3), math.log(3 / 2)) == math.log(4 / 3)
    report("AC7 min{delta(1/3), delta(3/5)} == ln(4/3) within 1e-15", ok, f"err={err:.1e}")


def test_ac08_lipschitz():
    rng = random.Random(108)
    ok = True
    for lam in (F(3, 2), F(2), F(3)):
        for _ in range(50):
            X = random_space(rng, rng.randint(2, 6))
            r = lip_exact(X, scale(X, lam))
            ok &= r.max_dilation <= lam and r.value <= math.log(lam)
        for _ in range(10):
            X = random_space(rng, 2)
            r = lip_exact(X, scale(X, lam))
            ok &= r.max_dilation == lam and r.value == math.log(lam)
    for _ in range(20):
        X = random_space(rng, rng.randint(1, 6))
        r = lip_exact(X, X)
        ok &= r.value == 0 and r.witness == Bijection.identity(len(X))
    report("AC8 lip(X, lam X) <= ln lam, equality on two points, lip(X, X) = 0", ok)


def test_ac09_conversions():
    ok = True
    for k in range(100):
        eps = k / 100
        ok &= eps_from_delta(delta_from_eps(eps)) <= eps
        delta = k / 20
        ok &= delta_from_eps(eps_from_delta(delta)) <= delta
    ok &= eps_from_delta(math.log(2)) == 0.5
    report("AC9 eps/delta conversions conservative; eps_from_delta(ln 2) == 1/2", ok)


def test_ac10_divergence():
    vals = [gh_lower_bound_diam(geometric_progression(N), scale(geometric_progression(N), 2))
            for N in range(1, 11)]
    ok = vals == [F(3 ** N - 3, 2) for N in range(1, 11)]
    ok &= all(a < b for a, b in zip(vals, vals[1:])) and vals[5] == 363 and vals[5] > 100
    report("AC10 geometric progression lower bound (3^N-3)/2, N = 1..10", ok, f"N=6 -> {vals[5]}")


def test_ac11a_curve_hausdorff():
    _, (A, B) = common_line_ambient(z_t_coords(F(3, 10), 2, F(1, 10)), integer_coords(2))
    dh = hausdorff_distance(A, B)
    report("AC11a hausdorff(Z_t window, Z window) in [0.2, 0.4]", F(2, 10) <= dh <= F(4, 10), f"{dh}")


def test_ac11b_curve_projection():
    line = real_window(1, F(1, 2))
    Rd = r_d_window(F(1, 4), 1, F(1, 2), fiber=two_point(1))
    dis = distortion(fiber_projection(len(line), 2), Rd, line)
    report("AC11b fiber-projection distortion for R_d(0.25, 1, 0.5) == 0.5", dis == F(1, 2),
           f"computed {dis}")


def test_ac12_triangle():
    rng = random.Random(112)
    worst = None
    for _ in range(300):
        X, Y, Z = (random_space(rng, rng.randint(1, 3)) for _ in range(3))
        gap = gh_exact(X, Z).value - gh_exact(X, Y).value - gh_exact(Y, Z).value
        worst = gap if worst is None else max(worst, gap)
    report("AC12 gh triangle inequality on 300 triples (<= 3 points)", worst <= 1e-12,
           f"max excess {float(worst):.3g}")
