import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import rational_spaces
from ghdist.errors import DomainError, MetricError, SizeMismatch
from ghdist.gh import Correspondence, distortion, gh_exact
from ghdist.lip import (Bijection, bilipschitz_cost, delta_from_eps, dilation, eps_from_delta,
                        lemma1_check, lip_brute_force, lip_exact)
from ghdist.metric import diameter, scale
from ghdist.spaces import delta1, line_space, two_point


def ratio_scan(fw, X, Y):
    ratios = [Y[fw[i], fw[j]] / X[i, j] for i, j in itertools.combinations(range(len(X)), 2)]
    return max(ratios), max(1 / r for r in ratios)


def test_bijection_validation():
    with pytest.raises(MetricError):
        Bijection((0, 0))
    assert Bijection((2, 0, 1)).inverse().forward == (1, 2, 0)


def test_dilation_identity_and_scale():
    X = line_space([F(0), F(1), F(3)])
    assert dilation(Bijection.identity(3), X, X) == (1, 1)
    assert dilation(Bijection.identity(3), X, scale(X, F(5, 2))) == (F(5, 2), F(2, 5))
    assert dilation(Bijection.identity(1), delta1(), delta1()) == (1, 1)


def test_dilation_reversal():
    X = line_space([F(0), F(1), F(3)])
    f = Bijection((2, 1, 0))
    assert dilation(f, X, X) == ratio_scan(f.forward, X, X) == (2, 2)


def test_dilation_size_mismatch():
    with pytest.raises(SizeMismatch):
        dilation(Bijection.identity(2), two_point(1), delta1())


def test_lip_examples():
    X = line_space([F(0), F(1), F(3)])
    r = lip_exact(X, X)
    assert r.value == 0 and r.witness == Bijection.identity(3)
    r = lip_exact(delta1(), two_point(1))
    assert r.status == "incomparable" and math.isinf(r.value) and r.witness is None
    assert lip_exact(delta1(), delta1()).value == 0


@pytest.mark.parametrize("lam", [F(3, 2), F(2), F(3)])
def test_lip_two_point_scaling(lam):
    r = lip_exact(two_point(1), scale(two_point(1), lam))
    assert r.max_dilation == lam and r.value == math.log(lam)
    # both bijections of a two-point space give dilation lam
    for p in itertools.permutations(range(2)):
        assert bilipschitz_cost(Bijection(p), two_point(1), scale(two_point(1), lam)) == lam


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(rational_spaces(n, n), rational_spaces(n, n))))
def test_lip_matches_brute_force(XY):
    X, Y = XY
    a, b = lip_exact(X, Y), lip_brute_force(X, Y)
    assert a.max_dilation == b.max_dilation
    assert bilipschitz_cost(a.witness, X, Y) == a.max_dilation
    best = [p for p in itertools.permutations(range(len(X)))
            if bilipschitz_cost(Bijection(p), X, Y) == a.max_dilation]
    assert a.witness.forward == min(best)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(rational_spaces(n, n), rational_spaces(n, n))))
def test_lip_symmetric(XY):
    X, Y = XY
    a, b = lip_exact(X, Y), lip_exact(Y, X)
    assert a.max_dilation == b.max_dilation
    assert bilipschitz_cost(a.witness.inverse(), Y, X) == b.max_dilation


@settings(max_examples=60, deadline=None)
@given(rational_spaces(max_points=5), st.randoms(use_true_random=False))
def test_lip_zero_on_isometric_copy(X, rnd):
    perm = list(range(len(X)))
    rnd.shuffle(perm)
    assert lip_exact(X, X.subspace(perm)).value == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(rational_spaces(n, n), rational_spaces(n, n))))
def test_gh_lip_compatibility(XY):
    X, Y = XY
    r = lip_exact(X, Y)
    graph = Correspondence.from_map(r.witness.forward, len(Y))
    bound = (r.max_dilation - 1) * max(diameter(X), diameter(Y))
    assert distortion(graph, X, Y) <= bound
    assert gh_exact(X, Y).value <= bound / 2


def test_budget():
    X = line_space([F(k) for k in (0, 1, 3, 7, 8, 12)])
    Y = line_space([F(k) for k in (0, 2, 3, 4, 9, 11)])
    full, cut = lip_exact(X, Y), lip_exact(X, Y, budget=5)
    assert cut.status == "upper_bound" and cut.max_dilation >= full.max_dilation
    assert lip_exact(X, Y, threads=2).witness == full.witness


def test_eps_from_delta_examples():
    assert eps_from_delta(0) == 0
    assert eps_from_delta(math.log(2)) == 0.5
    assert abs(eps_from_delta(math.log(4 / 3)) - 0.25) <= 1e-15
    with pytest.raises(DomainError):
        eps_from_delta(-1)


def test_delta_from_eps_examples():
    assert delta_from_eps(0) == 0
    assert abs(delta_from_eps(F(1, 3)) - 0.2876820724517809) <= 1e-15
    assert abs(delta_from_eps(F(1, 3)) - math.log(4 / 3)) <= 1e-15
    assert delta_from_eps(0.5) == math.log(1.5)
    for bad in (1, 1.5, -0.1):
        with pytest.raises(DomainError):
            delta_from_eps(bad)


@given(st.floats(min_value=0, max_value=0.999999))
def test_conversions_conservative_eps(eps):
    assert eps_from_delta(delta_from_eps(eps)) <= eps + 1e-15


@given(st.floats(min_value=0, max_value=20))
def test_conversions_conservative_delta(delta):
    assert delta_from_eps(eps_from_delta(delta)) <= delta + 1e-15


def test_lemma1_examples():
    X = line_space([F(0), F(1), F(3)])
    ident = Bijection.identity(3)
    assert lemma1_check(ident, X, X, 0)
    eps = F(1, 5)
    assert lemma1_check(ident, X, scale(X, 1 + eps), eps)
    assert not lemma1_check(ident, X, scale(X, 2), F(1, 2))
    with pytest.raises(SizeMismatch):
        lemma1_check(ident, X, two_point(1), 0)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(rational_spaces(n, n), rational_spaces(n, n))),
       st.fractions(min_value=0, max_value=F(99, 100)), st.fractions(min_value=0, max_value=1))
def test_lemma1_monotone(XY, eps, more):
    X, Y = XY
    f = Bijection.identity(len(X))
    if lemma1_check(f, X, Y, eps):
        assert lemma1_check(f, X, Y, eps + more)


@settings(max_examples=60, deadline=None)
@given(rational_spaces(min_points=2, max_points=5), st.fractions(min_value=F(1, 10), max_value=10))
def test_dilation_multiplicative(X, lam):
    assert dilation(Bijection.identity(len(X)), X, scale(X, lam)) == (lam, 1 / lam)


def test_result_json():
    X = two_point(1)
    d = lip_exact(X, scale(X, 2)).to_dict(X, scale(X, 2))
    assert d["witness"] == {"forward": [0, 1], "dil": "2", "dil_inv": "1/2"}
    assert lip_exact(delta1(), X).to_dict()["value"] == "inf"
