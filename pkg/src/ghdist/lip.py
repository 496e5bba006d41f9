"""Bijections, dilations and the exact Lipschitz distance of finite spaces.

Also holds the conversions between the multiplicative tolerance ``eps`` of
a near-isometry and the logarithmic dilation bound ``delta``.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from .errors import DomainError, MetricError, SizeMismatch
from .metric import FiniteMetricSpace, diameter, format_number

FLOAT_SLACK = 1e-12


@dataclass(frozen=True)
class Bijection:
    forward: tuple[int, ...]

    def __post_init__(self):
        fwd = tuple(int(j) for j in self.forward)
        if sorted(fwd) != list(range(len(fwd))):
            raise MetricError(f"{list(fwd)} is not a permutation")
        object.__setattr__(self, "forward", fwd)

    @classmethod
    def identity(cls, n: int) -> "Bijection":
        return cls(tuple(range(n)))

    def inverse(self) -> "Bijection":
        inv = [0] * len(self.forward)
        for i, j in enumerate(self.forward):
            inv[j] = i
        return Bijection(tuple(inv))

    def __len__(self):
        return len(self.forward)


def _check_sizes(f: Bijection, X: FiniteMetricSpace, Y: FiniteMetricSpace):
    if len(X) != len(Y):
        raise SizeMismatch(f"spaces have {len(X)} and {len(Y)} points")
    if len(f) != len(X):
        raise SizeMismatch("bijection size does not match the spaces")


def dilation(f: Bijection, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> tuple[Real, Real]:
    """``(dil f, dil f^-1)``; both are 1 on a single point."""
    _check_sizes(f, X, Y)
    n = len(X)
    if n == 1:
        one = Fraction(1) if X.exact and Y.exact else 1.0
        return one, one
    fw, dx, dy = f.forward, X.dist, Y.dist
    ratios = [dy[fw[i]][fw[j]] / dx[i][j] for i in range(n) for j in range(i + 1, n)]
    return max(ratios), max(1 / r for r in ratios)


def bilipschitz_cost(f: Bijection, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> Real:
    """max{dil f, dil f^-1} (not yet logged)."""
    return max(dilation(f, X, Y))


@dataclass
class LipResult:
    value: float
    status: str  # "exact" | "upper_bound" | "incomparable"
    witness: Bijection | None = None
    max_dilation: Real | None = None  # exp(value), exact when the inputs are
    nodes_explored: int = 0

    def to_dict(self, X: FiniteMetricSpace | None = None, Y: FiniteMetricSpace | None = None) -> dict:
        out = {"value": "inf" if math.isinf(self.value) else self.value,
               "status": self.status, "nodes_explored": self.nodes_explored}
        if self.max_dilation is not None:
            out["max_dilation"] = format_number(self.max_dilation)
        if self.witness is not None:
            w = {"forward": list(self.witness.forward)}
            if X is not None and Y is not None:
                dil, dil_inv = dilation(self.witness, X, Y)
                w.update(dil=format_number(dil), dil_inv=format_number(dil_inv))
            out["witness"] = w
        return out


class _BudgetExhausted(Exception):
    pass


class _PermSearch:
    def __init__(self, X, Y, budget, best, best_fw):
        n = len(X)
        self.n = n
        self.dx, self.dy = X.dist, Y.dist
        self.eps = 0 if X.exact and Y.exact else FLOAT_SLACK
        # points with the widest range of distances go first
        def spread(i):
            row = [X.dist[i][k] for k in range(n) if k != i]
            return max(row) / min(row)
        self.order = sorted(range(n), key=lambda i: (-spread(i), i))
        self.budget = budget
        self.nodes = 0
        self.best = best
        self.best_fw = best_fw

    def run(self, first_targets=None):
        self.assign = [None] * self.n
        self.used = [False] * self.n
        one = Fraction(1) if self.eps == 0 else 1.0
        try:
            if first_targets is None:
                self._dfs(0, one)
            else:
                self.nodes += 1
                for y in first_targets:
                    self._try(0, y, one)
        except _BudgetExhausted:
            return False
        return True

    def _try(self, depth, y, cur):
        x = self.order[depth]
        dx, dy, assign = self.dx, self.dy, self.assign
        worst = cur
        for k in self.order[:depth]:
            r = dy[y][assign[k]] / dx[x][k]
            if r < 1:
                r = 1 / r
            if r > worst:
                worst = r
                if worst > self.best + self.eps:
                    return
        assign[x] = y
        self.used[y] = True
        self._dfs(depth + 1, worst)
        self.used[y] = False
        assign[x] = None

    def _dfs(self, depth, cur):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetExhausted
        if depth == self.n:
            fw = tuple(self.assign)
            if cur < self.best - self.eps or (cur <= self.best + self.eps and fw < self.best_fw):
                self.best, self.best_fw = cur, fw
            return
        for y in range(self.n):
            if not self.used[y]:
                self._try(depth, y, cur)


def _subtree(args):
    X, Y, budget, best, best_fw, y = args
    s = _PermSearch(X, Y, budget, best, best_fw)
    done = s.run([y])
    return s.best, s.best_fw, s.nodes, done


def lip_exact(X: FiniteMetricSpace, Y: FiniteMetricSpace, budget: int | None = None,
              threads: int = 1) -> LipResult:
    """Least ``ln max{dil f, dil f^-1}`` over all bijections ``X -> Y``.

    Spaces of different size admit no bijection; the result is then
    ``inf`` with status ``incomparable``.  Among optimal bijections the
    lexicographically least forward array is returned.
    """
    n = len(X)
    if n != len(Y):
        return LipResult(math.inf, "incomparable")
    if n == 1:
        one = Fraction(1) if X.exact and Y.exact else 1.0
        return LipResult(0.0, "exact", Bijection.identity(1), one, 1)

    ident = Bijection.identity(n)
    best, best_fw = bilipschitz_cost(ident, X, Y), ident.forward
    if threads > 1:
        jobs = [(X, Y, budget, best, best_fw, y) for y in range(n)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_subtree, jobs))
        eps = 0 if X.exact and Y.exact else FLOAT_SLACK
        best = min(p[0] for p in parts)
        best_fw = min(p[1] for p in parts if p[0] <= best + eps)
        nodes = 1 + sum(p[2] for p in parts)
        done = all(p[3] for p in parts)
    else:
        s = _PermSearch(X, Y, budget, best, best_fw)
        done = s.run()
        best, best_fw, nodes = s.best, s.best_fw, s.nodes
    status = "exact" if done else "upper_bound"
    return LipResult(math.log(best), status, Bijection(best_fw), best, nodes)


def lip_brute_force(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> LipResult:
    """Enumerate all permutations; reference for tests."""
    if len(X) != len(Y):
        return LipResult(math.inf, "incomparable")
    best, best_f = None, None
    for perm in itertools.permutations(range(len(X))):
        f = Bijection(perm)
        c = bilipschitz_cost(f, X, Y)
        if best is None or c < best:
            best, best_f = c, f
    return LipResult(math.log(best), "exact", best_f, best, math.factorial(len(X)))


def eps_from_delta(delta: Real) -> float:
    """Largest eps whose two-sided (1 -/+ eps) bounds follow from a bijection
    with ``ln max{dil f, dil f^-1} <= delta``."""
    if delta < 0:
        raise DomainError(f"delta must be nonnegative, got {delta}")
    return min(-math.expm1(-delta), math.expm1(delta))


def delta_from_eps(eps: Real) -> float:
    """Largest delta for which a ``delta``-bilipschitz bijection satisfies
    the (1 -/+ eps) bounds; defined for ``0 <= eps < 1``."""
    if not 0 <= eps < 1:
        raise DomainError(f"eps must lie in [0, 1), got {eps}")
    return min(math.log1p(eps), -math.log1p(-eps))


def lemma1_check(f: Bijection, X: FiniteMetricSpace, Y: FiniteMetricSpace, eps: Real) -> bool:
    """True iff for every pair of points both distance ratios lie in
    ``[1 - eps, 1 + eps]`` in the multiplicative sense:

        (1-eps)|xx'| <= |f(x)f(x')| <= (1+eps)|xx'|
        (1-eps)|f(x)f(x')| <= |xx'| <= (1+eps)|f(x)f(x')|
    """
    _check_sizes(f, X, Y)
    fw, dx, dy = f.forward, X.dist, Y.dist
    lo, hi = 1 - eps, 1 + eps
    n = len(X)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = dx[i][j], dy[fw[i]][fw[j]]
            if not (lo * a <= b <= hi * a and lo * b <= a <= hi * b):
                return False
    return True


def graph_distortion_bound(delta: Real, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    """Distortion bound for the graph of a bijection with log-dilation delta:
    ``(e^delta - 1) * max{diam X, diam Y}``."""
    return math.expm1(delta) * float(max(diameter(X), diameter(Y)))

