"""Relations, distortion and the exact Gromov-Hausdorff distance.

Twice the GH distance between finite spaces is the least distortion over
all correspondences.  :func:`gh_exact` finds it by depth-first search over
increasing sequences of cells of the ``|X| x |Y|`` grid (row-major order),
stopping a branch as soon as it covers every row and column.  Distortion
only grows when pairs are added, so some inclusion-minimal correspondence
is optimal and every one of those is reached.  Because the search visits
sequences in lexicographic order and only prunes branches whose bound is
strictly worse than the incumbent, the first optimum found is the
lexicographically least optimal pair list.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Iterable

from .errors import MetricError, SizeLimit, SpaceMismatch
from .metric import FiniteMetricSpace, PointSubset, diameter, format_number

DEFAULT_MAX_EXACT = 36  # cells |X|*|Y| the exact solver accepts without a budget
ORACLE_CAP = 12
FLOAT_SLACK = 1e-12


@dataclass(frozen=True)
class Relation:
    left_size: int
    right_size: int
    pairs: frozenset

    def __post_init__(self):
        pairs = frozenset((int(i), int(j)) for i, j in self.pairs)
        if not pairs:
            raise MetricError("a relation must contain at least one pair")
        for i, j in pairs:
            if not (0 <= i < self.left_size and 0 <= j < self.right_size):
                raise MetricError(f"pair {(i, j)} out of range")
        object.__setattr__(self, "pairs", pairs)

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def is_correspondence(self) -> bool:
        return (len({i for i, _ in self.pairs}) == self.left_size
                and len({j for _, j in self.pairs}) == self.right_size)

    def transpose(self) -> "Relation":
        return type(self)(self.right_size, self.left_size, frozenset((j, i) for i, j in self.pairs))


class Correspondence(Relation):
    """A relation whose projections onto both factors are surjective."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_correspondence():
            raise MetricError("relation does not cover every point of both spaces")

    @classmethod
    def complete(cls, n: int, m: int) -> "Correspondence":
        return cls(n, m, frozenset(itertools.product(range(n), range(m))))

    @classmethod
    def from_map(cls, forward: Iterable[int], right_size: int | None = None) -> "Correspondence":
        """Graph of a surjective map given as ``forward[i] = j``."""
        forward = list(forward)
        m = right_size if right_size is not None else max(forward) + 1
        return cls(len(forward), m, frozenset(enumerate(forward)))


def distortion(sigma: Relation, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> Real:
    if sigma.left_size != len(X) or sigma.right_size != len(Y):
        raise SpaceMismatch("relation sizes do not match the spaces")
    pairs = sigma.sorted_pairs()
    dx, dy = X.dist, Y.dist
    best = dx[0][0] - dx[0][0]
    for a, (i, j) in enumerate(pairs):
        for k, l in pairs[a + 1:]:
            v = abs(dx[i][k] - dy[j][l])
            if v > best:
                best = v
    return best


def witness_to_dict(R: Relation, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> dict:
    return {"pairs": [list(p) for p in R.sorted_pairs()],
            "distortion": format_number(distortion(R, X, Y))}


@dataclass
class GHResult:
    value: Real
    status: str  # "exact" | "upper_bound" | "lower_bound"
    witness: Correspondence | None = None
    nodes_explored: int = 0
    lower_bound: Real | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self, X: FiniteMetricSpace | None = None, Y: FiniteMetricSpace | None = None) -> dict:
        out = {"value": float(self.value), "status": self.status,
               "nodes_explored": self.nodes_explored}
        if isinstance(self.value, Fraction):
            out["value_exact"] = str(self.value)
        if self.lower_bound is not None:
            out["lower_bound"] = format_number(self.lower_bound)
        if self.witness is not None:
            if X is not None and Y is not None:
                out["witness"] = witness_to_dict(self.witness, X, Y)
            else:
                out["witness"] = {"pairs": [list(p) for p in self.witness.sorted_pairs()]}
        return out


def gh_lower_bound_diam(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> Real:
    return abs(diameter(X) - diameter(Y)) / 2


def gh_upper_bound_diam(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> Real:
    # certified by the complete relation X x Y
    return max(diameter(X), diameter(Y)) / 2


class _BudgetExhausted(Exception):
    pass


class _Found(Exception):
    pass


class _Search:
    """Branch-and-bound state for one GH instance."""

    def __init__(self, X, Y, budget, best, best_cells, from_search, first_only=False):
        self.n, self.m = len(X), len(Y)
        n, m = self.n, self.m
        self.exact = X.exact and Y.exact
        self.eps = 0 if self.exact else FLOAT_SLACK
        dx, dy = X.dist, Y.dist
        cells = [(i, j) for i in range(n) for j in range(m)]
        # cost[c][p] = | |x_c x_p| - |y_c y_p| |
        self.cost = [[abs(dx[a][i] - dy[b][j]) for (i, j) in cells] for (a, b) in cells]
        self.zero = dx[0][0] - dx[0][0]
        self.budget = budget
        self.nodes = 0
        self.best = best
        self.best_cells = best_cells
        self.from_search = from_search
        # first_only: best is the known optimum, stop at the first leaf within
        # it (the lexicographically least one).  Otherwise only strict
        # improvements are searched for.
        self.first_only = first_only

    def _cut(self, v):
        if self.first_only:
            return v > self.best + self.eps
        return v + self.eps >= self.best

    def run(self, first_cells=None):
        n, m = self.n, self.m
        self.row_cov = [0] * n
        self.col_cov = [0] * m
        self.stack: list[int] = []
        inc = [self.zero] * (n * m)
        try:
            if first_cells is None:
                self._dfs(-1, self.zero, inc)
            else:
                self.nodes += 1
                for c in first_cells:
                    self._descend(c, self.zero, inc)
        except _BudgetExhausted:
            return False
        except _Found:
            pass
        return True

    def _record(self, cur):
        self.best = cur
        self.best_cells = tuple(self.stack)
        self.from_search = True
        if self.first_only:
            raise _Found

    def _descend(self, c, cur, inc):
        m = self.m
        i, j = divmod(c, m)
        new_cur = inc[c] if inc[c] > cur else cur
        if self._cut(new_cur):
            return
        if i == self.n - 1:
            # last row: columns left of j can no longer be covered
            for b in range(j):
                if self.col_cov[b] == 0:
                    return
        row = self.cost[c]
        new_inc = [a if a > b else b for a, b in zip(inc, row)]
        self.stack.append(c)
        self.row_cov[i] += 1
        self.col_cov[j] += 1
        self._dfs(c, new_cur, new_inc)
        self.col_cov[j] -= 1
        self.row_cov[i] -= 1
        self.stack.pop()

    def _dfs(self, last, cur, inc):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetExhausted
        n, m = self.n, self.m
        last_row = last // m
        if last_row == n - 1 and all(self.col_cov):
            self._record(cur)
            return
        # lower bound from points that still need a partner
        lb = cur
        start = last + 1
        for a in range(last_row + 1, n):
            v = min(inc[a * m:(a + 1) * m])
            if v > lb:
                lb = v
        for b in range(m):
            if self.col_cov[b] == 0:
                cands = [inc[c] for c in range(start + ((b - start) % m), n * m, m)]
                if not cands:
                    return
                v = min(cands)
                if v > lb:
                    lb = v
        if self._cut(lb):
            return
        stop = min((last_row + 2) * m, n * m)
        for c in range(start, stop):
            self._descend(c, cur, inc)


def _greedy_bijection(X, Y):
    n = len(X)
    order_x = sorted(range(n), key=lambda i: (-max(X.dist[i]), i))
    order_y = sorted(range(n), key=lambda j: (-max(Y.dist[j]), j))
    used, forward = set(), [None] * n
    for i in order_x:
        best_j, best_v = None, None
        for j in order_y:
            if j in used:
                continue
            v = max((abs(X.dist[i][k] - Y.dist[j][forward[k]]) for k in range(n)
                     if forward[k] is not None), default=0)
            if best_v is None or v < best_v:
                best_j, best_v = j, v
        forward[i] = best_j
        used.add(best_j)
    return forward


def _subtree(args):
    X, Y, budget, best, best_cells, from_search, first = args
    s = _Search(X, Y, budget, best, best_cells, from_search)
    done = s.run([first])
    return s.best, s.best_cells, s.from_search, s.nodes, done


def gh_exact(X: FiniteMetricSpace, Y: FiniteMetricSpace, budget: int | None = None,
             max_exact: int = DEFAULT_MAX_EXACT, threads: int = 1,
             initial: Correspondence | None = None) -> GHResult:
    """Exact GH distance with a minimising correspondence as witness.

    ``budget`` caps the number of search nodes; when it runs out the result
    has status ``upper_bound`` and carries the best correspondence found so
    far plus the diameter lower bound.  With ``threads > 1`` the first-level
    subtrees are searched in separate processes (the budget then applies to
    each subtree); the returned value and witness do not depend on it.
    ``initial`` is an optional known correspondence used as a starting bound.
    """
    n, m = len(X), len(Y)
    if budget is None and n * m > max_exact:
        raise SizeLimit(f"{n}x{m} cells exceed the exact-solver cap {max_exact}; give a budget")

    complete = Correspondence.complete(n, m)
    best = distortion(complete, X, Y)
    best_cells = tuple(range(n * m))
    if n == m and n > 1:
        R = Correspondence.from_map(_greedy_bijection(X, Y), m)
        v = distortion(R, X, Y)
        if v < best:
            best, best_cells = v, tuple(i * m + j for i, j in R.sorted_pairs())
    if initial is not None:
        v = distortion(initial, X, Y)
        if v < best:
            best, best_cells = v, tuple(i * m + j for i, j in initial.sorted_pairs())

    # phase 1: optimal value, searching only for strict improvements
    if threads > 1 and m > 1:
        jobs = [(X, Y, budget, best, best_cells, False, c) for c in range(m)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_subtree, jobs))
        nodes = 1 + sum(p[3] for p in parts)
        done = all(p[4] for p in parts)
        for p in parts:
            if p[2] and p[0] < best:
                best, best_cells = p[0], p[1]
    else:
        s = _Search(X, Y, budget, best, best_cells, False)
        done = s.run()
        best, best_cells, nodes = s.best, s.best_cells, s.nodes

    # phase 2: the first correspondence in search order attaining it
    if done:
        rest = None if budget is None else max(budget - nodes, 1)
        s = _Search(X, Y, rest, best, best_cells, False, first_only=True)
        if s.run() and s.from_search:
            best_cells = s.best_cells
        nodes += s.nodes

    witness = Correspondence(n, m, frozenset(divmod(c, m) for c in best_cells))
    lower = gh_lower_bound_diam(X, Y)
    if done:
        return GHResult(best / 2, "exact", witness, nodes, best / 2)
    return GHResult(best / 2, "upper_bound", witness, nodes, lower)


def gh_enumerate_oracle(X: FiniteMetricSpace, Y: FiniteMetricSpace, cap: int = ORACLE_CAP) -> GHResult:
    """Brute force over all 2^(|X||Y|) relations; reference for tests only."""
    n, m = len(X), len(Y)
    if n * m > cap:
        raise SizeLimit(f"oracle enumerates at most {cap} cells, got {n * m}")
    cells = list(itertools.product(range(n), range(m)))
    best, best_pairs, count = None, None, 0
    for bits in itertools.product((0, 1), repeat=n * m):
        count += 1
        pairs = [c for c, b in zip(cells, bits) if b]
        if {i for i, _ in pairs} != set(range(n)) or {j for _, j in pairs} != set(range(m)):
            continue
        dis = max(abs(X.dist[i][k] - Y.dist[j][l]) for (i, j) in pairs for (k, l) in pairs)
        if best is None or dis < best or (dis == best and pairs < best_pairs):
            best, best_pairs = dis, pairs
    R = Correspondence(n, m, frozenset(best_pairs))
    return GHResult(best / 2, "exact", R, count, best / 2)


def nearest_point_correspondence(A: PointSubset, B: PointSubset) -> Correspondence:
    """Pair every point of A with its nearest point of B and vice versa.

    Indices refer to positions inside ``A.indices`` and ``B.indices``.  Its
    distortion is at most twice the Hausdorff distance between A and B.
    """
    if A.space is not B.space and A.space != B.space:
        raise SpaceMismatch("subsets live in different spaces")
    d = A.space.dist
    pairs = set()
    for ia, a in enumerate(A.indices):
        jb = min(range(len(B)), key=lambda t: (d[a][B.indices[t]], t))
        pairs.add((ia, jb))
    for jb, b in enumerate(B.indices):
        ia = min(range(len(A)), key=lambda t: (d[A.indices[t]][b], t))
        pairs.add((ia, jb))
    return Correspondence(len(A), len(B), frozenset(pairs))
