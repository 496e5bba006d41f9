"""Finite metric spaces, subsets, Hausdorff distance and the JSON space format.

Distances are stored either as ``fractions.Fraction`` (exact mode) or as
Python floats.  Exact mode is what makes equalities such as
``gh(X, Δ₁) == diam(X) / 2`` testable without tolerance.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Sequence

import numpy as np

from .errors import AxiomViolation, DegenerateScale, DomainError, MetricError, SizeLimit, SpaceMismatch

DEFAULT_TOL = 1e-9
DEFAULT_SIZE_CAP = 4096


@dataclass(frozen=True, eq=True)
class FiniteMetricSpace:
    """A labelled point set with a full distance matrix.

    Instances are not validated on construction; go through :func:`validate`
    for untrusted input.  Constructors in :mod:`ghdist.spaces` build valid
    spaces directly.
    """

    labels: tuple[str, ...]
    dist: tuple[tuple[Real, ...], ...]
    name: str = field(default="", compare=False)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for row in self.dist for v in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.dist[i][j]

    def as_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.dist], dtype=float)

    def relabel(self, labels: Sequence[str]) -> "FiniteMetricSpace":
        if len(labels) != len(self):
            raise MetricError("label count does not match space size")
        return FiniteMetricSpace(tuple(labels), self.dist, self.name)

    def subspace(self, indices: Sequence[int], name: str = "") -> "FiniteMetricSpace":
        idx = list(indices)
        return FiniteMetricSpace(
            tuple(self.labels[i] for i in idx),
            tuple(tuple(self.dist[i][j] for j in idx) for i in idx),
            name,
        )


def _zero_like(values) -> Real:
    return Fraction(0) if all(isinstance(v, Fraction) for v in values) else 0.0


def validate(labels: Sequence[str], matrix: Sequence[Sequence[Real]], tol: Real = DEFAULT_TOL,
             name: str = "") -> FiniteMetricSpace:
    """Check the metric axioms and return an immutable space.

    Asymmetry up to ``tol`` is averaged away, diagonal noise up to ``tol`` is
    zeroed.  Raises :class:`AxiomViolation` naming the first failing axiom in
    the order shape, finiteness, diagonal, nonnegativity, symmetry,
    positivity, triangle.
    """
    labels = tuple(str(s) for s in labels)
    n = len(labels)
    rows = [list(r) for r in matrix]
    if n == 0:
        raise AxiomViolation("shape", (), "a metric space needs at least one point")
    if len(rows) != n or any(len(r) != n for r in rows):
        raise AxiomViolation("shape", (), f"expected a {n}x{n} matrix")
    if len(set(labels)) != n:
        raise MetricError("point labels must be distinct")

    for i in range(n):
        for j in range(n):
            v = rows[i][j]
            if not isinstance(v, Fraction):
                if isinstance(v, bool) or not isinstance(v, Real) or not math.isfinite(v):
                    raise AxiomViolation("finite", (i, j), f"entry {v!r} is not a finite real")
                rows[i][j] = float(v)
    for i in range(n):
        if abs(rows[i][i]) > tol:
            raise AxiomViolation("diagonal", (i,), f"d[{i}][{i}] = {rows[i][i]}")
        rows[i][i] = _zero_like([rows[i][i]])
    for i in range(n):
        for j in range(n):
            if rows[i][j] < -tol:
                raise AxiomViolation("nonnegativity", (i, j), f"d[{i}][{j}] = {rows[i][j]}")
    for i in range(n):
        for j in range(i + 1, n):
            a, b = rows[i][j], rows[j][i]
            if abs(a - b) > tol:
                raise AxiomViolation("symmetry", (i, j), f"{a} != {b}")
            if a != b:
                rows[i][j] = rows[j][i] = (a + b) / 2
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] <= 0:
                raise AxiomViolation("positivity", (i, j), "distinct points at zero distance")

    witness = _first_triangle_violation(rows, tol)
    if witness is not None:
        i, j, k = witness
        raise AxiomViolation("triangle", witness,
                             f"d[{i}][{k}] = {rows[i][k]} > d[{i}][{j}] + d[{j}][{k}]")
    return FiniteMetricSpace(labels, tuple(tuple(r) for r in rows), name)


def _first_triangle_violation(rows, tol):
    n = len(rows)
    if all(isinstance(v, Fraction) for r in rows for v in r):
        for i in range(n):
            ri = rows[i]
            for j in range(n):
                rij, rj = ri[j], rows[j]
                for k in range(n):
                    if ri[k] - rij - rj[k] > tol:
                        return (i, j, k)
        return None
    d = np.array(rows, dtype=float)
    for i in range(n):
        # bad[j, k]: d[i,k] > d[i,j] + d[j,k]
        bad = d[i][None, :] - d[i][:, None] - d > tol
        if bad.any():
            j, k = np.argwhere(bad)[0]
            return (i, int(j), int(k))
    return None


def is_metric(labels, matrix, tol: Real = DEFAULT_TOL) -> bool:
    try:
        validate(labels, matrix, tol)
    except AxiomViolation:
        return False
    return True


def diameter(X: FiniteMetricSpace) -> Real:
    return max((v for row in X.dist for v in row), default=0)


def scale(X: FiniteMetricSpace, lam: Real, collapse: bool = False) -> FiniteMetricSpace:
    """Multiply every distance by ``lam``.

    ``lam == 0`` only makes sense as the collapse to a single point and must
    be requested with ``collapse=True``.
    """
    if lam < 0:
        raise DomainError(f"scale factor must be nonnegative, got {lam}")
    if lam == 0:
        if len(X) == 1:
            return X
        if not collapse:
            raise DegenerateScale("scaling by 0 identifies all points; pass collapse=True")
        zero = Fraction(0) if X.exact and isinstance(lam, (int, Fraction)) else 0.0
        return FiniteMetricSpace((X.labels[0],), ((zero,),), X.name)
    return FiniteMetricSpace(X.labels, tuple(tuple(v * lam for v in row) for row in X.dist), X.name)


def l1_product(X: FiniteMetricSpace, Y: FiniteMetricSpace, cap: int = DEFAULT_SIZE_CAP,
               name: str = "") -> FiniteMetricSpace:
    """Cartesian product with the coordinate-sum metric; points ordered x-major."""
    n, m = len(X), len(Y)
    if n * m > cap:
        raise SizeLimit(f"product has {n * m} points, cap is {cap}")
    labels = tuple(f"({a},{b})" for a in X.labels for b in Y.labels)
    rows = []
    for i in range(n):
        for k in range(m):
            rows.append(tuple(X.dist[i][j] + Y.dist[k][l] for j in range(n) for l in range(m)))
    return FiniteMetricSpace(labels, tuple(rows), name)


@dataclass(frozen=True)
class PointSubset:
    space: FiniteMetricSpace
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted(set(int(i) for i in self.indices)))
        if not idx:
            raise MetricError("subset must be non-empty")
        if idx[0] < 0 or idx[-1] >= len(self.space):
            raise MetricError(f"subset index out of range for a {len(self.space)}-point space")
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return len(self.indices)


def subset(space: FiniteMetricSpace, indices) -> PointSubset:
    return PointSubset(space, tuple(indices))


def _check_same_space(A: PointSubset, B: PointSubset):
    if A.space is not B.space and A.space != B.space:
        raise SpaceMismatch("subsets live in different spaces")


def set_distance(A: PointSubset, B: PointSubset) -> Real:
    _check_same_space(A, B)
    d = A.space.dist
    return min(d[a][b] for a in A.indices for b in B.indices)


def directed_hausdorff(A: PointSubset, B: PointSubset) -> Real:
    """max over a in A of the distance from a to B."""
    _check_same_space(A, B)
    d = A.space.dist
    return max(min(d[a][b] for b in B.indices) for a in A.indices)


def hausdorff_distance(A: PointSubset, B: PointSubset) -> Real:
    # For finite sets the infimum over neighbourhood radii is attained at the max-min value.
    return max(directed_hausdorff(A, B), directed_hausdorff(B, A))


# --- JSON space format -------------------------------------------------------

def parse_number(x, rational: bool = False) -> Real:
    """Read a JSON scalar; strings like ``"3/4"`` are exact rationals."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MetricError(f"cannot parse number {x!r}") from exc
    if isinstance(x, bool) or not isinstance(x, Real):
        raise MetricError(f"expected a number, got {x!r}")
    if rational:
        return Fraction(repr(x)) if isinstance(x, float) else Fraction(x)
    return float(x)


def format_number(v: Real):
    if isinstance(v, Fraction):
        return str(v)
    return float(v)


def space_from_dict(obj: dict, tol: Real = DEFAULT_TOL, rational: bool = False) -> FiniteMetricSpace:
    try:
        points, matrix = obj["points"], obj["d"]
    except (KeyError, TypeError) as exc:
        raise MetricError("space JSON needs 'points' and 'd'") from exc
    if not isinstance(matrix, list) or any(not isinstance(r, list) for r in matrix):
        raise AxiomViolation("shape", (), "'d' must be a list of rows")
    rational = rational or any(isinstance(v, str) for r in matrix for v in r)
    rows = [[parse_number(v, rational) for v in r] for r in matrix]
    return validate(points, rows, tol, name=str(obj.get("name", "")))


def space_to_dict(X: FiniteMetricSpace, meta: dict | None = None) -> dict:
    out = {"name": X.name, "points": list(X.labels),
           "d": [[format_number(v) for v in row] for row in X.dist]}
    if meta is not None:
        out["meta"] = meta
    return out


def loads_space(text: str, tol: Real = DEFAULT_TOL, rational: bool = False) -> FiniteMetricSpace:
    return space_from_dict(json.loads(text), tol, rational)


def dumps_space(X: FiniteMetricSpace, meta: dict | None = None) -> str:
    return json.dumps(space_to_dict(X, meta))


def load_space(path, tol: Real = DEFAULT_TOL, rational: bool = False) -> FiniteMetricSpace:
    with open(path) as fh:
        return space_from_dict(json.load(fh), tol, rational)
