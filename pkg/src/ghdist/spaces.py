"""Finite windows of the concrete spaces: the point, integer and real line
windows, the geometric progression, the union of intervals ``Z_t`` and the
thickened line ``R_d = R x_l1 (d F)``.

Constructors work in exact rational arithmetic by default.  Float
parameters are read through their shortest decimal repr, so ``h=0.1``
means exactly 1/10.  Pass ``exact=False`` to get float matrices instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Iterable, Sequence

from .errors import DomainError, FiberDiameter, SizeLimit
from .gh import Correspondence
from .metric import (DEFAULT_SIZE_CAP, DEFAULT_TOL, FiniteMetricSpace, PointSubset, diameter,
                     l1_product, scale)

DEFAULT_GLUE_DELTA = Fraction(1, 4)
OVERFLOW_CAP = 1e300


def as_number(x, exact: bool = True) -> Real:
    if not exact:
        return float(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def _label(v: Real) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return repr(float(v))


@dataclass(frozen=True)
class WindowSpec:
    """Window ``[-half_width, half_width]`` sampled with pitch ``step``."""

    half_width: Real
    step: Real

    def __post_init__(self):
        if self.half_width <= 0:
            raise DomainError("window half width must be positive")
        if self.step <= 0:
            raise DomainError("grid step must be positive")
        if self.step > 2 * self.half_width:
            raise DomainError("grid step larger than the window")


def line_space(coords: Iterable[Real], name: str = "", cap: int = DEFAULT_SIZE_CAP) -> FiniteMetricSpace:
    """Points of the real line with the induced metric ``|x - y|``."""
    pts = sorted(set(coords))
    if len(pts) > cap:
        raise SizeLimit(f"{len(pts)} points exceed the cap {cap}")
    return FiniteMetricSpace(tuple(_label(p) for p in pts),
                             tuple(tuple(abs(a - b) for b in pts) for a in pts), name)


def coords_of(X: FiniteMetricSpace, exact: bool = True) -> list[Real]:
    """Recover line coordinates from the labels of a line-window space."""
    return [Fraction(s) if exact else float(Fraction(s)) for s in X.labels]


def common_line_ambient(*coord_sets: Sequence[Real]) -> tuple[FiniteMetricSpace, list[PointSubset]]:
    """Embed several point sets of the line into one ambient window."""
    pts = sorted(set().union(*map(set, coord_sets)))
    ambient = line_space(pts, "ambient")
    where = {p: i for i, p in enumerate(pts)}
    return ambient, [PointSubset(ambient, tuple(where[p] for p in cs)) for cs in coord_sets]


def delta1(exact: bool = True) -> FiniteMetricSpace:
    zero = Fraction(0) if exact else 0.0
    return FiniteMetricSpace(("*",), ((zero,),), "delta1")


def two_point(distance: Real = 1, exact: bool = True) -> FiniteMetricSpace:
    a = as_number(distance, exact)
    zero = a - a
    return FiniteMetricSpace(("a", "b"), ((zero, a), (a, zero)), "two_point")


def integer_coords(N: int, exact: bool = True) -> list[Real]:
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N}")
    return [as_number(k, exact) for k in range(-int(N), int(N) + 1)]


def integer_window(N: int, exact: bool = True, cap: int = DEFAULT_SIZE_CAP) -> FiniteMetricSpace:
    """{-N, ..., N} with |i - j|."""
    return line_space(integer_coords(N, exact), f"Z[{N}]", cap)


def real_coords(N: Real, h: Real, exact: bool = True) -> list[Real]:
    N, h = as_number(N, exact), as_number(h, exact)
    WindowSpec(N, h)
    k = math.floor(N / h)
    pts = {i * h for i in range(-k, k + 1)}
    pts.update((-N, N))
    return sorted(pts)


def real_window(N: Real, h: Real, exact: bool = True, cap: int = DEFAULT_SIZE_CAP) -> FiniteMetricSpace:
    """Grid ``{k h} ∩ [-N, N]`` anchored at 0, endpoints included."""
    if as_number(N, exact) / as_number(h, exact) > cap:
        raise SizeLimit(f"window would exceed {cap} points")
    return line_space(real_coords(N, h, exact), f"R[{N},{h}]", cap)


def geometric_progression(N: int, ratio: Real = 3, exact: bool = True) -> FiniteMetricSpace:
    """Points r^1, ..., r^N of the line."""
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N}")
    r = as_number(ratio, exact)
    if r <= 1:
        raise DomainError("ratio must exceed 1")
    if N * math.log(float(r)) > math.log(OVERFLOW_CAP):
        raise SizeLimit(f"{ratio}^{N} overflows")
    X = line_space([r ** n for n in range(1, int(N) + 1)], f"GP[{N},{ratio}]")
    return X


def z_t_coords(t: Real, N: int, h: Real, exact: bool = True, delta: Real | None = None) -> list[Real]:
    t, h = as_number(t, exact), as_number(h, exact)
    if not 0 < t <= Fraction(1, 2):
        raise DomainError(f"t must lie in (0, 1/2], got {t}")
    if delta is not None and t < Fraction(1, 2) - as_number(delta, exact):
        raise DomainError(f"t must lie in [1/2 - delta, 1/2] for delta = {delta}")
    if h > 2 * t:
        raise DomainError("grid step must not exceed the interval length 2t")
    k = math.floor(t / h)
    pts = set()
    # every interval [n - t, n + t] is sampled from its centre, ends included
    for n in integer_coords(N, exact):
        pts.update(n + i * h for i in range(-k, k + 1))
        pts.update((n - t, n + t))
    return sorted(pts)


def z_t_window(t: Real, N: int, h: Real, exact: bool = True, delta: Real | None = None,
               cap: int = DEFAULT_SIZE_CAP) -> FiniteMetricSpace:
    """Sampled ``∪_{|n|<=N} [n - t, n + t]`` with the line metric."""
    if (2 * N + 1) * (2 * as_number(t, exact) / as_number(h, exact) + 3) > 2 * cap:
        raise SizeLimit(f"window would exceed {cap} points")
    return line_space(z_t_coords(t, N, h, exact, delta), f"Z_t[{t},{N},{h}]", cap)


def r_d_window(d: Real, N: Real, h: Real, fiber: FiniteMetricSpace | None = None,
               exact: bool = True, tol: Real = DEFAULT_TOL,
               cap: int = DEFAULT_SIZE_CAP) -> FiniteMetricSpace:
    """``real_window(N, h) x_l1 (d * fiber)``; points ordered line-major.

    The fiber must have diameter 1.  ``d = 0`` collapses the fiber to a point.
    """
    d = as_number(d, exact)
    if not 0 <= d <= Fraction(1, 2):
        raise DomainError(f"d must lie in [0, 1/2], got {d}")
    if fiber is None:
        fiber = two_point(1, exact)
    if abs(diameter(fiber) - 1) > tol:
        raise FiberDiameter(f"fiber diameter is {diameter(fiber)}, expected 1")
    line = real_window(N, h, exact, cap)
    F = scale(fiber, d, collapse=True)
    return l1_product(line, F, cap, name=f"R_d[{d},{N},{h}]")


def fiber_projection(line_size: int, fiber_size: int) -> Correspondence:
    """Correspondence from an ``R_d`` window onto its base line window."""
    return Correspondence(line_size * fiber_size, line_size,
                          frozenset((i * fiber_size + k, i)
                                    for i in range(line_size) for k in range(fiber_size)))


MAKERS = {
    "delta1": delta1,
    "zwindow": integer_window,
    "rwindow": real_window,
    "geomprog": geometric_progression,
    "zt": z_t_window,
    "rd": r_d_window,
}
