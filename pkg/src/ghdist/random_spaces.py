"""Random finite metric spaces with exact rational distances."""
from __future__ import annotations

import random
from fractions import Fraction

from .metric import FiniteMetricSpace

WEIGHTS = tuple(Fraction(k, 4) for k in range(1, 10))


def shortest_path_closure(rows):
    """Floyd-Warshall on a symmetric weight matrix (in place, returns it)."""
    n = len(rows)
    for k in range(n):
        rk = rows[k]
        for i in range(n):
            ri, rik = rows[i], rows[i][k]
            for j in range(n):
                v = rik + rk[j]
                if v < ri[j]:
                    ri[j] = v
    return rows


def random_space(rng: random.Random, n: int, name: str = "") -> FiniteMetricSpace:
    """n points, weights uniform on {1..9}/4, metricised by shortest paths."""
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = rng.choice(WEIGHTS)
    shortest_path_closure(rows)
    return FiniteMetricSpace(tuple(f"p{i}" for i in range(n)),
                             tuple(tuple(r) for r in rows), name)


def random_spaces(seed: int, count: int, max_points: int, min_points: int = 1):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_space(rng, rng.randint(min_points, max_points))
