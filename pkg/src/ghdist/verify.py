"""Verification harness: each check runs one inequality or arithmetic
identity about GH/Lipschitz distances against the solvers and returns a
:class:`CheckRecord`.

The bounds for bijections between clouds are checked as their
quantifier-free arithmetic skeleton at sampled ``eps`` and ``rho``; the
rest runs on finite spaces.
"""
from __future__ import annotations

import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from numbers import Real

from .gh import distortion, gh_exact, gh_lower_bound_diam, gh_upper_bound_diam
from .lip import delta_from_eps
from .metric import DEFAULT_TOL, FiniteMetricSpace, diameter, format_number, hausdorff_distance, scale
from .random_spaces import random_space
from .spaces import (common_line_ambient, delta1, fiber_projection, geometric_progression,
                     integer_coords, line_space, r_d_window, real_coords, real_window,
                     two_point, z_t_coords)

F = Fraction


@dataclass
class CheckRecord:
    id: str
    paper_anchor: str
    inputs: dict
    computed: dict
    passed: bool
    tolerance: float = 0.0
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["computed"] = {k: _jsonable(v) for k, v in self.computed.items()}
        d["inputs"] = {k: _jsonable(v) for k, v in self.inputs.items()}
        return d


def _jsonable(v):
    if isinstance(v, (Fraction, float)):
        return format_number(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


@dataclass
class VerifyConfig:
    seed: int = 7
    sandwich_trials: int = 1000
    max_points: int = 4
    eps_grid: tuple = tuple(F(k, 10) for k in range(10)) + (F(1, 3),)
    case2_grid_size: int = 101
    n_max: int = 10
    divergence_threshold: int = 100
    glue_delta: Fraction = F(1, 4)
    curve_t: Fraction = F(3, 10)
    curve_n: int = 2
    curve_h: Fraction = F(1, 10)
    curve_d: Fraction = F(1, 4)
    rd_n: int = 1
    rd_h: Fraction = F(1, 2)
    tol: float = DEFAULT_TOL
    threads: int = 1


@dataclass
class VerificationReport:
    checks: list
    seed: int

    @property
    def summary(self) -> dict:
        passed = sum(c.passed for c in self.checks)
        return {"passed": passed, "failed": len(self.checks) - passed, "total": len(self.checks)}

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"seed": self.seed, "summary": self.summary,
                "checks": [c.to_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def table(self) -> str:
        width = max((len(c.id) for c in self.checks), default=5)
        lines = [f"{'check':<{width}}  result  anchor", "-" * (width + 40)]
        for c in self.checks:
            lines.append(f"{c.id:<{width}}  {'PASS' if c.passed else 'FAIL':<6}  {c.paper_anchor}")
        s = self.summary
        lines.append(f"{s['passed']}/{s['total']} checks passed (seed {self.seed})")
        return "\n".join(lines)


# --- checks ------------------------------------------------------------------

def check_diameter_sandwich(trials: int = 1000, max_points: int = 4, seed: int = 7) -> CheckRecord:
    if max_points > 5:
        raise ValueError("sandwich check uses the exact solver; max_points must be <= 5")
    rng = random.Random(seed)
    violations, worst_slack = 0, None
    pairs = []
    for _ in range(trials):
        pairs.append((random_space(rng, rng.randint(1, max_points)),
                      random_space(rng, rng.randint(1, max_points))))
    pairs.append((pairs[0][0], pairs[0][0]))
    pairs.append((pairs[0][0], delta1()))
    point_case_ok = True
    for X, Y in pairs:
        lo, hi = gh_lower_bound_diam(X, Y), gh_upper_bound_diam(X, Y)
        v = gh_exact(X, Y).value
        if not lo <= v <= hi:
            violations += 1
        slack = min(v - lo, hi - v)
        worst_slack = slack if worst_slack is None else min(worst_slack, slack)
        if len(Y) == 1 and not lo == v == hi == diameter(X) / 2:
            point_case_ok = False
    return CheckRecord(
        "diameter_sandwich",
        "½|diam X − diam Y| ≤ d_GH(X, Y) ≤ ½ max{diam X, diam Y}",
        {"trials": trials, "max_points": max_points, "seed": seed},
        {"pairs": len(pairs), "violations": violations, "worst_slack": worst_slack,
         "point_case_exact": point_case_ok},
        violations == 0 and point_case_ok)


def default_geodesic_spaces() -> list[FiniteMetricSpace]:
    return [two_point(1), line_space([F(0), F(1), F(3)], "line013")]


DEFAULT_SCALE_PAIRS = ((F(1, 2), F(3, 2)), (F(1), F(1)), (F(1), F(3, 2)), (F(1), F(1, 2)),
                       (F(0), F(1)), (F(1, 3), F(5, 2)))


def _scaled(X, lam):
    return scale(X, lam, collapse=True)


def check_scaling_geodesic(spaces=None, pairs=DEFAULT_SCALE_PAIRS) -> CheckRecord:
    spaces = default_geodesic_spaces() if spaces is None else spaces
    rows, ok = [], True
    for X in spaces:
        half = diameter(X) / 2
        for lam, mu in pairs:
            got = gh_exact(_scaled(X, lam), _scaled(X, mu)).value
            want = abs(lam - mu) * half
            rows.append({"space": X.name, "lambda": lam, "mu": mu, "gh": got, "expected": want})
            ok &= got == want
        rho = half / 2  # d_GH(X, point) = 2 rho
        up = gh_exact(X, scale(X, F(3, 2))).value
        down = gh_exact(X, scale(X, F(1, 2))).value
        rows.append({"space": X.name, "rho": rho, "gh_three_halves": up, "gh_half": down})
        ok &= up == rho == down
    return CheckRecord(
        "scaling_geodesic",
        "d_GH(λX, μX) = |λ − μ|·diam X / 2; d_GH(X, 3/2·X) = d_GH(X, ½X) = ρ",
        {"spaces": [X.name for X in spaces], "pairs": [list(p) for p in pairs]},
        {"rows": rows}, ok)


def case1_quadratic(eps: Real) -> Real:
    return 3 * eps * eps - 10 * eps + 3


def case1_chain(eps: Real, rho: Real) -> bool:
    """(1-eps)^2 rho <= d(X1, X2) <= ¼(1+eps)^2 rho is consistent."""
    return (1 - eps) ** 2 * rho <= (1 + eps) ** 2 * rho / 4


def check_case1_arithmetic(eps_grid=VerifyConfig.eps_grid, rhos=(F(1), F(1, 2), F(7, 3))) -> CheckRecord:
    disc = 5 ** 2 - 3 * 3
    sq = math.isqrt(disc)
    root = F(5 - sq, 3)
    ok = sq * sq == disc and root == F(1, 3) and case1_quadratic(root) == 0
    ok &= case1_quadratic(F(3)) == 0
    rows = []
    for eps in eps_grid:
        eps = F(eps)
        if not 0 <= eps < 1:
            raise ValueError("eps grid must lie in [0, 1)")
        quad = case1_quadratic(eps)
        expected = eps >= F(1, 3)
        for rho in rhos:
            chain = case1_chain(eps, rho)
            ok &= chain == (quad <= 0) == expected
        rows.append({"eps": eps, "quadratic": quad, "feasible": quad <= 0})
    return CheckRecord(
        "case1_arithmetic",
        "(1−ε)²ρ ≤ ¼(1+ε)²ρ ⟺ 3ε² − 10ε + 3 ≤ 0 ⟺ ε ≥ 1/3 on [0, 1)",
        {"eps_grid": list(eps_grid), "rhos": list(rhos)},
        {"root": root, "quadratic_at_root": case1_quadratic(root), "rows": rows,
         # same chain with the plain sandwich bound ½(1+ε)²ρ: ε² − 6ε + 1 ≤ 0
         "threshold_with_unhalved_bound": 3 - 2 * math.sqrt(2)},
        ok, 0.0)


def case2_holds(eps: Real) -> bool:
    return 4 - 4 * eps <= 1 + eps


def check_case2_arithmetic(grid_size: int = 101) -> CheckRecord:
    grid = [F(k, grid_size - 1) for k in range(grid_size)]
    mismatches = [e for e in grid if case2_holds(e) != (e >= F(3, 5))]
    boundary = F(3, 5)
    equality = 4 - 4 * boundary == 1 + boundary
    return CheckRecord(
        "case2_arithmetic",
        "4 − 4ε ≤ 1 + ε ⟺ ε ≥ 3/5",
        {"grid_size": grid_size},
        {"mismatches": mismatches, "lhs_at_3_5": 4 - 4 * boundary, "rhs_at_3_5": 1 + boundary,
         "equality_at_boundary": equality},
        not mismatches and equality, 0.0)


def check_corollary_bound(tol: float = 1e-15) -> CheckRecord:
    d1, d2 = delta_from_eps(F(1, 3)), delta_from_eps(F(3, 5))
    bound = min(d1, d2)
    target = math.log(4 / 3)
    displayed = min(math.log(4 / 3), math.log(3 / 2))
    ok = abs(bound - target) <= tol and displayed == target and bound > 0
    return CheckRecord(
        "corollary_bound",
        "d_L ≥ min{ln(1 + 1/3), ln(1 + 3/5)} = ln 4/3 > 0",
        {"eps_case1": F(1, 3), "eps_case2": F(3, 5)},
        {"delta_case1": d1, "delta_case2": d2, "bound": bound, "ln_4_3": target,
         "min_ln4_3_ln3_2": displayed, "abs_error": abs(bound - target)},
        ok, tol)


def check_divergence_demo(n_max: int = 10, threshold: int = 100, ratio: int = 3) -> CheckRecord:
    values, ok = [], True
    for N in range(1, n_max + 1):
        X = geometric_progression(N, ratio)
        lb = gh_lower_bound_diam(X, scale(X, 2))
        ok &= lb == F(ratio ** N - ratio, 2)
        values.append(lb)
    increasing = all(a < b for a, b in zip(values, values[1:]))
    crossed = next((N for N, v in enumerate(values, 1) if v > threshold), None)
    ok &= increasing and crossed is not None and (n_max < 6 or crossed <= 6)
    return CheckRecord(
        "divergence_demo",
        "d_GH(X_N, 2X_N) ≥ (3^N − 3)/2 → ∞ for X_N = {3, …, 3^N}",
        {"n_max": n_max, "threshold": threshold, "ratio": ratio},
        {"lower_bounds": values, "strictly_increasing": increasing, "first_N_above": crossed},
        ok)


def check_curve_smoke(delta=F(1, 4), t=F(3, 10), N=2, h=F(1, 10), d=F(1, 4),
                      rd_n=1, rd_h=F(1, 2)) -> CheckRecord:
    notes = []
    zt = z_t_coords(t, N, h, delta=delta)
    _, (A, B) = common_line_ambient(zt, integer_coords(N))
    dh = hausdorff_distance(A, B)
    haus_ok = t - h <= dh <= t + h

    line = real_window(rd_n, rd_h)
    Rd = r_d_window(d, rd_n, rd_h)
    projection = fiber_projection(len(line), len(Rd) // len(line))
    proj = distortion(projection, Rd, line)
    proj_ok = proj <= 2 * d
    gh_rd = gh_exact(Rd, line, budget=200_000, initial=projection)
    notes.append(f"R_d vs line gh {gh_rd.status}")

    # both families end at the line itself
    end_rd = r_d_window(0, rd_n, rd_h)
    gh_end_rd = gh_exact(end_rd, line).value
    zt_half = z_t_coords(F(1, 2), 1, F(1, 2))
    same_grid = zt_half == real_coords(F(3, 2), F(1, 2))
    gh_end_zt = gh_exact(line_space(zt_half), real_window(F(3, 2), F(1, 2)), max_exact=64).value
    ends_ok = gh_end_rd == 0 and gh_end_zt == 0 and same_grid
    return CheckRecord(
        "curve_smoke",
        "Z_t (t ∈ [½ − δ, ½]) and R_d (d ∈ [0, δ]) glue at R",
        {"delta": delta, "t": t, "N": N, "h": h, "d": d, "rd_N": rd_n, "rd_h": rd_h},
        {"hausdorff_zt_z": dh, "projection_distortion": proj, "projection_bound": 2 * d,
         "gh_rd_line": gh_rd.value, "gh_endpoint_rd": gh_end_rd, "gh_endpoint_zt": gh_end_zt,
         "zt_half_equals_real_grid": same_grid},
        haus_ok and proj_ok and ends_ok and gh_rd.value <= d, float(h), notes)


def _suite(cfg: VerifyConfig):
    return {
        "diameter_sandwich": (check_diameter_sandwich, (cfg.sandwich_trials, cfg.max_points, cfg.seed)),
        "scaling_geodesic": (check_scaling_geodesic, ()),
        "case1_arithmetic": (check_case1_arithmetic, (cfg.eps_grid,)),
        "case2_arithmetic": (check_case2_arithmetic, (cfg.case2_grid_size,)),
        "corollary_bound": (check_corollary_bound, ()),
        "divergence_demo": (check_divergence_demo, (cfg.n_max, cfg.divergence_threshold)),
        "curve_smoke": (check_curve_smoke, (cfg.glue_delta, cfg.curve_t, cfg.curve_n, cfg.curve_h,
                                            cfg.curve_d, cfg.rd_n, cfg.rd_h)),
    }


CHECK_IDS = tuple(sorted(_suite(VerifyConfig())))


def _call(job):
    fn, args = job
    return fn(*args)


def run_suite(cfg: VerifyConfig | None = None, only=None) -> VerificationReport:
    cfg = cfg or VerifyConfig()
    suite = _suite(cfg)
    ids = sorted(suite) if only in (None, "all") else [only] if isinstance(only, str) else sorted(only)
    for i in ids:
        if i not in suite:
            raise KeyError(f"unknown check {i!r}; known: {', '.join(sorted(suite))}")
    jobs = [suite[i] for i in ids]
    if cfg.threads > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            records = list(pool.map(_call, jobs))
    else:
        records = [_call(j) for j in jobs]
    return VerificationReport(records, cfg.seed)
