"""Command-line interface.

    ghdist validate --in x.json
    ghdist gh --a x.json --b y.json
    ghdist make zt --t 3/10 --N 2 --h 1/10
    ghdist verify --suite all --seed 7

Exit status: 0 on success, 1 when a verification check fails, 2 on usage
or validation errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import spaces
from .errors import AxiomViolation, MetricError
from .gh import DEFAULT_MAX_EXACT, gh_exact
from .lip import lip_exact
from .metric import (DEFAULT_TOL, FiniteMetricSpace, diameter, format_number, hausdorff_distance,
                     l1_product, load_space, scale, set_distance, space_to_dict, subset)
from .verify import CHECK_IDS, VerifyConfig, run_suite


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def positive_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _num(v: Fraction | None, exact: bool):
    if v is None:
        return None
    return v if exact else float(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="metric validation tolerance")
    common.add_argument("--rational", action="store_true", help="read plain JSON numbers as exact rationals")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--threads", type=positive_int, default=1)

    p = argparse.ArgumentParser(prog="ghdist", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("validate", parents=[common], help="check the metric axioms")
    s.add_argument("--in", dest="input", required=True)

    s = sub.add_parser("diam", parents=[common], help="diameter of a space")
    s.add_argument("--in", dest="input", required=True)

    s = sub.add_parser("scale", parents=[common], help="multiply all distances")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--lambda", dest="lam", type=rational, required=True)
    s.add_argument("--collapse", action="store_true", help="allow lambda = 0 (collapse to a point)")

    s = sub.add_parser("product", parents=[common], help="l1 product of two spaces")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)

    s = sub.add_parser("hausdorff", parents=[common], help="Hausdorff distance between subsets")
    s.add_argument("--in", dest="input", help="ambient space")
    s.add_argument("--A", help="comma-separated point indices of the first subset")
    s.add_argument("--B", help="comma-separated point indices of the second subset")
    s.add_argument("--a", help="line window (labels are coordinates)")
    s.add_argument("--b", help="line window (labels are coordinates)")

    for verb, helptext in (("gh", "exact Gromov-Hausdorff distance"), ("lip", "exact Lipschitz distance")):
        s = sub.add_parser(verb, parents=[common], help=helptext)
        s.add_argument("--a", required=True)
        s.add_argument("--b", required=True)
        s.add_argument("--budget", type=positive_int, help="search node limit")
        if verb == "gh":
            s.add_argument("--max-exact", type=positive_int, default=DEFAULT_MAX_EXACT,
                           help="largest |X|*|Y| solved without a budget")

    s = sub.add_parser("make", parents=[common], help="construct a finite window space")
    s.add_argument("kind", choices=sorted(spaces.MAKERS))
    s.add_argument("--N", type=rational)
    s.add_argument("--h", type=rational)
    s.add_argument("--t", type=rational)
    s.add_argument("--d", type=rational)
    s.add_argument("--ratio", type=rational, default=Fraction(3))
    s.add_argument("--delta", type=rational, help="gluing parameter bounding t from below")
    s.add_argument("--fiber", help="diameter-1 fiber space for rd (default: two points at 1)")
    s.add_argument("--float", dest="float_mode", action="store_true", help="emit float distances")

    s = sub.add_parser("verify", parents=[common], help="run the verification suite")
    s.add_argument("--suite", default="all", choices=("all",) + CHECK_IDS)
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--json", action="store_true", help="print the JSON report instead of the table")
    return p


def _load(path, args) -> FiniteMetricSpace:
    return load_space(path, args.tol, args.rational)


def _indices(text, name):
    if not text:
        raise UsageError(f"{name} is required with --in")
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{name} must be comma-separated integers")


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))


def cmd_make(args):
    exact = not args.float_mode
    k = args.kind
    if k == "delta1":
        X, params = spaces.delta1(exact), {}
    elif k == "zwindow":
        _require(args, "N")
        X, params = spaces.integer_window(int(args.N), exact), {"N": args.N}
    elif k == "rwindow":
        _require(args, "N", "h")
        X, params = spaces.real_window(_num(args.N, exact), _num(args.h, exact), exact), \
            {"N": args.N, "h": args.h}
    elif k == "geomprog":
        _require(args, "N")
        X = spaces.geometric_progression(int(args.N), _num(args.ratio, exact), exact)
        params = {"N": args.N, "ratio": args.ratio}
    elif k == "zt":
        _require(args, "t", "N", "h")
        X = spaces.z_t_window(_num(args.t, exact), int(args.N), _num(args.h, exact), exact,
                              delta=_num(args.delta, exact))
        params = {"t": args.t, "N": args.N, "h": args.h, "delta": args.delta}
    else:
        _require(args, "d", "N", "h")
        fiber = _load(args.fiber, args) if args.fiber else None
        X = spaces.r_d_window(_num(args.d, exact), _num(args.N, exact), _num(args.h, exact),
                              fiber, exact, args.tol)
        params = {"d": args.d, "N": args.N, "h": args.h, "fiber": args.fiber or "two_point"}
    meta = {"kind": k, **{key: (str(v) if isinstance(v, Fraction) else v)
                          for key, v in params.items() if v is not None}}
    return space_to_dict(X, meta)


def dispatch(args):
    """Run one verb; returns (payload, exit_code).  payload is a dict or str."""
    v = args.verb
    if v == "validate":
        X = _load(args.input, args)
        return {"valid": True, "name": X.name, "points": len(X), "exact": X.exact}, 0
    if v == "diam":
        X = _load(args.input, args)
        return {"diameter": format_number(diameter(X))}, 0
    if v == "scale":
        X = _load(args.input, args)
        lam = args.lam if X.exact else float(args.lam)
        return space_to_dict(scale(X, lam, collapse=args.collapse)), 0
    if v == "product":
        return space_to_dict(l1_product(_load(args.a, args), _load(args.b, args))), 0
    if v == "hausdorff":
        if args.input:
            X = _load(args.input, args)
            A, B = subset(X, _indices(args.A, "--A")), subset(X, _indices(args.B, "--B"))
        elif args.a and args.b:
            Xa, Xb = _load(args.a, args), _load(args.b, args)
            exact = Xa.exact and Xb.exact
            try:
                ca, cb = spaces.coords_of(Xa, exact), spaces.coords_of(Xb, exact)
            except (ValueError, ZeroDivisionError):
                raise UsageError("--a/--b must be line windows whose labels are coordinates")
            _, (A, B) = spaces.common_line_ambient(ca, cb)
        else:
            raise UsageError("give --in with --A/--B, or two line windows --a/--b")
        return {"hausdorff": format_number(hausdorff_distance(A, B)),
                "set_distance": format_number(set_distance(A, B))}, 0
    if v == "gh":
        X, Y = _load(args.a, args), _load(args.b, args)
        res = gh_exact(X, Y, budget=args.budget, max_exact=args.max_exact, threads=args.threads)
        return res.to_dict(X, Y), 0
    if v == "lip":
        X, Y = _load(args.a, args), _load(args.b, args)
        res = lip_exact(X, Y, budget=args.budget, threads=args.threads)
        return res.to_dict(X, Y), 0
    if v == "make":
        return cmd_make(args), 0
    if v == "verify":
        cfg = VerifyConfig(seed=args.seed, tol=args.tol, threads=args.threads)
        report = run_suite(cfg, args.suite)
        if args.out:
            return report, (0 if report.ok else 1)
        return (report.to_json() if args.json else report.table()), (0 if report.ok else 1)
    raise UsageError(f"unknown verb {v}")


def _write(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = dispatch(args)
    except AxiomViolation as exc:
        print(json.dumps(exc.to_dict()), file=sys.stderr)
        return 2
    except (MetricError, UsageError, OSError, json.JSONDecodeError) as exc:
        print(f"ghdist {args.verb}: {exc}", file=sys.stderr)
        return 2
    if args.verb == "verify" and args.out:
        _write(payload.to_json() + "\n", args.out)
        print(payload.table())
    elif isinstance(payload, str):
        _write(payload + "\n", args.out)
    else:
        _write(json.dumps(payload, ensure_ascii=False) + "\n", args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
