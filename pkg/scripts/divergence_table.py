"""Diameter lower bound for d_GH(X_N, 2 X_N), X_N = {r, r^2, ..., r^N}."""
import argparse

from ghdist.gh import gh_lower_bound_diam
from ghdist.metric import scale
from ghdist.spaces import geometric_progression

p = argparse.ArgumentParser()
p.add_argument("--n-max", type=int, default=12)
p.add_argument("--ratio", type=int, default=3)
args = p.parse_args()

print(f"{'N':>3}  {'lower bound':>14}")
for N in range(1, args.n_max + 1):
    X = geometric_progression(N, args.ratio)
    print(f"{N:>3}  {str(gh_lower_bound_diam(X, scale(X, 2))):>14}")
