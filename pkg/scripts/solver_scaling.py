"""Search effort of the exact GH and Lipschitz solvers on random spaces."""
import argparse
import random
import statistics
import time

from ghdist.gh import gh_exact
from ghdist.lip import lip_exact
from ghdist.random_spaces import random_space

p = argparse.ArgumentParser()
p.add_argument("--max-points", type=int, default=6)
p.add_argument("--samples", type=int, default=20)
p.add_argument("--seed", type=int, default=0)
args = p.parse_args()

rng = random.Random(args.seed)
print(f"{'n':>2}  {'gh nodes (median)':>18}  {'gh s':>7}  {'lip nodes (median)':>19}  {'lip s':>7}")
for n in range(2, args.max_points + 1):
    gh_nodes, lip_nodes = [], []
    t_gh = t_lip = 0.0
    for _ in range(args.samples):
        X, Y = random_space(rng, n), random_space(rng, n)
        t = time.perf_counter()
        gh_nodes.append(gh_exact(X, Y).nodes_explored)
        t_gh += time.perf_counter() - t
        t = time.perf_counter()
        lip_nodes.append(lip_exact(X, Y).nodes_explored)
        t_lip += time.perf_counter() - t
    print(f"{n:>2}  {statistics.median(gh_nodes):>18}  {t_gh / args.samples:>7.3f}"
          f"  {statistics.median(lip_nodes):>19}  {t_lip / args.samples:>7.3f}")
