"""Compare the pure-Python and compiled search kernels on the same workloads.

    python benchmarks/bench_kernels.py [--repeat 3] [--random 300]

Both backends walk identical search trees, so node counts must agree; the script
checks that and reports wall time per backend and the speedup.
"""

import argparse
import random
import statistics
import time

from twoktree import kernels
from twoktree.families import ExtremalParams, build_h, random_graph
from twoktree.graph import is_connected
from twoktree.solver import solve_exact, solve_naive


def _time(fn, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def workloads(n_random, seed):
    for k, n in [(2, 13), (2, 15), (2, 17), (2, 19), (3, 15), (3, 18)]:
        g = build_h(ExtremalParams(k, n, strict=False))
        yield f"H({k},{n}) exact", lambda g=g, k=k, b=None: solve_exact(g, k, backend=b)
    rng = random.Random(seed)
    graphs = []
    while len(graphs) < n_random:
        n = rng.randint(4, 8)
        g = random_graph(n, rng.uniform(0.3, 0.9), rng.randrange(2**32))
        if is_connected(g):
            graphs.append((g, rng.choice([2, 3])))
    yield (f"{n_random} random n<=8 exact",
           lambda b=None: [solve_exact(g, k, backend=b).nodes for g, k in graphs])
    yield (f"{n_random} random n<=8 naive",
           lambda b=None: [solve_naive(g, k, backend=b).nodes for g, k in graphs])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--random", type=int, default=300)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    if "cython" not in kernels.available():
        print("compiled kernels are not built; only the Python backend is available")
        return
    print(f"{'workload':32s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    speedups = []
    for name, fn in workloads(args.random, args.seed):
        tp, op = _time(lambda: fn(b="python"), args.repeat)
        tc, oc = _time(lambda: fn(b="cython"), args.repeat)
        same = (op.nodes == oc.nodes) if hasattr(op, "nodes") else op == oc
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        speedups.append(tp / tc)
        print(f"{name:32s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")
    print(f"median speedup {statistics.median(speedups):.1f}x")


if __name__ == "__main__":
    main()
