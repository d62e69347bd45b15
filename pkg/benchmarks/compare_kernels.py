#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Generates seeded workloads, runs both backends on identical inputs, checks
the outputs are equal, and prints a timing table.

Run from the repo root after `pip install -e . --no-build-isolation`:

    python3 benchmarks/compare_kernels.py [--repeat N]
"""

import argparse
import random
import time

from vscover import _kernels_py as pyk

try:
    from vscover import _kernels as cyk
except ImportError:
    cyk = None


def greedy_workload(seed, n=4000, k=900, m=12):
    rng = random.Random(seed)
    assign = [rng.randrange(k) for _ in range(n)]
    masks = []
    for j in range(k):
        bits = 0
        for e in range(n):
            if assign[e] == j or rng.random() < 0.01:
                bits |= 1 << e
        masks.append(bits)
    owner = [rng.randrange(m) for _ in range(k)]
    weights = [rng.randint(1, 3) for _ in range(m)]
    return n, masks, owner, weights


def search_workload(seed, n=36, k=22, m=3):
    rng = random.Random(seed)
    assign = [rng.randrange(k) for _ in range(n)]
    masks = []
    for j in range(k):
        bits = 0
        for e in range(n):
            if assign[e] == j or rng.random() < 0.12:
                bits |= 1 << e
        masks.append(bits)
    owner = [rng.randrange(m) for _ in range(k)]
    weights = [1] * m
    return n, masks, owner, weights


def timed(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if cyk is None:
        raise SystemExit("compiled kernels are not built; run pip install -e . first")

    rows = []

    for seed in (1, 2):
        n, masks, owner, weights = greedy_workload(seed)
        t_py, r_py = timed(lambda: pyk.greedy_rounds(n, masks, owner, weights), args.repeat)
        t_cy, r_cy = timed(lambda: cyk.greedy_rounds(n, masks, owner, weights), args.repeat)
        assert r_py == r_cy, "backends disagree on greedy rounds"
        rows.append((f"greedy n={n} k={len(masks)} (seed {seed})", t_py, t_cy))

        t_py, r_py = timed(lambda: pyk.classic_greedy_picks(n, masks), args.repeat)
        t_cy, r_cy = timed(lambda: cyk.classic_greedy_picks(n, masks), args.repeat)
        assert r_py == r_cy, "backends disagree on classic greedy"
        rows.append((f"classic n={n} k={len(masks)} (seed {seed})", t_py, t_cy))

    for seed in (3, 4):
        n, masks, owner, weights = search_workload(seed)
        budgets = [2 * w for w in weights]
        t_py, r_py = timed(
            lambda: pyk.cover_feasible(n, masks, owner, budgets, 10**8), args.repeat
        )
        t_cy, r_cy = timed(
            lambda: cyk.cover_feasible(n, masks, owner, budgets, 10**8), args.repeat
        )
        assert r_py == r_cy, "backends disagree on cover search"
        rows.append(
            (f"cover-search n={n} k={len(masks)} nodes={r_py[2]} (seed {seed})", t_py, t_cy)
        )

    width = max(len(r[0]) for r in rows)
    print(f"{'workload'.ljust(width)}  python      cython      speedup")
    for name, t_py, t_cy in rows:
        print(f"{name.ljust(width)}  {t_py * 1e3:8.2f}ms  {t_cy * 1e3:8.2f}ms  {t_py / t_cy:6.1f}x")


if __name__ == "__main__":
    main()
