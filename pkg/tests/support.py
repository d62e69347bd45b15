"""Shared test helpers: tiny instance builders, seeded corpora, and the
brute-force reference oracle (independent of the package's exact solver)."""

import random
from itertools import combinations
from math import ceil

from vscover import ElementSet, GenSpec, Instance


def build_instance(n, sets, owner, weights, names=None):
    return Instance(
        n=n,
        sets=tuple(ElementSet.from_indices(n, s) for s in sets),
        owner=tuple(owner),
        weights=tuple(weights),
        agent_names=tuple(names) if names else None,
    )


def naive_opt(inst):
    """Literal minimum objective over all 2^k subcollections that cover.

    Independent of the package's search: plain subset enumeration with
    ceiling arithmetic. Only sensible for k <= ~14.
    """
    full = (1 << inst.n) - 1
    masks = [s.bits for s in inst.sets]
    best = None
    for size in range(0, inst.k + 1):
        for combo in combinations(range(inst.k), size):
            covered = 0
            for j in combo:
                covered |= masks[j]
            if covered != full:
                continue
            counts = [0] * inst.m
            for j in combo:
                counts[inst.owner[j]] += 1
            value = max(ceil(c / w) for c, w in zip(counts, inst.weights))
            if best is None or value < best:
                best = value
    return best


def corpus_spec(seed, m1=False, k_max=16):
    """Derive varied per-seed instance shapes for the random corpora."""
    rng = random.Random(f"shape-{seed}")
    n = rng.randint(2, 30)
    if m1:
        m = 1
        w_min = w_max = 1
    else:
        m = rng.randint(1, 4)
        w_min, w_max = 1, rng.randint(1, 3)
    k = rng.randint(m, k_max)
    s_max = rng.randint(1, max(1, n // 2))
    return GenSpec(
        kind="random",
        seed=seed,
        n=n,
        k=k,
        m=m,
        s_min=1,
        s_max=s_max,
        w_min=w_min,
        w_max=w_max,
    )
