"""Seeded random instance families."""

from __future__ import annotations

import random

from .core import Instance

FAMILIES = ("general", "nonneg", "knapsack")


def random_instance(rng: random.Random, m: int, n: int, delta: int, bmax: int,
                    cmax: int, family: str = "general") -> Instance:
    """Draw one instance.

    ``general``: entries of A in [-delta, delta], b in [-bmax, bmax],
    c in [-cmax, cmax].  ``nonneg``: A in [0, delta] with no zero column,
    b in [0, bmax], c in [0, cmax] (the DP comparator's domain).
    ``knapsack``: m = 1, A in [1, delta], b in [0, bmax], c in [0, cmax].
    """
    if family == "general":
        A = [[rng.randint(-delta, delta) for _ in range(n)] for _ in range(m)]
        b = [rng.randint(-bmax, bmax) for _ in range(m)]
        c = [rng.randint(-cmax, cmax) for _ in range(n)]
    elif family == "nonneg":
        A = [[rng.randint(0, delta) for _ in range(n)] for _ in range(m)]
        for j in range(n):
            if all(A[i][j] == 0 for i in range(m)):
                A[rng.randrange(m)][j] = rng.randint(1, delta)
        b = [rng.randint(0, bmax) for _ in range(m)]
        c = [rng.randint(0, cmax) for _ in range(n)]
    elif family == "knapsack":
        if m != 1:
            raise ValueError("knapsack family has m = 1")
        A = [[rng.randint(1, delta) for _ in range(n)]]
        b = [rng.randint(0, bmax)]
        c = [rng.randint(0, cmax) for _ in range(n)]
    else:
        raise ValueError(f"unknown family {family!r}")
    return Instance.create(A, b, c, delta=max(2, delta))


def instance_stream(seed: int, count: int, **params):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_instance(rng, **params)
