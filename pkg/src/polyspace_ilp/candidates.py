"""Streaming enumeration of candidate supports.

A candidate is a 0/1 vector x' that is the lexicographically minimal optimum
for its own right-hand side b' = A x'.  The support of the lexicographically
minimal optimum x* of any bounded feasible right-hand side is among them:
the indicator vector of supp(x*) is itself such an optimum.

Two equivalent traversals are provided:

``"box"``
    walk every b' in {-G*delta, ..., G*delta}^m (G the rounded-up support
    bound) and keep branch's answer when it is a 0/1 vector.

``"subsets"``
    walk every 0/1 vector x' with at most G ones, by number of ones and
    then by support set in lexicographic order, and keep it when branch,
    promised l1 = l0 = |x'| and capped at c.x', gives back x' itself.

Every lexicographically minimal 0/1 optimum is emitted by both traversals.
A few extra 0/1 vectors may appear (they are optimal among vectors with l1 at
most |x'|, which is all either search can certify); they are harmless to the
pipeline because every candidate is only used as a restriction of the
original problem.  ``"auto"`` walks subsets when there are fewer of them than
box cells.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .branch import branch
from .core import Instance, Metrics, Vector, gamma_bound


@dataclass(frozen=True)
class Candidate:
    x: Vector
    b: Vector

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(j for j, v in enumerate(self.x) if v)


def candidate_count_bound(m: int, delta: int) -> int:
    return (2 * gamma_bound(m, delta) * delta + 1) ** m


def enumerate_candidates(inst: Instance, metrics: Optional[Metrics] = None,
                         method: str = "auto") -> Iterator[Candidate]:
    gamma = gamma_bound(inst.m, inst.delta)
    if method == "auto":
        method = "subsets" if 2 ** inst.n <= candidate_count_bound(inst.m, inst.delta) else "box"
    if method == "subsets":
        return _by_subsets(inst, gamma, metrics)
    if method == "box":
        return _by_box(inst, gamma, metrics)
    raise ValueError(f"unknown method {method!r}")


def _by_subsets(inst: Instance, gamma: int, metrics) -> Iterator[Candidate]:
    n = inst.n
    for t in range(min(gamma, n) + 1):
        for supp in itertools.combinations(range(n), t):
            x = tuple(1 if j in supp else 0 for j in range(n))
            bp = inst.apply(x)
            res = branch(inst, t, t, metrics, rhs=bp, cap=inst.objective(x))
            if res is not None and res.x == x:
                yield Candidate(x, bp)


def _by_box(inst: Instance, gamma: int, metrics) -> Iterator[Candidate]:
    # a 0/1 optimum has l1 <= n, so budgets above n change nothing for it
    budget = min(gamma, inst.n)
    r = gamma * inst.delta
    for bp in itertools.product(range(-r, r + 1), repeat=inst.m):
        res = branch(inst, budget, budget, metrics, rhs=bp)
        if res is not None and all(v in (0, 1) for v in res.x):
            yield Candidate(res.x, bp)
