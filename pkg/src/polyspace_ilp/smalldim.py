"""Exact solver for an instance restricted to a fixed set of columns.

The restricted problem is handed to :func:`branch.branch` with support
budget ``|S|`` and an l1 budget ``sigma``.  Two budgets are available:

* :func:`compute_sigma_bound`, the closed form
  ``(k + 1) * (m * max(2, delta, |b|_inf)) ** (2m + 1)``;
* :func:`polyhedral_l1_bound`, which is usually far smaller: the largest
  l1 norm of a vertex of ``{y >= 0 : A_S y = b}`` plus the l1 norms of the
  primitive extreme rays of ``{y >= 0 : A_S y = 0}``.  If the restricted
  problem is bounded, every ray has nonnegative cost, so a lexicographically
  minimal optimum cannot contain a whole ray on top of a point of the
  convex hull of the vertices (removing it would keep feasibility and cost
  and make the vector lexicographically smaller).

The solver uses the smaller of the two.  Vertices come from Cramer's rule on
column bases and rays from signed maximal minors of circuits.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .branch import branch
from .geometry import independent_rows
from .core import Instance, Metrics, SolutionVec, Vector


@dataclass(frozen=True)
class TruncatedInstance:
    parent: Instance
    support: tuple[int, ...]

    def __post_init__(self):
        s = tuple(self.support)
        if list(s) != sorted(set(s)) or any(not 0 <= j < self.parent.n for j in s):
            raise ValueError("support must be strictly increasing column indices")

    @property
    def A_S(self) -> tuple[Vector, ...]:
        return tuple(tuple(row[j] for j in self.support) for row in self.parent.A)

    @property
    def c_S(self) -> Vector:
        return tuple(self.parent.c[j] for j in self.support)

    @property
    def b(self) -> Vector:
        return self.parent.b

    def instance(self) -> Instance:
        return Instance.create(self.A_S, self.b, self.c_S, delta=self.parent.delta)

    def embed(self, y: Sequence[int]) -> Vector:
        x = [0] * self.parent.n
        for j, v in zip(self.support, y):
            x[j] = v
        return tuple(x)


def compute_sigma_bound(A_S: Sequence[Sequence[int]], b: Sequence[int], delta: int) -> int:
    m = len(b)
    k = len(A_S[0]) if A_S else 0
    base = m * max(2, delta, max((abs(v) for v in b), default=0))
    return (k + 1) * base ** (2 * m + 1)


def _det(M) -> Fraction | int:
    k = len(M)
    if k == 0:
        return 1
    if k == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(k) if M[0][j])


def _rank(rows) -> int:
    return len(independent_rows(rows)) if rows and rows[0] else 0


def polyhedral_l1_bound(A_S: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[int]:
    """Floor of max vertex l1 plus the l1 norms of all primitive extreme
    rays; None when ``{y >= 0 : A_S y = b}`` is empty."""
    A = [list(r) for r in A_S]
    k = len(A[0]) if A and A[0] else 0
    if k == 0:
        return 0 if not any(b) else None
    rows = independent_rows(A)
    if _rank([r + [v] for r, v in zip(A, b)]) != len(rows):
        return None
    sub = [A[i] for i in rows]
    bb = [b[i] for i in rows]
    r = len(rows)
    best = None
    if r == 0:
        best = Fraction(0)
    for B in itertools.combinations(range(k), r):
        M = [[row[j] for j in B] for row in sub]
        d = _det(M)
        if d == 0:
            continue
        vals = []
        for pos in range(r):
            Mj = [row[:pos] + [bv] + row[pos + 1:] for row, bv in zip(M, bb)]
            vals.append(Fraction(_det(Mj), d))
        if all(v >= 0 for v in vals):
            total = sum(vals)
            if best is None or total > best:
                best = total
    if best is None:
        return None
    ray_total = sum(sum(ray) for ray in _extreme_rays(sub, k))
    return math.floor(best + ray_total)


def _extreme_rays(sub, k) -> set[Vector]:
    """Nonnegative circuits: for a column set T with rank |T| - 1, the
    kernel is spanned by signed maximal minors of |T| - 1 independent rows."""
    rays = set()
    for size in range(1, len(sub) + 2):
        for T in itertools.combinations(range(k), size):
            cols = [[row[j] for j in T] for row in sub]
            indep = independent_rows(cols)
            if len(indep) != size - 1:
                continue
            M = [cols[i] for i in indep]
            g = [(-1) ** j * _det([row[:j] + row[j + 1:] for row in M]) for j in range(size)]
            if not (all(v > 0 for v in g) or all(v < 0 for v in g)):
                continue
            g = [abs(v) for v in g]
            h = math.gcd(*g)
            y = [0] * k
            for j, v in zip(T, g):
                y[j] = v // h
            rays.add(tuple(y))
    return rays


def solve_fixed_support(trunc: TruncatedInstance, metrics: Optional[Metrics] = None,
                        cap: Optional[int] = None) -> Optional[SolutionVec]:
    """Lexicographically minimal optimum of the restricted problem, embedded
    into the parent's coordinates, or None when it is infeasible.

    With ``cap`` the result is exact whenever the optimum is at most ``cap``;
    otherwise it may be None or a feasible vector costing more than ``cap``.
    The restricted problem must be bounded.
    """
    A_S, b = trunc.A_S, trunc.b
    if not trunc.support:
        return SolutionVec(trunc.embed(()), 0) if not any(b) else None
    tight = polyhedral_l1_bound(A_S, b)
    if tight is None:
        return None
    sigma = min(tight, compute_sigma_bound(A_S, b, trunc.parent.delta))
    res = branch(trunc.instance(), sigma, len(trunc.support), metrics, cap=cap)
    if res is None:
        return None
    return SolutionVec(trunc.embed(res.x), res.objective)
