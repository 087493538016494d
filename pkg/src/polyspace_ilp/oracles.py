"""Ground-truth engines used by the test suite and the benchmark harness.

Nothing here shares code with the branching solver: the brute force walks an
explicit l1 ball, the DP is a shortest path over right-hand sides, and the
l1 cap comes from enumerating vertices and extreme rays directly.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .core import Instance, SolutionVec, Status, SolveStatus, gamma_bound, l0
from .ratlp import LPStatus, simplex_solve

DEFAULT_BUDGET = 3_000_000


class CapExceeded(RuntimeError):
    pass


class PreconditionError(ValueError):
    pass


def ball_size(n: int, K: int) -> int:
    """Number of nonnegative integer vectors of length n with l1 <= K."""
    return math.comb(K + n, n)


@functools.lru_cache(maxsize=16)
def _ball(n: int, K: int) -> np.ndarray:
    """All vectors of the l1 ball in lexicographic order, one per row."""
    # table[d][k]: ball of dimension d and radius k, built bottom-up
    table = [[np.arange(k + 1, dtype=np.int64).reshape(-1, 1) for k in range(K + 1)]]
    for d in range(2, n + 1):
        prev = table[-1]
        row = []
        for k in range(K + 1):
            blocks = [np.hstack([np.full((len(prev[k - v]), 1), v, dtype=np.int64), prev[k - v]])
                      for v in range(k + 1)]
            row.append(np.vstack(blocks))
        table.append(row)
    out = table[n - 1][K]
    out.flags.writeable = False
    return out


def brute_force_lexmin(inst: Instance, K: int, budget: int = DEFAULT_BUDGET) -> Optional[SolutionVec]:
    """First minimiser of (cost, lex) among x >= 0, l1(x) <= K, Ax = b."""
    if K < 0:
        return None
    if ball_size(inst.n, K) > budget:
        raise CapExceeded(f"l1 ball of radius {K} in dimension {inst.n} exceeds budget {budget}")
    # int64 is safe: every entry and partial sum stays below 2**40 at these sizes
    if K * inst.delta * inst.n > 2**40 or max(map(abs, inst.c), default=0) * K > 2**40:
        raise CapExceeded("values too large for the vectorised oracle")
    X = _ball(inst.n, K)
    A = np.array(inst.A, dtype=np.int64)
    hit = np.all(X @ A.T == np.array(inst.b, dtype=np.int64), axis=1)
    if not hit.any():
        return None
    feasible = X[hit]
    cost = feasible @ np.array(inst.c, dtype=np.int64)
    # rows are already in lexicographic order, argmin returns the first
    best = feasible[int(np.argmin(cost))]
    return SolutionVec.of(inst, best.tolist())


def _solve_square(M, rhs):
    """Gauss-Jordan over Fractions; None if M is singular."""
    k = len(M)
    aug = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(k):
        piv = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * q for a, q in zip(aug[r], aug[col])]
    return [row[k] for row in aug]


def _rank(rows) -> int:
    M = [[Fraction(v) for v in row] for row in rows]
    rank, ncols = 0, len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col] / M[rank][col]
                M[r] = [a - f * q for a, q in zip(M[r], M[rank])]
        rank += 1
    return rank


def _independent_rows(A):
    chosen = []
    for row in A:
        if _rank(chosen + [row]) > len(chosen):
            chosen.append(row)
    return chosen


def vertices(A, b):
    """Basic feasible solutions of {x >= 0 : Ax = b}."""
    if _rank([list(r) + [v] for r, v in zip(A, b)]) != _rank(A):
        return []
    rows = _independent_rows(A)
    idx = [A.index(r) for r in rows]
    bb = [b[i] for i in idx]
    r, n = len(rows), len(A[0])
    if r == 0:
        return [tuple([Fraction(0)] * n)]
    out = set()
    for B in itertools.combinations(range(n), r):
        sol = _solve_square([[row[j] for j in B] for row in rows], bb)
        if sol is None or any(v < 0 for v in sol):
            continue
        x = [Fraction(0)] * n
        for j, v in zip(B, sol):
            x[j] = v
        out.add(tuple(x))
    return sorted(out)


def extreme_rays(A):
    """Primitive integer generators of the extreme rays of {y >= 0 : Ay = 0}."""
    n = len(A[0])
    rays = set()
    for size in range(1, n + 1):
        for T in itertools.combinations(range(n), size):
            sub = [[row[j] for j in T] for row in A]
            if _rank(sub) != size - 1:
                continue
            # one-dimensional kernel: fix the last coordinate to 1 and solve
            rows = _independent_rows(sub) if size > 1 else []
            if size == 1:
                kernel = [Fraction(1)]
            else:
                M = [[r[j] for j in range(size - 1)] for r in rows]
                rhs = [-r[size - 1] for r in rows]
                part = _solve_square(M, rhs) if len(M) == size - 1 else None
                if part is None:
                    continue
                kernel = part + [Fraction(1)]
            if all(v > 0 for v in kernel) or all(v < 0 for v in kernel):
                kernel = [abs(v) for v in kernel]
                lcm = math.lcm(*(v.denominator for v in kernel))
                ints = [int(v * lcm) for v in kernel]
                g = math.gcd(*ints)
                y = [0] * n
                for j, v in zip(T, ints):
                    y[j] = v // g
                rays.add(tuple(y))
    return sorted(rays)


def l1_cap(inst: Instance) -> int:
    """An upper bound on l1(x*) for the lexicographically minimal optimum
    (when the LP relaxation is bounded) and for the lexicographically
    minimal feasible point.

    Write x* = v + sum_q t_q r_q with v in the convex hull of the vertices
    and r_q the primitive extreme rays.  Every ray has c.r >= 0, so if some
    t_q >= 1 then x* - r_q is feasible, no more expensive and
    lexicographically smaller.  Hence all t_q < 1 and
    l1(x*) < max_v l1(v) + sum_q l1(r_q).
    """
    V = vertices([list(r) for r in inst.A], list(inst.b))
    if not V:
        return -1
    vmax = max(sum(v) for v in V)
    rays = extreme_rays([list(r) for r in inst.A])
    return math.floor(vmax + sum(sum(r) for r in rays))


@dataclass(frozen=True)
class Verdict:
    status: SolveStatus
    cap: int


def oracle_solve(inst: Instance, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Status and lexicographically minimal optimum from LP certificates and
    a brute force over a proven l1 cap."""
    cap = l1_cap(inst)
    lp = simplex_solve(inst)
    if lp.status is LPStatus.INFEASIBLE or cap < 0:
        return Verdict(SolveStatus(Status.INFEASIBLE), cap)
    if lp.status is LPStatus.UNBOUNDED:
        feas = brute_force_lexmin(inst.with_cost([0] * inst.n), cap, budget)
        if feas is None:
            return Verdict(SolveStatus(Status.INFEASIBLE), cap)
        return Verdict(SolveStatus(Status.UNBOUNDED), cap)
    best = brute_force_lexmin(inst, cap, budget)
    if best is None:
        return Verdict(SolveStatus(Status.INFEASIBLE), cap)
    return Verdict(SolveStatus(Status.OPTIMAL, best), cap)


def dp_solve_nonneg(inst: Instance) -> tuple[Optional[SolutionVec], int]:
    """Shortest path over the grid {0 <= v <= b} with arcs v -> v + A_j of
    cost c_j.  Returns the (cost, lex)-minimal solution and the number of
    allocated states.

    Requires A, b, c >= 0 and no zero column: then partial sums of every
    solution stay in the grid, so the DP is exact.
    """
    A, b, c = inst.A, inst.b, inst.c
    if any(v < 0 for row in A for v in row) or any(v < 0 for v in b) or any(v < 0 for v in c):
        raise PreconditionError("dp comparator needs A, b, c >= 0")
    cols = inst.columns()
    if any(all(v == 0 for v in col) for col in cols):
        raise PreconditionError("dp comparator needs every column of A to be nonzero")
    m, n = inst.m, inst.n
    dims = [bi + 1 for bi in b]
    size = math.prod(dims)
    strides = [math.prod(dims[i + 1:]) for i in range(m)]

    def index(v):
        return sum(vi * s for vi, s in zip(v, strides))

    # best[v] = (cost, x) of the (cost, lex)-minimal vector reaching v; the
    # vector is kept so that ties resolve lexicographically at every state
    best: list = [None] * size
    best[0] = (0, (0,) * n)
    # states in increasing coordinate-sum order are a topological order
    order = sorted(itertools.product(*(range(d) for d in dims)), key=sum)
    for v in order:
        cur = best[index(v)]
        if cur is None:
            continue
        cost, x = cur
        for j, col in enumerate(cols):
            w = tuple(vi + a for vi, a in zip(v, col))
            if any(wi > bi for wi, bi in zip(w, b)):
                continue
            cand = (cost + c[j], x[:j] + (x[j] + 1,) + x[j + 1:])
            k = index(w)
            if best[k] is None or cand < best[k]:
                best[k] = cand
    final = best[index(b)]
    if final is None:
        return None, size
    return SolutionVec(final[1], final[0]), size


def check_support_bound(x, m: int, delta: int) -> bool:
    return l0(x) <= gamma_bound(m, delta)
