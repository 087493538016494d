"""Small exact polyhedral and lattice helpers for the branching search.

Every test here is a necessary condition for ``u = A y`` with ``y >= 0``
integer (or a lower bound on its cost), so a search node whose right-hand
side fails one of them cannot return a vector.
"""

from __future__ import annotations

import functools
import itertools
import math
from fractions import Fraction
from typing import Optional


def solve_square(M, rhs):
    """Gauss-Jordan over Fractions; None when M is singular."""
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


def independent_rows(A) -> list[int]:
    """Indices of a maximal linearly independent set of rows, greedily."""
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    chosen = []
    for idx, row in enumerate(A):
        v = [Fraction(x) for x in row]
        for bvec, p in zip(basis, pivots):
            if v[p] != 0:
                f = v[p] / bvec[p]
                v = [a - f * q for a, q in zip(v, bvec)]
        p = next((j for j, x in enumerate(v) if x != 0), None)
        if p is not None:
            basis.append(v)
            pivots.append(p)
            chosen.append(idx)
    return chosen


def det(M):
    k = len(M)
    if k == 0:
        return 1
    if k == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(k) if M[0][j])


def _primitive(v):
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g else tuple(v)


class LowerBound:
    """LP lower bounds min{c.y : Ay = u, y >= 0} >= max_pi pi.u over the
    vertices pi of {pi : pi A <= c}, restricted to a maximal set of
    independent rows.  The vertices are stored scaled to integers by a
    common denominator ``scale``; ``scaled(u)`` is ``scale`` times the bound.
    ``active`` is false when the bound is trivially zero or unavailable."""

    def __init__(self, A, c):
        self.rows = independent_rows(A)
        duals = []
        r = len(self.rows)
        sub = [A[i] for i in self.rows]
        n = len(c)
        for B in itertools.combinations(range(n), r) if r else ():
            # pi A_B = c_B  <=>  A_B^T pi = c_B
            M = [[sub[i][j] for i in range(r)] for j in B]
            pi = solve_square(M, [c[j] for j in B])
            if pi is None:
                continue
            if all(sum(pi[i] * sub[i][j] for i in range(r)) <= c[j] for j in range(n)):
                if tuple(pi) not in duals:
                    duals.append(tuple(pi))
        self.scale = math.lcm(*(p.denominator for pi in duals for p in pi)) if duals else 1
        self.duals = [tuple(int(p * self.scale) for p in pi) for pi in duals]
        self.active = any(any(pi) for pi in self.duals)

    def scaled(self, u) -> int:
        rows = self.rows
        return max(sum(p * u[i] for p, i in zip(pi, rows)) for pi in self.duals)

    def value(self, u) -> Optional[Fraction]:
        if not self.duals:
            return None
        return Fraction(self.scaled(u), self.scale)


class Cone:
    """Membership in {A y : y >= 0} (real y): the equations of the column
    span plus one inequality per facet."""

    def __init__(self, A):
        m = len(A)
        rows = independent_rows(A)
        r = len(rows)
        n = len(A[0])
        self.equations = []
        if r:
            sub = [A[i] for i in rows]
            B = next(B for B in itertools.combinations(range(n), r)
                     if det([[row[j] for j in B] for row in sub]) != 0)
            basis = [[row[j] for j in B] for row in sub]
            for i in range(m):
                if i in rows:
                    continue
                # row i = lam . sub, found on the nonsingular columns B
                lam = solve_square([list(col) for col in zip(*basis)], [A[i][j] for j in B])
                w = [Fraction(0)] * m
                w[i] = Fraction(1)
                for k, li in zip(rows, lam):
                    w[k] -= li
                d = math.lcm(*(x.denominator for x in w))
                self.equations.append(_primitive([int(x * d) for x in w]))
        else:
            self.equations = [tuple(1 if k == i else 0 for k in range(m)) for i in range(m)]
        self.rows = rows
        self.facets = []
        sub = [A[i] for i in rows]
        for T in itertools.combinations(range(n), max(r - 1, 0)) if r else ():
            M = [[row[j] for j in T] for row in sub]  # r x (r-1)
            normal = [(-1) ** k * det(M[:k] + M[k + 1:]) for k in range(r)]
            if not any(normal):
                continue
            side = [sum(p * row[j] for p, row in zip(normal, sub)) for j in range(n)]
            if all(v >= 0 for v in side):
                f = _primitive(normal)
            elif all(v <= 0 for v in side):
                f = _primitive([-p for p in normal])
            else:
                continue
            if f not in self.facets:
                self.facets.append(f)

    def contains(self, u) -> bool:
        for w in self.equations:
            if sum(a * b for a, b in zip(w, u)):
                return False
        rows = self.rows
        for f in self.facets:
            if sum(p * u[i] for p, i in zip(f, rows)) < 0:
                return False
        return True


class Lattice:
    """Membership in {A z : z integer}, via an echelon basis built with
    integer column operations."""

    def __init__(self, A):
        m = len(A)
        cols = [list(col) for col in zip(*A)]
        self.pivots: list[Optional[list[int]]] = []
        for i in range(m):
            live = [c for c in cols if c[i] != 0]
            rest = [c for c in cols if c[i] == 0]
            while len(live) > 1:
                live.sort(key=lambda c: abs(c[i]))
                p = live[0]
                nxt = [p]
                for c in live[1:]:
                    q = c[i] // p[i]
                    c = [a - q * b for a, b in zip(c, p)]
                    (nxt if c[i] != 0 else rest).append(c)
                live = nxt
            self.pivots.append(live[0] if live else None)
            cols = [c for c in rest if any(c)]

    def contains(self, u) -> bool:
        v = list(u)
        for i, p in enumerate(self.pivots):
            if p is None:
                if v[i]:
                    return False
                continue
            z, r = divmod(v[i], p[i])
            if r:
                return False
            if z:
                v = [a - z * b for a, b in zip(v, p)]
        return True


@functools.lru_cache(maxsize=64)
def lower_bound(A, c) -> LowerBound:
    return LowerBound(A, c)


@functools.lru_cache(maxsize=64)
def cone(A) -> Cone:
    return Cone(A)


@functools.lru_cache(maxsize=64)
def lattice(A) -> Lattice:
    return Lattice(A)
