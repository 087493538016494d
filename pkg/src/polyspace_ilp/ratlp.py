"""Exact two-phase primal simplex over the rationals with Bland's rule.

Solves ``min c.x  s.t.  A x = b,  x >= 0`` with :class:`fractions.Fraction`
entries, so the reported status is exact.  Bland's rule (lowest eligible
index enters, lowest basic index breaks ratio ties) guarantees termination
on degenerate problems without perturbation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import Instance

Rational = Fraction


class LPStatus(enum.Enum):
    OPTIMAL = "OPTIMAL"
    INFEASIBLE = "INFEASIBLE"
    UNBOUNDED = "UNBOUNDED"


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    value: Optional[Fraction] = None
    vertex: Optional[tuple[Fraction, ...]] = None
    # for UNBOUNDED: a feasible point and an improving ray
    point: Optional[tuple[Fraction, ...]] = None
    ray: Optional[tuple[Fraction, ...]] = None


class _Tableau:
    """Dense tableau: rows[i] = coefficients of basic variable basis[i]."""

    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, col: int) -> None:
        prow = self.rows[r]
        p = prow[col]
        if p != 1:
            self.rows[r] = prow = [v / p for v in prow]
            self.rhs[r] /= p
        for i, row in enumerate(self.rows):
            if i != r and row[col] != 0:
                f = row[col]
                self.rows[i] = [a - f * q for a, q in zip(row, prow)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = col

    def reduced_costs(self, cost: Sequence[Fraction]):
        ncols = len(cost)
        red = list(cost)
        for i, bvar in enumerate(self.basis):
            cb = cost[bvar]
            if cb != 0:
                row = self.rows[i]
                for j in range(ncols):
                    if row[j] != 0:
                        red[j] -= cb * row[j]
        return red

    def run(self, cost: Sequence[Fraction], allowed: Sequence[bool]):
        """Minimise ``cost`` over the current basis.  Returns None when
        optimal, else the entering column of an unbounded direction."""
        while True:
            red = self.reduced_costs(cost)
            entering = next((j for j in range(len(cost))
                             if allowed[j] and red[j] < 0 and j not in self.basis), None)
            if entering is None:
                return None
            leave = None
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[leave])):
                        best, leave = ratio, i
            if leave is None:
                return entering
            self.pivot(leave, entering)

    def point(self, ncols: int) -> list[Fraction]:
        x = [Fraction(0)] * ncols
        for i, bvar in enumerate(self.basis):
            x[bvar] = self.rhs[i]
        return x


def simplex(A: Sequence[Sequence[int]], b: Sequence[int], c: Sequence[int]) -> LPResult:
    m, n = len(A), len(c)
    rows, rhs = [], []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [Fraction(sign * v) for v in A[i]]
        row += [Fraction(1 if k == i else 0) for k in range(m)]
        rows.append(row)
        rhs.append(Fraction(sign * b[i]))
    tab = _Tableau(rows, rhs, [n + i for i in range(m)])
    ncols = n + m

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    tab.run(phase1, [True] * ncols)
    if sum(tab.rhs[i] for i, bv in enumerate(tab.basis) if bv >= n) != 0:
        return LPResult(LPStatus.INFEASIBLE)

    # drive remaining (zero-level) artificials out; drop redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n:
            col = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if col is None:
                del tab.rows[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1

    cost = [Fraction(v) for v in c] + [Fraction(0)] * m
    allowed = [True] * n + [False] * m
    entering = tab.run(cost, allowed)
    x = tab.point(ncols)[:n]
    if entering is not None:
        ray = [Fraction(0)] * n
        ray[entering] = Fraction(1)
        for r, bvar in enumerate(tab.basis):
            if bvar < n:
                ray[bvar] = -tab.rows[r][entering]
        return LPResult(LPStatus.UNBOUNDED, point=tuple(x), ray=tuple(ray))
    value = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
    return LPResult(LPStatus.OPTIMAL, value=value, vertex=tuple(x))


def simplex_solve(inst: Instance) -> LPResult:
    return simplex(inst.A, inst.b, inst.c)
