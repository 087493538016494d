"""Instances, solution vectors, orders and bounds shared by every solver.

Problems have the form ``min c.x  s.t.  A x = b,  x >= 0 integer``.  All
arithmetic uses Python ints, so objectives and right-hand sides never
overflow.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

Vector = tuple[int, ...]


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    A: tuple[Vector, ...]
    b: Vector
    c: Vector
    delta: int

    @classmethod
    def create(cls, A, b, c, delta: Optional[int] = None) -> "Instance":
        """Build a validated instance; ``delta`` defaults to max(2, max |A_ij|)."""
        A = tuple(tuple(int(v) for v in row) for row in A)
        b = tuple(int(v) for v in b)
        c = tuple(int(v) for v in c)
        if not A or not A[0]:
            raise InstanceError("instance needs m >= 1 and n >= 1")
        n = len(A[0])
        if any(len(row) != n for row in A):
            raise InstanceError("ragged constraint matrix")
        if len(b) != len(A):
            raise InstanceError(f"b has length {len(b)}, expected {len(A)}")
        if len(c) != n:
            raise InstanceError(f"c has length {len(c)}, expected {n}")
        actual = max(abs(v) for row in A for v in row)
        if delta is None:
            delta = max(2, actual)
        if delta < actual:
            raise InstanceError(f"delta {delta} is below the largest entry {actual}")
        if delta < 2:
            raise InstanceError("delta must be at least 2")
        return cls(A, b, c, int(delta))

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.A)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.n)]

    def with_rhs(self, b: Sequence[int]) -> "Instance":
        return Instance(self.A, tuple(b), self.c, self.delta)

    def with_cost(self, c: Sequence[int]) -> "Instance":
        return Instance(self.A, self.b, tuple(c), self.delta)

    def objective(self, x: Sequence[int]) -> int:
        return sum(ci * xi for ci, xi in zip(self.c, x))

    def apply(self, x: Sequence[int]) -> Vector:
        return tuple(sum(a * xi for a, xi in zip(row, x)) for row in self.A)


@dataclass(frozen=True)
class SolutionVec:
    x: Vector
    objective: int

    @classmethod
    def of(cls, inst: Instance, x: Sequence[int]) -> "SolutionVec":
        x = tuple(int(v) for v in x)
        return cls(x, inst.objective(x))

    def key(self) -> tuple[int, Vector]:
        return (self.objective, self.x)


class Status(enum.Enum):
    OPTIMAL = "OPTIMAL"
    INFEASIBLE = "INFEASIBLE"
    UNBOUNDED = "UNBOUNDED"


@dataclass(frozen=True)
class SolveStatus:
    status: Status
    solution: Optional[SolutionVec] = None

    def __post_init__(self):
        if (self.status is Status.OPTIMAL) != (self.solution is not None):
            raise ValueError("only OPTIMAL carries a solution")


def _words(value: int) -> int:
    return max(1, -(-abs(value).bit_length() // 64))


def words_of(*values) -> int:
    """Machine words (64 bit) needed to hold ints and int vectors."""
    total = 0
    for v in values:
        if v is None:
            continue
        if isinstance(v, int):
            total += _words(v)
        else:
            total += sum(_words(e) for e in v)
    return total


@dataclass
class Metrics:
    """Search counters.  ``peak_live_words`` is maintained through
    :meth:`push`/:meth:`pop` by every solver frame that holds vectors."""

    nodes_expanded: int = 0
    max_depth: int = 0
    peak_live_words: int = 0
    elapsed_ms: float = 0.0
    live_words: int = field(default=0, repr=False, compare=False)

    def push(self, nwords: int) -> None:
        self.live_words += nwords
        if self.live_words > self.peak_live_words:
            self.peak_live_words = self.live_words

    def pop(self, nwords: int) -> None:
        self.live_words -= nwords

    def enter(self, depth: int) -> None:
        self.nodes_expanded += 1
        if depth > self.max_depth:
            self.max_depth = depth

    def merge(self, other: "Metrics") -> None:
        """Fold another run's counters in.  Peaks are combined with max so
        the result does not depend on how work was scheduled."""
        self.nodes_expanded += other.nodes_expanded
        self.max_depth = max(self.max_depth, other.max_depth)
        self.peak_live_words = max(self.peak_live_words, self.live_words + other.peak_live_words)

    def as_dict(self) -> dict:
        return {
            "nodes_expanded": self.nodes_expanded,
            "max_depth": self.max_depth,
            "peak_live_words": self.peak_live_words,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def gamma_bound(m: int, delta: int) -> int:
    """Ceiling of 2(m+1)(log2(m+1) + log2(delta) + 2), the support bound for
    lexicographically minimal optimal solutions."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if delta < 2:
        raise ValueError("delta must be at least 2")
    # log2 of an integer power of two is exact in floating point; otherwise the
    # value is irrational and its ceiling is safely away from an integer.
    value = 2 * (m + 1) * (math.log2(m + 1) + math.log2(delta) + 2)
    nearest = round(value)
    if abs(value - nearest) < 1e-9:
        return int(nearest)
    return math.ceil(value)


def lex_less(x: Sequence[int], y: Sequence[int]) -> bool:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    for xi, yi in zip(x, y):
        if xi != yi:
            return xi < yi
    return False


def better(candidate: Optional[SolutionVec], incumbent: Optional[SolutionVec]) -> bool:
    """True when ``candidate`` should replace ``incumbent``: it exists and has
    a smaller objective, or the same objective and a lexicographically
    smaller vector.  Objectives are carried by the solutions themselves."""
    if candidate is None:
        return False
    if incumbent is None:
        return True
    if candidate.objective != incumbent.objective:
        return candidate.objective < incumbent.objective
    return lex_less(candidate.x, incumbent.x)


def support(x: Sequence[int]) -> frozenset[int]:
    """Zero-based indices of the nonzero entries."""
    return frozenset(i for i, v in enumerate(x) if v != 0)


def l0(x: Sequence[int]) -> int:
    return sum(1 for v in x if v != 0)


def l1(x: Sequence[int]) -> int:
    return sum(abs(v) for v in x)


def linf(x: Sequence[int]) -> int:
    return max((abs(v) for v in x), default=0)


def check_solution(inst: Instance, x: Sequence[int]) -> bool:
    if len(x) != inst.n:
        return False
    return all(v >= 0 for v in x) and inst.apply(x) == inst.b
