"""Support-halving branching for the lexicographically minimal optimum.

``branch(inst, sigma, s)`` splits a solution with at most ``s`` nonzeros
into a left part with at most ``s // 2`` and a right part with at most
``ceil(s / 2)`` nonzeros, guesses the left part's image ``b_left = A x_left``
and recurses on ``b_left`` and ``b - b_left``.  The best sum under
(objective, lexicographic) order wins.  If the lexicographically minimal
optimum x* has ``l1(x*) <= sigma`` and ``l0(x*) <= s`` the result is exactly
x*; otherwise the result is None or some feasible vector.

Two guess streams are available:

``"box"``
    every vector of ``{-sigma*delta, ..., sigma*delta}^m`` in row-major
    order from the most negative one (:func:`guess_iter`).

``"sparse"`` (default)
    the images ``A y`` of vectors ``y >= 0`` with ``l1(y) <= sigma`` and at
    most ``s // 2`` nonzeros, where the right call gets the remaining l1
    budget ``sigma - l1(y)``.  When ``l1(x*) <= sigma`` the left part of
    x* is one such ``y``, so the result under the promise is unchanged.
    Per node the smaller of the two streams is used.

Recursion never memoises, so the working state is one frame per level:
depth is ``ceil(log2 s) + 1`` frames of O(m + n) words each.

Pruning (``prune=True``) skips a guess when an LP lower bound on both
halves already exceeds the best objective known at that node or passed down
from the parent, and when either half lies outside the cone or the lattice
spanned by the columns.  Skipped guesses can never produce the minimum, so
the returned vector is identical with and without pruning.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterator, Optional, Sequence

from .core import Instance, Metrics, SolutionVec, Vector, words_of
from .geometry import cone, lattice, lower_bound

Key = tuple  # (objective, x) -- tuple order is exactly the `better` order
_SMALL = 1 << 63


def guess_iter(sigma: int, delta: int, m: int) -> Iterator[Vector]:
    """All of {-sigma*delta, ..., sigma*delta}^m, row-major from the most
    negative vector; O(m) state."""
    r = sigma * delta
    return itertools.product(range(-r, r + 1), repeat=m)


def box_count(sigma: int, delta: int, m: int) -> int:
    return (2 * sigma * delta + 1) ** m


def sparse_count(n: int, k: int, sigma: int) -> int:
    """Vectors y >= 0 of length n with at most k nonzeros and l1 <= sigma."""
    return sum(math.comb(n, j) * math.comb(sigma, j) for j in range(min(k, n) + 1))


def sparse_vectors(n: int, k: int, sigma: int) -> Iterator[tuple[Vector, int]]:
    """Yield (y, l1(y)) for y >= 0 with at most k nonzeros and l1 <= sigma.
    Order: support size, then support in lexicographic order, then values
    in lexicographic order.  State is O(n)."""
    yield (0,) * n, 0
    for size in range(1, min(k, n) + 1):
        for supp in itertools.combinations(range(n), size):
            for vals in _positive_compositions(size, sigma):
                y = [0] * n
                for j, v in zip(supp, vals):
                    y[j] = v
                yield tuple(y), sum(vals)


def _positive_compositions(size: int, budget: int) -> Iterator[tuple[int, ...]]:
    if size == 0:
        yield ()
        return
    for first in range(1, budget - size + 2):
        for rest in _positive_compositions(size - 1, budget - first):
            yield (first,) + rest


def base_case(inst: Instance, b: Sequence[int], s: int) -> Optional[SolutionVec]:
    key = _Engine(inst).base(tuple(b), s)
    return None if key is None else SolutionVec(key[1], key[0])


class _Engine:
    def __init__(self, inst: Instance, metrics: Optional[Metrics] = None,
                 guesses: str = "sparse", prune: bool = True):
        if guesses not in ("sparse", "box"):
            raise ValueError(f"unknown guess stream {guesses!r}")
        self.A = inst.A
        self.c = inst.c
        self.m, self.n = inst.m, inst.n
        self.delta = inst.delta
        self.cols = inst.columns()
        self.metrics = metrics if metrics is not None else Metrics()
        self.guesses = guesses
        lb = lower_bound(inst.A, inst.c) if prune else None
        self.lb = lb if lb is not None and lb.active else None
        self.scale = self.lb.scale if self.lb else 1
        # exact membership tests for {A y : y >= 0} and {A z : z integer}
        self.cone = cone(inst.A) if prune else None
        self.lattice = lattice(inst.A) if prune else None
        # per row: can images A y (y >= 0) be negative / positive?
        self.row_lo = [min(0, min(row)) for row in inst.A]
        self.row_hi = [max(0, max(row)) for row in inst.A]

    # ---- helpers -------------------------------------------------------
    def apply(self, y) -> Vector:
        return tuple(sum(a * v for a, v in zip(row, y) if v) for row in self.A)

    def reachable_sign(self, u) -> bool:
        """Necessary condition for u = A y with y >= 0."""
        for ui, lo, hi in zip(u, self.row_lo, self.row_hi):
            if (ui < 0 and lo == 0) or (ui > 0 and hi == 0):
                return False
        return True

    def on_ray(self, u) -> bool:
        """Necessary and sufficient for the base case with s = 1 to succeed."""
        if not any(u):
            return True
        for col in self.cols:
            z = _multiple(u, col)
            if z is not None and z > 0:
                return True
        return False

    # ---- base case -----------------------------------------------------
    def base(self, b: Vector, s: int) -> Optional[Key]:
        n = self.n
        if not any(b):
            return (0, (0,) * n)
        if s == 0:
            return None
        best = None
        for j, col in enumerate(self.cols):
            z = _multiple(b, col)
            if z is None or z <= 0:
                continue
            x = [0] * n
            x[j] = z
            key = (self.c[j] * z, tuple(x))
            if best is None or key < best:
                best = key
        return best

    # ---- recursion -----------------------------------------------------
    # Caps are carried multiplied by the lower bound's scale so that all
    # comparisons stay in integers.
    def _words(self, b, sigma, s) -> int:
        if max(map(abs, b), default=0) < _SMALL and sigma < _SMALL:
            return self.m + 2
        return words_of(b, sigma, s)

    def node(self, b: Vector, sigma: int, s: int, depth: int, cap) -> Optional[Key]:
        metrics = self.metrics
        metrics.enter(depth)
        if cap is not None and self.lb is not None and self.lb.scaled(b) > cap:
            return None
        if depth == 1 and self.cone is not None and not (
                self.cone.contains(b) and self.lattice.contains(b)):
            return None
        if s <= 1:
            frame = self._words(b, sigma, s) + self.n + 1
            metrics.push(frame)
            result = self.base(b, s)
            metrics.pop(frame)
            return result
        # b, sigma, s, the current guess and left budget, and three vectors
        # with objectives: incumbent, left result, right result
        frame = self._words(b, sigma, s) + self.m + 1 + 3 * (self.n + 1)
        metrics.push(frame)
        try:
            return self._split(b, sigma, s, depth, cap)
        finally:
            metrics.pop(frame)

    def _ranges(self, b, sigma):
        """Per-row guess ranges: the box clipped to values where both the
        guess and the remainder can be images of nonnegative vectors."""
        r = sigma * self.delta
        out = []
        for bi, lo, hi in zip(b, self.row_lo, self.row_hi):
            low = -r if lo < 0 else 0
            high = r if hi > 0 else 0
            if lo == 0:  # remainder b - u must be >= 0
                high = min(high, bi)
            if hi == 0:  # remainder must be <= 0
                low = max(low, bi)
            out.append(range(low, high + 1))
        return out

    def _stream(self, b, sigma, k):
        """Yield (guess, left budget, right budget)."""
        if self.guesses == "box":
            for u in guess_iter(sigma, self.delta, self.m):
                yield u, sigma, sigma
            return
        ranges = self._ranges(b, sigma)
        if math.prod(len(r) for r in ranges) <= sparse_count(self.n, k, sigma):
            for u in itertools.product(*ranges):
                yield u, sigma, sigma
        else:
            for y, size in sparse_vectors(self.n, k, sigma):
                yield self.apply(y), size, sigma - size

    def _split(self, b, sigma, s, depth, cap):
        k, kr = s // 2, s - s // 2
        lb, scale = self.lb, self.scale
        best = None
        bound = cap
        for u, sig_l, sig_r in self._stream(b, sigma, k):
            rest = tuple(bi - ui for bi, ui in zip(b, u))
            # cheap exact filters: these guesses give None on one side
            if kr == 1 and not self.on_ray(rest):
                continue
            if not (self.reachable_sign(u) and self.reachable_sign(rest)):
                continue
            if self.cone is not None and not (
                    self.lattice.contains(u) and self.cone.contains(u) and self.cone.contains(rest)):
                continue
            cap_l = None
            if bound is not None and lb is not None:
                lo_r = lb.scaled(rest)
                if lb.scaled(u) + lo_r > bound:
                    continue
                cap_l = bound - lo_r
            left = self.node(u, sig_l, k, depth + 1, cap_l)
            if left is None:
                continue
            cap_r = None if bound is None else bound - left[0] * scale
            right = self.node(rest, sig_r, kr, depth + 1, cap_r)
            if right is None:
                continue
            x = tuple(a + c for a, c in zip(left[1], right[1]))
            key = (left[0] + right[0], x)
            if best is None or key < best:
                best = key
                if bound is None or key[0] * scale < bound:
                    bound = key[0] * scale
        return best


def _multiple(u, col) -> Optional[int]:
    """The integer z with u = z * col, or None."""
    z = None
    for ui, ci in zip(u, col):
        if ci == 0:
            if ui != 0:
                return None
            continue
        if ui % ci:
            return None
        q = ui // ci
        if z is None:
            z = q
        elif z != q:
            return None
    return z


def branch(inst: Instance, sigma: int, s: int, metrics: Optional[Metrics] = None, *,
           rhs: Optional[Sequence[int]] = None, guesses: str = "sparse", prune: bool = True,
           cap: Optional[int] = None) -> Optional[SolutionVec]:
    """Lexicographically minimal optimum of ``inst`` (or of right-hand side
    ``rhs``) under the promise l1(x*) <= sigma, l0(x*) <= s.

    ``cap`` restricts attention to objectives <= cap: when the true optimum
    is above it the call may return None.
    """
    if sigma < 0 or s < 0:
        raise ValueError("sigma and s must be nonnegative")
    b = tuple(inst.b if rhs is None else rhs)
    engine = _Engine(inst, metrics, guesses, prune)
    key = engine.node(b, sigma, s, 1, None if cap is None else cap * engine.scale)
    return None if key is None else SolutionVec(key[1], key[0])
