"""End-to-end solver: LP certificate, candidate supports, restricted solves.

Candidates are consumed in fixed chunks; every restricted solve in a chunk
sees the incumbent objective from before the chunk as its cap.  Results are
folded in stream order, so the answer and the merged metrics do not depend on
the number of worker threads.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

from .candidates import enumerate_candidates
from .core import Instance, Metrics, SolutionVec, SolveStatus, Status, better
from .ratlp import LPStatus, simplex_solve
from .smalldim import TruncatedInstance, solve_fixed_support

CHUNK = 8


def _search(inst: Instance, metrics: Metrics, threads: int, first: bool = False) -> Optional[SolutionVec]:
    """Fold restricted solves over the candidate stream.  With ``first`` the
    search stops at the first feasible vector found."""
    # incumbent, one chunk of candidates
    size = 1 if first else CHUNK
    frame = (inst.n + 1) + size * (inst.n + inst.m)
    metrics.push(frame)
    best: Optional[SolutionVec] = None
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        stream = enumerate_candidates(inst, metrics)
        while True:
            chunk = list(itertools.islice(stream, size))
            if not chunk:
                break
            cap = None if best is None else best.objective

            def run(cand, cap=cap):
                local = Metrics()
                res = solve_fixed_support(TruncatedInstance(inst, cand.support), local, cap)
                return res, local

            results = list(pool.map(run, chunk)) if pool else [run(c) for c in chunk]
            for res, local in results:
                metrics.merge(local)
                if better(res, best):
                    best = res
            if first and best is not None:
                break
    finally:
        if pool:
            pool.shutdown()
        metrics.pop(frame)
    return best


def feasibility(inst: Instance, metrics: Optional[Metrics] = None, threads: int = 1) -> Optional[SolutionVec]:
    """Lexicographically minimal feasible vector, or None."""
    zero = inst.with_cost([0] * inst.n)
    if simplex_solve(zero).status is LPStatus.INFEASIBLE:
        return None
    return _search(zero, metrics if metrics is not None else Metrics(), threads)


def solve(inst: Instance, threads: int = 1) -> tuple[SolveStatus, Metrics]:
    metrics = Metrics()
    start = time.perf_counter()
    lp = simplex_solve(inst)
    if lp.status is LPStatus.INFEASIBLE:
        status = SolveStatus(Status.INFEASIBLE)
    elif lp.status is LPStatus.UNBOUNDED:
        # a feasible integer point plus a rational improving ray, scaled to
        # an integer one, gives integer points of unbounded cost
        zero = inst.with_cost([0] * inst.n)
        found = _search(zero, metrics, threads, first=True)
        status = SolveStatus(Status.UNBOUNDED if found else Status.INFEASIBLE)
    else:
        best = _search(inst, metrics, threads)
        status = SolveStatus(Status.OPTIMAL, best) if best else SolveStatus(Status.INFEASIBLE)
    metrics.elapsed_ms = (time.perf_counter() - start) * 1000
    return status, metrics
