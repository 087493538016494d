"""Seeded, oracle-verified instance samples for experiments and tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from .core import Instance
from .generate import random_instance
from .oracles import DEFAULT_BUDGET, CapExceeded, Verdict, oracle_solve


@dataclass(frozen=True)
class SampleConfig:
    m: int
    seed: int = 0
    n_range: tuple[int, int] = (2, 6)
    delta_range: tuple[int, int] = (1, 3)
    bmax: int = 8
    cmax: int = 4
    # general instances with several rows are mostly infeasible, so half of
    # the draws come from the nonnegative family
    families: tuple[str, ...] = ("general", "nonneg")
    budget: int = DEFAULT_BUDGET


@dataclass
class SampleStats:
    drawn: int = 0
    skipped: int = 0
    by_status: dict = field(default_factory=dict)


def verified_instances(cfg: SampleConfig, stats: SampleStats | None = None) -> Iterator[tuple[Instance, Verdict]]:
    """Endless stream of (instance, oracle verdict).  Draws whose l1 ball is
    too large for the brute force are skipped and counted."""
    rng = random.Random(f"{cfg.seed}-{cfg.m}")
    stats = stats if stats is not None else SampleStats()
    while True:
        n = rng.randint(*cfg.n_range)
        delta = rng.randint(*cfg.delta_range)
        family = rng.choice(cfg.families)
        inst = random_instance(rng, cfg.m, n, delta, cfg.bmax, cfg.cmax, family)
        stats.drawn += 1
        try:
            verdict = oracle_solve(inst, cfg.budget)
        except CapExceeded:
            stats.skipped += 1
            continue
        key = verdict.status.status.value
        stats.by_status[key] = stats.by_status.get(key, 0) + 1
        yield inst, verdict
