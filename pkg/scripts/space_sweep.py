"""Peak tracked words vs. DP states across a right-hand-side sweep.

    python scripts/space_sweep.py --seeds 5 --sweep 50,100,200,400
"""

import argparse
from collections import defaultdict
from dataclasses import dataclass

from polyspace_ilp.cli import bench_rows


@dataclass(frozen=True)
class SweepConfig:
    family: str = "nonneg"
    m: int = 1
    n: int = 4
    delta: int = 2
    cmax: int = 4
    seeds: int = 5
    sweep: tuple[int, ...] = (50, 100, 200)


def run(cfg: SweepConfig):
    table = defaultdict(list)
    for row in bench_rows(cfg.family, cfg.sweep, range(cfg.seeds), cfg.m, cfg.n, cfg.delta, cfg.cmax):
        table[row["bmax"]].append(row)
    print(f"{'bmax':>6} {'peak words (max)':>17} {'dp states':>10} {'ms (max)':>9} agree")
    for bmax in cfg.sweep:
        rows = table[bmax]
        print(f"{bmax:>6} {max(r['peak_live_words'] for r in rows):>17} "
              f"{max(r['dp_state_count'] or 0 for r in rows):>10} "
              f"{max(r['elapsed_ms'] for r in rows):>9.1f} {all(r['oracle_agree'] for r in rows)}")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--sweep", default="50,100,200")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, default=4)
    args = p.parse_args()
    run(SweepConfig(m=args.m, n=args.n, seeds=args.seeds,
                    sweep=tuple(int(v) for v in args.sweep.split(","))))
