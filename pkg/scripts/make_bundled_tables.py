#!/usr/bin/env python3
"""Regenerate the publication-grid tables bundled with the package.

Writes ta_publication.table and tb_publication.table for n = 4..50 at
N = 10^7 replications with the package default seed, into
src/robust_ttest/data/tables/.  Equivalent CLI invocation:

    robust-ttest gen-table --stat ta --n-min 4 --n-max 50 \
        --reps 10000000 --grid publication --out <path>

Runtime is dominated by the pairwise statistic at large n; expect a
couple of hours single-core.
"""

import argparse
import sys
import time
from pathlib import Path

from robust_ttest import SimulationConfig, StatisticKind, generate_table, save_table
from robust_ttest.simulate import DEFAULT_SEED

TABLE_DIR = Path(__file__).resolve().parent.parent / "src" / "robust_ttest" / "data" / "tables"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--reps", type=int, default=10_000_000)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--stats", nargs="+", default=["ta", "tb"], choices=["ta", "tb"])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out-dir", type=Path, default=TABLE_DIR)
    args = ap.parse_args(argv)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for stat in args.stats:
        kind = StatisticKind(stat)
        cfg = SimulationConfig(
            statistic=kind,
            replications=args.reps,
            sample_sizes=tuple(range(4, 51)),
            seed=args.seed,
        )
        started = time.time()

        def progress(n, seconds, row, _stat=stat):
            print(f"[{_stat}] n={n:2d} done in {seconds:7.1f}s", flush=True)

        table = generate_table(cfg, workers=args.workers, progress=progress)
        out = args.out_dir / f"{stat}_publication.table"
        save_table(table, out)
        print(f"[{stat}] wrote {out} in {time.time() - started:.0f}s total", flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
