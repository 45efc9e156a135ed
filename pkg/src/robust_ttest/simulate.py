"""Reproducible Monte Carlo engine for the statistic quantile tables.

Replications are split into fixed-size blocks; each block draws from its
own counter-based random stream keyed by (seed, n, block_index), so the
output is bit-identical for a given configuration no matter how many
worker threads execute the blocks or in what order they finish.
Quantiles are read from the sorted |T| draws at rank ceil((2p-1) * N),
exploiting the symmetry of the null distributions about zero.
"""

from __future__ import annotations

import concurrent.futures
import logging
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .errors import InvalidConfig
from .estimators import PairIndexConvention
from .statistics import CONSTANTS, StatisticKind
from .tables import PUBLICATION_GRID, QuantileTable, order_stat_rank

__all__ = [
    "DEFAULT_SEED",
    "DEFAULT_BLOCK_SIZE",
    "MIN_TABLE_REPLICATIONS",
    "SimulationConfig",
    "simulate_statistics",
    "generate_table",
]

logger = logging.getLogger(__name__)

DEFAULT_SEED = 42424242
DEFAULT_BLOCK_SIZE = 100_000

# generate_table refuses configs below this; quantiles from fewer draws
# are too noisy to tabulate.
MIN_TABLE_REPLICATIONS = 10_000


@dataclass(frozen=True)
class SimulationConfig:
    """Everything that determines a table's content.

    Worker count is deliberately not part of the config: it must never
    change the output.
    """

    statistic: StatisticKind
    replications: int
    sample_sizes: tuple[int, ...]
    probability_grid: tuple[float, ...] = PUBLICATION_GRID
    seed: int = DEFAULT_SEED
    block_size: int = DEFAULT_BLOCK_SIZE
    convention: PairIndexConvention = PairIndexConvention.STRICT

    def __post_init__(self):
        object.__setattr__(self, "sample_sizes", tuple(sorted(int(n) for n in self.sample_sizes)))
        object.__setattr__(self, "probability_grid", tuple(float(p) for p in self.probability_grid))

    def validate(self) -> None:
        if self.replications < MIN_TABLE_REPLICATIONS:
            raise InvalidConfig(f"replications must be >= {MIN_TABLE_REPLICATIONS}")
        if not self.sample_sizes:
            raise InvalidConfig("no sample sizes")
        if self.sample_sizes[0] < 4:
            raise InvalidConfig("sample sizes below 4 are not tabled")
        grid = self.probability_grid
        if not grid or any(not 0.5 < p < 1.0 for p in grid):
            raise InvalidConfig("probability grid must lie in (0.5, 1)")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise InvalidConfig("probability grid must be strictly increasing")
        if self.block_size < 1:
            raise InvalidConfig("block_size must be positive")
        if not -(2**63) <= int(self.seed) < 2**64:
            raise InvalidConfig("seed must fit in 64 bits")


def _block_rng(seed: int, n: int, block_index: int) -> np.random.Generator:
    # Philox is counter-based; SeedSequence spawn keys give independent,
    # platform-stable streams per (seed, n, block).
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(n, block_index))))


def _statistic_batch(kind: StatisticKind, X: np.ndarray, mu: float, convention: PairIndexConvention) -> np.ndarray:
    n = X.shape[1]
    if kind is StatisticKind.T_A:
        return _kernels.ta_batch(X, mu, CONSTANTS.scale_ta(n))
    if kind is StatisticKind.T_B:
        inclusive = convention is PairIndexConvention.INCLUSIVE
        return _kernels.tb_batch(X, mu, CONSTANTS.scale_tb(n), inclusive)
    return _kernels.student_batch(X, mu)


def _simulate_block(
    kind: StatisticKind,
    n: int,
    count: int,
    seed: int,
    block_index: int,
    loc: float,
    scale: float,
    convention: PairIndexConvention,
) -> np.ndarray:
    rng = _block_rng(seed, n, block_index)
    X = rng.standard_normal((count, n))
    if loc != 0.0 or scale != 1.0:
        X = loc + scale * X
    t = _statistic_batch(kind, X, loc, convention)
    # A zero scale estimate has probability 0 under continuous sampling;
    # if it ever happens the rows are redrawn from the block's stream so
    # no infinity can poison a table.
    bad = ~np.isfinite(t)
    while np.any(bad):
        k = int(bad.sum())
        logger.warning("redrawing %d zero-scale replication(s) in block (n=%d, block=%d)", k, n, block_index)
        Z = rng.standard_normal((k, n))
        if loc != 0.0 or scale != 1.0:
            Z = loc + scale * Z
        t[bad] = _statistic_batch(kind, Z, loc, convention)
        bad = ~np.isfinite(t)
    return t


def _blocks(total: int, block_size: int):
    index = 0
    done = 0
    while done < total:
        count = min(block_size, total - done)
        yield index, count
        index += 1
        done += count


def simulate_statistics(
    kind: StatisticKind,
    n: int,
    replications: int,
    seed: int,
    *,
    loc: float = 0.0,
    scale: float = 1.0,
    convention: PairIndexConvention = PairIndexConvention.STRICT,
    block_size: int = DEFAULT_BLOCK_SIZE,
    workers: int = 1,
) -> np.ndarray:
    """Signed statistic draws under samples from N(loc, scale^2) with the
    hypothesized location set to loc (the null).

    Deterministic in (kind, n, replications, seed, loc, scale, convention,
    block_size); ``workers`` only parallelizes the blocks.
    """
    tasks = list(_blocks(replications, block_size))
    if workers <= 1 or len(tasks) == 1:
        parts = [
            _simulate_block(kind, n, count, seed, idx, loc, scale, convention)
            for idx, count in tasks
        ]
    else:
        parts = [None] * len(tasks)
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {
                pool.submit(_simulate_block, kind, n, count, seed, idx, loc, scale, convention): idx
                for idx, count in tasks
            }
            for fut in concurrent.futures.as_completed(futures):
                parts[futures[fut]] = fut.result()
    return np.concatenate(parts)


def extract_row(abs_sorted: np.ndarray, grid) -> tuple[float, ...]:
    """Grid quantiles from sorted |T| draws via the symmetry reduction:
    the p-quantile of T is the (2p-1)-quantile of |T|."""
    count = abs_sorted.shape[0]
    return tuple(float(abs_sorted[order_stat_rank(2.0 * p - 1.0, count) - 1]) for p in grid)


def generate_table(cfg: SimulationConfig, workers: int = 1, progress=None) -> QuantileTable:
    """Monte Carlo quantile table for cfg.statistic.

    Draws cfg.replications standard-normal samples per sample size,
    computes the statistic with mu = 0, and inverts the empirical
    distribution of |T|.  Byte-identical output for identical cfg
    regardless of ``workers``.  ``progress`` is called as
    progress(n, seconds, row) after each sample size.
    """
    cfg.validate()
    rows: dict[int, tuple[float, ...]] = {}
    for n in cfg.sample_sizes:
        started = time.perf_counter()
        t = simulate_statistics(
            cfg.statistic,
            n,
            cfg.replications,
            cfg.seed,
            convention=cfg.convention,
            block_size=cfg.block_size,
            workers=workers,
        )
        abs_t = np.abs(t)
        abs_t.sort()
        rows[n] = extract_row(abs_t, cfg.probability_grid)
        if progress is not None:
            progress(n, time.perf_counter() - started, rows[n])
    convention = cfg.convention if cfg.statistic is StatisticKind.T_B else None
    return QuantileTable(
        statistic=cfg.statistic,
        grid=cfg.probability_grid,
        rows=rows,
        replications=cfg.replications,
        seed=cfg.seed,
        block_size=cfg.block_size,
        convention=convention,
    )
