"""Quantile tables: the data type, file format, lookups, p-values and the
quantile-accuracy estimate.

A table stores, per sample size n, the lower quantiles q_p of one
statistic's null distribution on a fixed probability grid in (0.5, 1).
The distributions are symmetric about zero, so lower-half quantiles come
for free: q_{1-p} = -q_p and q_{0.5} = 0.  Tables are built from |T|
draws: the p-quantile of T equals the (2p-1)-quantile of |T|, which
halves the tail mass the Monte Carlo has to resolve.

File format (version-checked): one JSON header line with the generation
metadata, then a CSV payload ``n,p1,p2,...`` with one row per sample size
and floats serialized as shortest round-trip decimals.
"""

from __future__ import annotations

import io
import json
import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.special import ndtri

from .errors import (
    EmptyInput,
    GridTooCoarse,
    InsufficientGridPoints,
    InvalidProbability,
    NormalFallbackWarning,
    ProbabilityOutsideGrid,
    SampleSizeBelowTable,
    TableFormatError,
    TableRowMissing,
    TableVersionMismatch,
)
from .estimators import PairIndexConvention
from .statistics import StatisticKind

__all__ = [
    "PUBLICATION_GRID",
    "DENSE_GRID",
    "GENERATOR_VERSION",
    "Alternative",
    "QuantileTable",
    "QuantileAccuracy",
    "empirical_quantile",
    "order_stat_rank",
    "lookup_quantile",
    "p_value",
    "quantile_accuracy",
    "write_table",
    "read_table",
    "save_table",
    "load_table",
    "parse_reference_table",
    "load_reference_table",
    "bundled_table_path",
    "load_bundled_table",
]

GENERATOR_VERSION = "1"

# The 12 probabilities used in published tables.
PUBLICATION_GRID = (0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 0.975, 0.98, 0.99, 0.995)

# Dense profile for p-value service: 0.5005, 0.5010, ..., 0.9995.
DENSE_GRID = tuple(round(0.5 + 0.0005 * k, 4) for k in range(1, 1000))

# p_value refuses grids smaller than this (publication grids are for
# critical values, not p-values).
DENSE_MIN_POINTS = 100


class Alternative(Enum):
    TWO_SIDED = "two-sided"
    GREATER = "greater"
    LESS = "less"


def order_stat_rank(p: float, count: int) -> int:
    """1-based rank ceil(p * count), guarded against float noise in p.

    Products within 1e-6 of an integer are snapped to it so that decimal
    probabilities like 0.975 produce the mathematically intended rank.
    """
    x = round(p * count, 6)
    return min(max(math.ceil(x), 1), count)


def empirical_quantile(values, p: float) -> float:
    """Inverse-ECDF quantile: order statistic at rank ceil(p*N)."""
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise EmptyInput("empirical_quantile: no values")
    if not 0.0 < p < 1.0:
        raise InvalidProbability(f"empirical_quantile: p={p} outside (0, 1)")
    return float(np.sort(arr)[order_stat_rank(p, arr.size) - 1])


@dataclass(frozen=True)
class QuantileTable:
    """Per-(n, p) lower quantiles of one statistic plus the generation
    metadata needed to reproduce the file bit-for-bit."""

    statistic: StatisticKind
    grid: tuple[float, ...]
    rows: dict[int, tuple[float, ...]]
    replications: int | None = None
    seed: int | None = None
    block_size: int | None = None
    convention: PairIndexConvention | None = None
    generator_version: str = GENERATOR_VERSION

    def __post_init__(self):
        grid = tuple(float(p) for p in self.grid)
        object.__setattr__(self, "grid", grid)
        if not grid or any(not 0.5 < p < 1.0 for p in grid):
            raise TableFormatError("grid probabilities must lie in (0.5, 1)")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise TableFormatError("grid must be strictly increasing")
        rows = {int(n): tuple(float(q) for q in row) for n, row in self.rows.items()}
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise TableFormatError("table has no rows")
        for n, row in rows.items():
            if len(row) != len(grid):
                raise TableFormatError(f"row n={n} has {len(row)} values, grid has {len(grid)}")
            if row[0] <= 0.0 or any(b <= a for a, b in zip(row, row[1:])):
                raise TableFormatError(f"row n={n} is not strictly increasing and positive")

    @property
    def sample_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(self.rows))

    def row(self, n: int) -> tuple[float, ...]:
        sizes = self.sample_sizes
        if n < sizes[0]:
            raise SampleSizeBelowTable(f"n={n} below smallest tabled size {sizes[0]}")
        if n not in self.rows:
            raise TableRowMissing(f"no row for n={n}")
        return self.rows[n]


def lookup_quantile(table: QuantileTable, n: int, p: float) -> float:
    """Lower p-quantile for sample size n.

    Interpolates linearly in p on the table grid.  p below 0.5 is served
    by symmetry, p = 0.5 is exactly 0.  Sample sizes above the tabled
    range fall back to the standard normal quantile with a
    NormalFallbackWarning; probabilities outside the grid hull raise
    (no extrapolation).
    """
    if not 0.0 < p < 1.0:
        raise InvalidProbability(f"lookup_quantile: p={p} outside (0, 1)")
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return -lookup_quantile(table, n, 1.0 - p)
    sizes = table.sample_sizes
    if n > sizes[-1]:
        warnings.warn(
            f"n={n} above largest tabled size {sizes[-1]}; using the normal quantile",
            NormalFallbackWarning,
            stacklevel=2,
        )
        return float(ndtri(p))
    row = table.row(n)
    grid = table.grid
    if p < grid[0] or p > grid[-1]:
        raise ProbabilityOutsideGrid(f"p={p} outside grid [{grid[0]}, {grid[-1]}]")
    return float(np.interp(p, grid, row))


def _g_of_abs(table: QuantileTable, n: int, x: float) -> float:
    """Empirical CDF of |T| at x >= 0: piecewise-linear inverse of the
    (q_p, 2p-1) map, anchored at (0, 0) and clamped at the grid edge."""
    row = table.row(n)
    qs = np.concatenate([[0.0], np.asarray(row)])
    gs = np.concatenate([[0.0], 2.0 * np.asarray(table.grid) - 1.0])
    return float(np.interp(x, qs, gs))


def p_value(table: QuantileTable, n: int, t_obs: float, alternative: Alternative = Alternative.TWO_SIDED) -> float:
    """p-value from a dense-grid table.

    TWO_SIDED is 1 - G(|t|) with G the empirical CDF of |T|; one-sided
    values follow from symmetry.  Results are clamped below at the grid
    resolution floor (1 - g_max two-sided, half that one-sided): the
    table cannot resolve smaller tail probabilities.
    """
    if len(table.grid) < DENSE_MIN_POINTS:
        raise GridTooCoarse(
            f"p-values need a dense grid (>= {DENSE_MIN_POINTS} points); this table has {len(table.grid)}"
        )
    g_max = 2.0 * table.grid[-1] - 1.0
    g_abs = _g_of_abs(table, n, abs(t_obs))
    if alternative is Alternative.TWO_SIDED:
        return max(1.0 - g_abs, 1.0 - g_max)
    f_obs = 0.5 * (1.0 + g_abs) if t_obs >= 0 else 0.5 * (1.0 - g_abs)
    floor = 0.5 * (1.0 - g_max)
    if alternative is Alternative.GREATER:
        return max(1.0 - f_obs, floor)
    return max(f_obs, floor)


@dataclass(frozen=True)
class QuantileAccuracy:
    """Accuracy of one empirical quantile.

    ``density`` estimates the statistic's density f at the quantile by a
    finite difference on the table row.  ``stderr`` is the Monte Carlo
    standard error of the quantile estimate,
    sqrt(p'(1-p')/N) / (2 f) with p' = 2p-1, i.e. the standard
    asymptotic formula applied on the |T| scale (whose CDF slope is 2f),
    where the halved tail mass bought by symmetry shows up as p'.
    """

    p: float
    replications: int
    density: float
    stderr: float


def quantile_accuracy(p: float, replications: int, grid, row) -> QuantileAccuracy:
    """Standard error of the empirical p-quantile of a table row built
    from ``replications`` draws.

    The density is a central finite difference across the grid points
    around p (one-sided at the grid edges).
    """
    if not 0.0 < p < 1.0 or p == 0.5:
        raise InvalidProbability(f"quantile_accuracy: p={p}")
    if p < 0.5:
        p = 1.0 - p
    grid = tuple(float(g) for g in grid)
    row = tuple(float(q) for q in row)
    if len(grid) < 2:
        raise InsufficientGridPoints("need at least two grid points")
    if p < grid[0] or p > grid[-1]:
        raise InsufficientGridPoints(f"p={p} outside grid hull [{grid[0]}, {grid[-1]}]")
    eps = 1e-12
    hit = next((k for k, g in enumerate(grid) if abs(g - p) < eps), None)
    if hit is not None:
        a = max(hit - 1, 0)
        b = min(hit + 1, len(grid) - 1)
    else:
        b = next(k for k, g in enumerate(grid) if g > p)
        a = b - 1
    f_hat = (grid[b] - grid[a]) / (row[b] - row[a])
    p_eff = 2.0 * p - 1.0
    stderr = math.sqrt(p_eff * (1.0 - p_eff) / replications) / (2.0 * f_hat)
    return QuantileAccuracy(p=p, replications=replications, density=f_hat, stderr=stderr)


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------


def write_table(table: QuantileTable, fp) -> None:
    header = {
        "generator_version": table.generator_version,
        "statistic": table.statistic.value,
        "N": table.replications,
        "seed": table.seed,
        "convention": table.convention.value if table.convention else None,
        "block_size": table.block_size,
        "grid": list(table.grid),
    }
    fp.write(json.dumps(header) + "\n")
    fp.write("n," + ",".join(repr(p) for p in table.grid) + "\n")
    for n in table.sample_sizes:
        fp.write(f"{n}," + ",".join(repr(q) for q in table.rows[n]) + "\n")


def save_table(table: QuantileTable, path) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        write_table(table, fp)


def read_table(fp) -> QuantileTable:
    lines = [line.rstrip("\n") for line in fp if line.strip()]
    if len(lines) < 3:
        raise TableFormatError("table file truncated")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"bad JSON header: {exc}") from None
    version = header.get("generator_version")
    if version != GENERATOR_VERSION:
        raise TableVersionMismatch(f"table version {version!r} != supported {GENERATOR_VERSION!r}")
    grid = tuple(float(p) for p in header["grid"])
    columns = lines[1].split(",")
    if columns[0] != "n" or len(columns) != len(grid) + 1:
        raise TableFormatError("CSV header does not match the grid")
    rows = {}
    for line in lines[2:]:
        parts = line.split(",")
        if len(parts) != len(grid) + 1:
            raise TableFormatError(f"row has {len(parts) - 1} values, expected {len(grid)}")
        rows[int(parts[0])] = tuple(float(v) for v in parts[1:])
    convention = header.get("convention")
    return QuantileTable(
        statistic=StatisticKind(header["statistic"]),
        grid=grid,
        rows=rows,
        replications=header.get("N"),
        seed=header.get("seed"),
        block_size=header.get("block_size"),
        convention=PairIndexConvention(convention) if convention else None,
    )


def load_table(path) -> QuantileTable:
    with open(path, "r", encoding="utf-8") as fp:
        return read_table(fp)


# ---------------------------------------------------------------------------
# Published reference tables (validation targets)
# ---------------------------------------------------------------------------


def parse_reference_table(text: str) -> dict[int, tuple[float, ...]]:
    """Parse rows of published reference quantiles: a sample size followed
    by the 12 publication-grid quantiles.

    Tolerates plain whitespace/CSV layouts as well as LaTeX table rows
    (``&`` separators, ``\\\\`` terminators); lines that do not match are
    skipped.
    """
    rows: dict[int, tuple[float, ...]] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].replace("\\\\", " ").replace("&", " ").replace(",", " ")
        parts = line.split()
        if len(parts) != 13:
            continue
        try:
            n = int(parts[0])
            vals = tuple(float(v) for v in parts[1:])
        except ValueError:
            continue
        rows[n] = vals
    return rows


def _data_dir() -> Path:
    return Path(resources.files("robust_ttest") / "data")


def load_reference_table(statistic: StatisticKind) -> QuantileTable:
    """Published reference quantiles (n = 4..50, publication grid) wrapped
    as a QuantileTable.  Replication metadata is unknown for these."""
    name = {StatisticKind.T_A: "ta_reference.txt", StatisticKind.T_B: "tb_reference.txt"}[statistic]
    text = (_data_dir() / "reference" / name).read_text(encoding="utf-8")
    rows = parse_reference_table(text)
    convention = PairIndexConvention.STRICT if statistic is StatisticKind.T_B else None
    return QuantileTable(statistic=statistic, grid=PUBLICATION_GRID, rows=rows, convention=convention)


def bundled_table_path(statistic: StatisticKind, table_dir: str | Path | None = None) -> Path:
    """Path of the bundled publication-grid table for a statistic,
    optionally taken from an alternate directory."""
    name = f"{statistic.value}_publication.table"
    base = Path(table_dir) if table_dir else _data_dir() / "tables"
    return base / name


def load_bundled_table(statistic: StatisticKind, table_dir: str | Path | None = None) -> QuantileTable:
    return load_table(bundled_table_path(statistic, table_dir))


def table_to_string(table: QuantileTable) -> str:
    buf = io.StringIO()
    write_table(table, buf)
    return buf.getvalue()
