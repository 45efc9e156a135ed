"""Reproducible experiment drivers emitting plot-ready tabular output.

Three studies:

* contamination -- replace the last butterfat observation with a sweep of
  values and track how each method's confidence interval reacts;
* power        -- empirical rejection rates over a grid of true means,
  optionally with one observation overwritten by a gross outlier;
* convergence  -- per-(n, p) deviation of tabulated quantiles from the
  standard normal quantile.

Each driver returns a list of plain row tuples and has a CSV writer; the
power study is seeded and bit-reproducible, the other two are
deterministic functions of their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import stats as _sps
from scipy.special import ndtri

from .datasets import BUTTERFAT
from .errors import TableMissing
from .estimators import PairIndexConvention
from .simulate import DEFAULT_SEED, _statistic_batch
from .statistics import StatisticKind
from .tables import QuantileTable, lookup_quantile
from .inference import ci_student, ci_ta, ci_tb, upper_quantile

__all__ = [
    "ContaminationStudy",
    "PowerStudy",
    "run_contamination",
    "run_power",
    "run_convergence",
    "write_csv",
]

_METHOD_ORDER = (StatisticKind.STUDENT, StatisticKind.T_A, StatisticKind.T_B)


@dataclass(frozen=True)
class ContaminationStudy:
    """Sweep one observation of a base sample through a delta grid.

    The published butterfat interval is the equi-tailed 90% one, so that
    is the default level.  The replaced observation is the last one.
    """

    base_data: tuple[float, ...] = BUTTERFAT
    delta_grid: tuple[float, ...] = field(default_factory=lambda: tuple(np.linspace(0.0, 2000.0, 201)))
    alpha: float = 0.10
    replace_index: int = -1


@dataclass(frozen=True)
class PowerStudy:
    """Empirical power of the three tests for H0: mu = 0 at size alpha."""

    n: int = 10
    reps: int = 10_000
    mu_grid: tuple[float, ...] = field(default_factory=lambda: tuple(np.linspace(-2.0, 2.0, 81)))
    contaminate: bool = False
    contamination_value: float = 10.0
    alpha: float = 0.05


def _require_row(table: QuantileTable | None, n: int, what: str) -> QuantileTable:
    if table is None:
        raise TableMissing(f"{what}: table is required")
    if n not in table.rows:
        raise TableMissing(f"{what}: table has no row for n={n}")
    return table


def run_contamination(
    study: ContaminationStudy,
    ta_table: QuantileTable,
    tb_table: QuantileTable,
) -> list[tuple[float, str, float, float, float]]:
    """Rows (delta, method, lower, upper, length) for every delta in the
    grid; purely deterministic."""
    n = len(study.base_data)
    _require_row(ta_table, n, "run_contamination")
    _require_row(tb_table, n, "run_contamination")
    a2 = study.alpha / 2.0
    rows = []
    for delta in study.delta_grid:
        data = list(study.base_data)
        data[study.replace_index] = float(delta)
        cis = {
            StatisticKind.STUDENT: ci_student(data, study.alpha),
            StatisticKind.T_A: ci_ta(data, a2, a2, ta_table),
            StatisticKind.T_B: ci_tb(data, a2, a2, tb_table),
        }
        for method in _METHOD_ORDER:
            ci = cis[method]
            rows.append((float(delta), method.value, ci.lower, ci.upper, ci.length))
    return rows


def _power_cell(
    study: PowerStudy,
    mu: float,
    seed: int,
    cell_index: int,
    criticals: dict[StatisticKind, float],
    convention: PairIndexConvention,
) -> dict[StatisticKind, float]:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(cell_index,))))

    def draw(count: int) -> np.ndarray:
        X = mu + rng.standard_normal((count, study.n))
        if study.contaminate:
            X[:, 0] = study.contamination_value
        return X

    X = draw(study.reps)
    powers = {}
    for method in _METHOD_ORDER:
        t = _statistic_batch(method, X, 0.0, convention)
        bad = ~np.isfinite(t)
        while np.any(bad):  # zero-scale draws; probability 0 under continuous sampling
            Z = draw(int(bad.sum()))
            t[bad] = _statistic_batch(method, Z, 0.0, convention)
            bad = ~np.isfinite(t)
        powers[method] = float(np.mean(np.abs(t) > criticals[method]))
    return powers


def run_power(
    study: PowerStudy,
    ta_table: QuantileTable,
    tb_table: QuantileTable,
    seed: int = DEFAULT_SEED,
) -> list[tuple[float, str, float]]:
    """Rows (mu, method, power); bit-reproducible from the seed.

    Critical values for the robust tests come from each statistic's own
    row at n (not the normal limit); Student uses the exact t quantile.
    """
    n = study.n
    _require_row(ta_table, n, "run_power")
    _require_row(tb_table, n, "run_power")
    tail = study.alpha / 2.0
    criticals = {
        StatisticKind.STUDENT: float(_sps.t.ppf(1.0 - tail, n - 1)),
        StatisticKind.T_A: upper_quantile(ta_table, n, tail),
        StatisticKind.T_B: upper_quantile(tb_table, n, tail),
    }
    convention = tb_table.convention or PairIndexConvention.STRICT
    rows = []
    for idx, mu in enumerate(study.mu_grid):
        powers = _power_cell(study, float(mu), seed, idx, criticals, convention)
        for method in _METHOD_ORDER:
            rows.append((float(mu), method.value, powers[method]))
    return rows


def run_convergence(table: QuantileTable) -> list[tuple[int, float, float, float]]:
    """Rows (n, p, q, deviation) with deviation = q_p(n) - PhiInv(p),
    including the trivial p = 0.5 anchor row."""
    rows = []
    for n in table.sample_sizes:
        rows.append((n, 0.5, 0.0, 0.0))
        for p in table.grid:
            q = lookup_quantile(table, n, p)
            rows.append((n, float(p), q, q - float(ndtri(p))))
    return rows


def write_csv(rows, columns: tuple[str, ...], fp, metadata: dict | None = None) -> None:
    """Write rows as CSV with optional '# key: value' metadata comments."""
    if metadata:
        for key, value in metadata.items():
            fp.write(f"# {key}: {value}\n")
    fp.write(",".join(columns) + "\n")
    for row in rows:
        fp.write(",".join(_format_cell(v) for v in row) + "\n")


def _format_cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)
