"""Command-line interface.

Subcommands: gen-table (Monte Carlo table generation), test (hypothesis
tests), ci (confidence intervals), experiment (the study drivers).

Input data is a single-column CSV of reals with an optional header and
'#' comments.  Exit codes: 0 success, 2 usage error, 3 data error,
4 numeric error (zero scale estimate).  The environment variable
ROBUST_TTEST_TABLE_DIR overrides the directory searched for the bundled
quantile tables.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .errors import (
    InvalidConfig,
    RobustTTestError,
    TableFormatError,
    TableMissing,
    ZeroScale,
)
from .estimators import PairIndexConvention
from .experiments import (
    ContaminationStudy,
    PowerStudy,
    run_contamination,
    run_convergence,
    run_power,
    write_csv,
)
from .inference import ci_student, ci_ta, ci_tb, test_mu
from .simulate import DEFAULT_SEED, SimulationConfig, generate_table
from .statistics import StatisticKind
from .tables import (
    DENSE_GRID,
    PUBLICATION_GRID,
    QuantileTable,
    load_table,
    bundled_table_path,
    quantile_accuracy,
    save_table,
)

TABLE_DIR_ENV = "ROBUST_TTEST_TABLE_DIR"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4


class _UsageError(Exception):
    pass


class _DataError(Exception):
    pass


def read_value_column(path: str) -> list[float]:
    """Single-column CSV: optional header, '#' comments, blank lines."""
    try:
        with open(path, "r", encoding="utf-8") as fp:
            raw = fp.readlines()
    except OSError as exc:
        raise _DataError(f"cannot read {path}: {exc}") from None
    values: list[float] = []
    header_allowed = True
    for line in raw:
        cell = line.split("#", 1)[0].strip()
        if not cell:
            continue
        cell = cell.split(",")[0].strip()
        try:
            v = float(cell)
        except ValueError:
            if header_allowed:
                header_allowed = False
                continue
            raise _DataError(f"{path}: cannot parse {cell!r} as a number") from None
        header_allowed = False
        if v != v or v in (float("inf"), float("-inf")):
            raise _DataError(f"{path}: non-finite value {cell!r}")
        values.append(v)
    if not values:
        raise _DataError(f"{path}: no data values found")
    return values


def _resolve_table(kind: StatisticKind, explicit: dict[StatisticKind, QuantileTable]) -> QuantileTable:
    if kind in explicit:
        return explicit[kind]
    path = bundled_table_path(kind, os.environ.get(TABLE_DIR_ENV))
    if not Path(path).is_file():
        raise TableMissing(f"no table for {kind.value!r}: supply --table or set ${TABLE_DIR_ENV}")
    table = load_table(path)
    explicit[kind] = table
    return table


def _load_explicit_tables(paths) -> dict[StatisticKind, QuantileTable]:
    tables: dict[StatisticKind, QuantileTable] = {}
    for p in paths or ():
        table = load_table(p)
        tables[table.statistic] = table
    return tables


def _methods(arg: str) -> list[StatisticKind]:
    if arg == "all":
        return [StatisticKind.STUDENT, StatisticKind.T_A, StatisticKind.T_B]
    return [StatisticKind(arg)]


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_gen_table(args) -> int:
    grid = PUBLICATION_GRID if args.grid == "publication" else DENSE_GRID
    cfg = SimulationConfig(
        statistic=StatisticKind(args.stat),
        replications=args.reps,
        sample_sizes=tuple(range(args.n_min, args.n_max + 1)),
        probability_grid=grid,
        seed=args.seed,
        block_size=args.block_size,
        convention=PairIndexConvention(args.shamos),
    )
    cfg.validate()

    def progress(n, seconds, row):
        print(f"n={n}: done in {seconds:.1f}s", flush=True)

    started = time.time()
    table = generate_table(cfg, workers=args.threads, progress=progress)
    save_table(table, args.out)
    # Show the Monte Carlo resolution actually achieved.
    for p in (0.95, 0.975, 0.995):
        if grid[0] < p < grid[-1] or p in grid:
            accs = [
                quantile_accuracy(p, cfg.replications, table.grid, table.rows[n]).stderr
                for n in cfg.sample_sizes
            ]
            print(f"stderr at p={p}: max {max(accs):.2e} over n")
    print(f"wrote {args.out} ({time.time() - started:.1f}s)")
    return EXIT_OK


def _print_interval(ci, as_json: bool):
    if as_json:
        print(json.dumps({
            "method": ci.method.value,
            "lower": ci.lower,
            "upper": ci.upper,
            "alpha1": ci.alpha1,
            "alpha2": ci.alpha2,
        }))
    else:
        level = 100.0 * (1.0 - ci.alpha)
        print(f"{ci.method.value:8s} {level:g}% CI: [{ci.lower:.4f}, {ci.upper:.4f}]  length {ci.length:.4f}")


def cmd_ci(args) -> int:
    values = read_value_column(args.input)
    if (args.alpha1 is None) != (args.alpha2 is None):
        raise _UsageError("--alpha1 and --alpha2 must be given together")
    if args.alpha1 is not None:
        a1, a2 = args.alpha1, args.alpha2
    else:
        a1 = a2 = args.alpha / 2.0
    explicit = _load_explicit_tables(args.table)
    for kind in _methods(args.method):
        if kind is StatisticKind.STUDENT:
            ci = ci_student(values, a1 + a2)
        elif kind is StatisticKind.T_A:
            ci = ci_ta(values, a1, a2, _resolve_table(kind, explicit))
        else:
            ci = ci_tb(values, a1, a2, _resolve_table(kind, explicit))
        _print_interval(ci, args.json)
    return EXIT_OK


def cmd_test(args) -> int:
    values = read_value_column(args.input)
    explicit = _load_explicit_tables(args.table)
    for kind in _methods(args.method):
        table = None
        if kind is not StatisticKind.STUDENT:
            table = _resolve_table(kind, explicit)
        result = test_mu(values, args.mu0, args.alpha, kind, table)
        if args.json:
            print(json.dumps({
                "method": kind.value,
                "statistic": result.statistic_value,
                "critical_value": result.critical_value,
                "p_value": result.p_value,
                "reject": result.reject,
                "mu0": result.mu0,
                "alpha": result.alpha,
            }))
        else:
            verdict = "reject H0" if result.reject else "do not reject H0"
            ptxt = f"p={result.p_value:.4g}" if result.p_value is not None else "p=n/a (coarse grid)"
            print(
                f"{kind.value:8s} T={result.statistic_value: .4f}  |T|>{result.critical_value:.4f}? "
                f"{verdict} at alpha={args.alpha:g} (mu0={args.mu0:g}, {ptxt})"
            )
    return EXIT_OK


def cmd_experiment(args) -> int:
    out_fp = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        explicit = _load_explicit_tables(args.table)
        if args.kind == "contamination":
            study = ContaminationStudy(alpha=args.alpha)
            rows = run_contamination(
                study,
                _resolve_table(StatisticKind.T_A, explicit),
                _resolve_table(StatisticKind.T_B, explicit),
            )
            write_csv(rows, ("delta", "method", "lower", "upper", "length"), out_fp,
                      metadata={"alpha": study.alpha, "replaced_index": "last"})
        elif args.kind == "power":
            study = PowerStudy(contaminate=args.contaminate, reps=args.reps, alpha=args.alpha)
            rows = run_power(
                study,
                _resolve_table(StatisticKind.T_A, explicit),
                _resolve_table(StatisticKind.T_B, explicit),
                seed=args.seed,
            )
            write_csv(rows, ("mu", "method", "power"), out_fp, metadata={
                "alpha": study.alpha,
                "reps": study.reps,
                "n": study.n,
                "contaminated": study.contaminate,
                "critical_values": "per-statistic table row (robust), exact t quantile (student)",
                "seed": args.seed,
            })
        else:  # convergence
            if not args.table:
                raise _UsageError("--kind convergence requires --table")
            table = load_table(args.table[0])
            rows = run_convergence(table)
            write_csv(rows, ("n", "p", "q", "deviation"), out_fp,
                      metadata={"statistic": table.statistic.value})
    finally:
        if out_fp is not sys.stdout:
            out_fp.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="robust-ttest", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-table", help="generate a Monte Carlo quantile table")
    g.add_argument("--stat", required=True, choices=["ta", "tb"])
    g.add_argument("--n-min", type=int, default=4)
    g.add_argument("--n-max", type=int, default=50)
    g.add_argument("--reps", type=int, default=1_000_000)
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("--grid", choices=["publication", "dense"], default="publication")
    g.add_argument("--shamos", choices=["strict", "inclusive"], default="strict",
                   help="pairwise index convention (strict: i<j, inclusive: i<=j)")
    g.add_argument("--block-size", type=int, default=100_000)
    g.add_argument("--threads", type=int, default=1,
                   help="worker threads; never changes the output bytes")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen_table)

    t = sub.add_parser("test", help="test H0: mu = mu0 on a data file")
    t.add_argument("input", help="single-column CSV of observations")
    t.add_argument("--mu0", type=float, required=True)
    t.add_argument("--alpha", type=float, default=0.05)
    t.add_argument("--method", choices=["ta", "tb", "student", "all"], default="all")
    t.add_argument("--table", action="append", help="table file (repeatable)")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_test)

    c = sub.add_parser("ci", help="confidence intervals for mu")
    c.add_argument("input")
    c.add_argument("--alpha", type=float, default=0.05)
    c.add_argument("--alpha1", type=float, default=None)
    c.add_argument("--alpha2", type=float, default=None)
    c.add_argument("--method", choices=["ta", "tb", "student", "all"], default="all")
    c.add_argument("--table", action="append")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_ci)

    e = sub.add_parser("experiment", help="run a study and emit CSV")
    e.add_argument("--kind", required=True, choices=["contamination", "power", "convergence"])
    e.add_argument("--out", default=None, help="output CSV (default stdout)")
    e.add_argument("--table", action="append")
    e.add_argument("--alpha", type=float, default=None)
    e.add_argument("--reps", type=int, default=10_000)
    e.add_argument("--seed", type=int, default=DEFAULT_SEED)
    e.add_argument("--contaminate", action="store_true")
    e.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "alpha", None) is None and getattr(args, "command", "") == "experiment":
        args.alpha = 0.10 if args.kind == "contamination" else 0.05
    try:
        return args.func(args)
    except (_UsageError, InvalidConfig) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ZeroScale as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (_DataError, TableMissing, TableFormatError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except RobustTTestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
