"""Robust one-sample location inference with Monte Carlo small-sample
critical values.

The package provides median/MAD and Hodges-Lehmann/Shamos studentized
statistics, a reproducible Monte Carlo engine that tabulates their
small-sample null quantiles, and confidence intervals / hypothesis tests
backed by those tables.
"""

from .errors import (
    EmptyInput,
    EmptySample,
    GridTooCoarse,
    InsufficientGridPoints,
    InvalidConfig,
    InvalidProbability,
    NonFiniteSample,
    NormalFallbackWarning,
    ProbabilityOutsideGrid,
    RankOutOfRange,
    RobustTTestError,
    SampleSizeBelowTable,
    SampleTooSmall,
    TableFormatError,
    TableMissing,
    TableRowMissing,
    TableVersionMismatch,
    ZeroScale,
)
from .estimators import (
    PairIndexConvention,
    PairwiseKind,
    hodges_lehmann,
    mad,
    median,
    pairwise_select,
    shamos,
)
from .statistics import CONSTANTS, NormalConstants, StatisticKind, student_t, t_a, t_b
from .tables import (
    DENSE_GRID,
    PUBLICATION_GRID,
    Alternative,
    QuantileAccuracy,
    QuantileTable,
    empirical_quantile,
    load_bundled_table,
    load_reference_table,
    load_table,
    lookup_quantile,
    p_value,
    quantile_accuracy,
    save_table,
)
from .simulate import DEFAULT_SEED, SimulationConfig, generate_table, simulate_statistics
from .inference import (
    ConfidenceInterval,
    TestResult,
    ci_student,
    ci_ta,
    ci_tb,
    test_mu,
)
from .datasets import BUTTERFAT

__version__ = "0.1.0"
