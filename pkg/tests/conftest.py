import numpy as np
import pytest

from robust_ttest import (
    DENSE_GRID,
    BUTTERFAT,
    SimulationConfig,
    StatisticKind,
    generate_table,
)

# Small deterministic tables shared across the suite.  Accuracy scales
# with N; these are sized for what each consumer actually needs.


@pytest.fixture(scope="session")
def butterfat():
    return BUTTERFAT


@pytest.fixture(scope="session")
def coarse_tables():
    """Low-N publication-grid tables for n = 4..30: plenty for algebra
    and duality tests, which only need self-consistent quantiles."""
    sizes = tuple(range(4, 31))
    ta = generate_table(SimulationConfig(StatisticKind.T_A, 10_000, sizes, seed=101))
    tb = generate_table(SimulationConfig(StatisticKind.T_B, 10_000, sizes, seed=101))
    return {"ta": ta, "tb": tb}


@pytest.fixture(scope="session")
def ta_table_n10():
    """Accurate-ish T_A table at n=10 (publication grid)."""
    return generate_table(SimulationConfig(StatisticKind.T_A, 200_000, (10,), seed=202))


@pytest.fixture(scope="session")
def tb_table_n10():
    return generate_table(SimulationConfig(StatisticKind.T_B, 200_000, (10,), seed=202))


@pytest.fixture(scope="session")
def ta_dense_n10():
    """Dense-grid T_A table at n=10 for p-value tests."""
    return generate_table(
        SimulationConfig(StatisticKind.T_A, 200_000, (10,), probability_grid=DENSE_GRID, seed=303)
    )


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
