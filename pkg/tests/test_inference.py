"""Tests for confidence intervals and hypothesis tests."""

import numpy as np
import pytest
from scipy.optimize import brentq

from robust_ttest import BUTTERFAT
from robust_ttest.errors import TableMissing, ZeroScale
from robust_ttest import inference
from robust_ttest.inference import TestResult, ci_student, ci_ta, ci_tb, upper_quantile
from robust_ttest.statistics import StatisticKind, student_t, t_a, t_b
from robust_ttest.tables import Alternative, QuantileTable, load_reference_table, lookup_quantile

# Butterfat Student intervals from a high-precision oracle (exact rational
# mean 507.5, mpmath t quantiles):
#   90%: [472.798216035, 542.201783965]   <- the published interval
#   95%: [465.495321073, 549.504678927]
BF_90 = (472.798216035, 542.201783965)
BF_95 = (465.495321073, 549.504678927)


class TestStudentCI:
    def test_published_interval_is_the_90_percent_one(self):
        ci = ci_student(BUTTERFAT, 0.10)
        assert ci.lower == pytest.approx(472.80, abs=0.05)
        assert ci.upper == pytest.approx(542.20, abs=0.05)
        assert ci.lower == pytest.approx(BF_90[0], abs=1e-6)
        assert ci.upper == pytest.approx(BF_90[1], abs=1e-6)

    def test_95_percent_interval(self):
        ci = ci_student(BUTTERFAT, 0.05)
        assert ci.lower == pytest.approx(BF_95[0], abs=1e-6)
        assert ci.upper == pytest.approx(BF_95[1], abs=1e-6)

    def test_width_shrinks_as_alpha_grows(self):
        wide = ci_student([-1.0, 1.0, 0.5, -0.5], 0.01)
        narrow = ci_student([-1.0, 1.0, 0.5, -0.5], 0.995)
        assert narrow.length < 0.05 * wide.length

    def test_symmetric_data_centered_at_zero(self):
        data = np.linspace(-3, 3, 13)
        ci = ci_student(data, 0.05)
        assert ci.lower == pytest.approx(-ci.upper, abs=1e-12)

    def test_zero_scale(self):
        with pytest.raises(ZeroScale):
            ci_student([2.0, 2.0, 2.0], 0.05)


def invert_statistic(stat_fn, data, target):
    """Root-finding oracle: the mu where the statistic equals target."""
    lo, hi = float(np.min(data)) - 1e4, float(np.max(data)) + 1e4
    return brentq(lambda mu: stat_fn(data, mu) - target, lo, hi, xtol=1e-12)


class TestRobustCIs:
    def test_ci_ta_butterfat_vs_root_finding(self):
        table = load_reference_table(StatisticKind.T_A)
        q = upper_quantile(table, 20, 0.025)
        assert q == 2.254  # published value at n=20, p=0.975
        ci = ci_ta(BUTTERFAT, 0.025, 0.025, table)
        assert ci.lower == pytest.approx(invert_statistic(t_a, BUTTERFAT, q), abs=1e-9)
        assert ci.upper == pytest.approx(invert_statistic(t_a, BUTTERFAT, -q), abs=1e-9)

    def test_ci_tb_butterfat_vs_root_finding(self):
        table = load_reference_table(StatisticKind.T_B)
        q = upper_quantile(table, 20, 0.025)
        ci = ci_tb(BUTTERFAT, 0.025, 0.025, table)
        assert ci.lower == pytest.approx(invert_statistic(t_b, BUTTERFAT, q), abs=1e-9)
        assert ci.upper == pytest.approx(invert_statistic(t_b, BUTTERFAT, -q), abs=1e-9)

    def test_asymmetric_tails_vs_root_finding(self):
        table = load_reference_table(StatisticKind.T_A)
        a1, a2 = 0.01, 0.04
        ci = ci_ta(BUTTERFAT, a1, a2, table)
        q_hi = upper_quantile(table, 20, a2)
        q_lo = upper_quantile(table, 20, 1.0 - a1)
        assert q_lo < 0 < q_hi
        assert ci.lower == pytest.approx(invert_statistic(t_a, BUTTERFAT, q_hi), abs=1e-9)
        assert ci.upper == pytest.approx(invert_statistic(t_a, BUTTERFAT, q_lo), abs=1e-9)

    def test_zero_quantile_degenerates_to_point(self):
        # A table with vanishing quantiles collapses the interval onto the
        # location estimate: the zero-width check of the algebra.
        tiny = QuantileTable(
            statistic=StatisticKind.T_A,
            grid=(0.6, 0.75, 0.9, 0.975),
            rows={20: (1e-300, 2e-300, 3e-300, 4e-300)},
        )
        ci = ci_ta(BUTTERFAT, 0.025, 0.025, tiny)
        assert ci.lower == pytest.approx(507.5, abs=1e-9)
        assert ci.upper == pytest.approx(507.5, abs=1e-9)
        tiny_b = QuantileTable(
            statistic=StatisticKind.T_B,
            grid=(0.6, 0.75, 0.9, 0.975),
            rows={20: (1e-300, 2e-300, 3e-300, 4e-300)},
        )
        ci_b = ci_tb(BUTTERFAT, 0.025, 0.025, tiny_b)
        from robust_ttest.estimators import hodges_lehmann

        assert ci_b.lower == pytest.approx(hodges_lehmann(BUTTERFAT), abs=1e-9)

    @pytest.mark.parametrize("maker", ["ta", "tb", "student"])
    def test_translation_equivariance(self, maker, coarse_tables, rng):
        x = rng.standard_normal(12) * 3.0
        a, b = 2.5, -7.0
        y = a * x + b
        if maker == "student":
            ci1, ci2 = ci_student(x, 0.1), ci_student(y, 0.1)
        elif maker == "ta":
            t = coarse_tables["ta"]
            ci1, ci2 = ci_ta(x, 0.05, 0.05, t), ci_ta(y, 0.05, 0.05, t)
        else:
            t = coarse_tables["tb"]
            ci1, ci2 = ci_tb(x, 0.05, 0.05, t), ci_tb(y, 0.05, 0.05, t)
        assert ci2.lower == pytest.approx(a * ci1.lower + b, rel=1e-9, abs=1e-9)
        assert ci2.upper == pytest.approx(a * ci1.upper + b, rel=1e-9, abs=1e-9)

    @pytest.mark.parametrize("kind", ["ta", "tb"])
    def test_coverage_at_n10(self, kind, ta_table_n10, tb_table_n10):
        """Equi-tailed 95% intervals cover the true mean about 95% of the
        time; the table was built from the same statistic, so coverage is
        right by construction up to Monte Carlo noise."""
        table = ta_table_n10 if kind == "ta" else tb_table_n10
        make = ci_ta if kind == "ta" else ci_tb
        gen = np.random.default_rng(2024)
        reps = 10_000
        covered = 0
        for _ in range(reps):
            x = gen.standard_normal(10)
            ci = make(x, 0.025, 0.025, table)
            covered += ci.lower <= 0.0 <= ci.upper
        assert covered / reps == pytest.approx(0.95, abs=0.01)


class TestTestMu:
    def test_statistic_zero_never_rejects(self, ta_dense_n10):
        data = [1.0, 2.0, 3.0, 4.0, 4.5, 5.0, 6.0, 7.0, 8.0, 9.0]
        mu0 = float(np.median(data))
        for alpha in (0.05, 0.5, 0.9, 0.99):
            r = inference.test_mu(data, mu0, alpha, StatisticKind.T_A, ta_dense_n10)
            assert r.statistic_value == 0.0
            assert not r.reject

    def test_requires_table_for_robust_methods(self):
        with pytest.raises(TableMissing):
            inference.test_mu([1.0, 2.0, 3.0, 4.0], 0.0, 0.05, StatisticKind.T_A)

    def test_reject_iff_exceeds_critical(self, coarse_tables, rng):
        for _ in range(40):
            x = rng.standard_normal(8) + rng.uniform(-1, 1)
            r = inference.test_mu(x, 0.0, 0.1, StatisticKind.T_B, coarse_tables["tb"])
            assert r.reject == (abs(r.statistic_value) > r.critical_value)

    def test_duality_with_ci(self, coarse_tables, rng):
        """reject at level alpha iff mu0 falls outside the equi-tailed CI."""
        boundary = 1e-12
        for _ in range(100):
            n = int(rng.integers(4, 28))
            x = rng.standard_normal(n) * rng.uniform(0.5, 5.0) + rng.uniform(-5, 5)
            mu0 = rng.uniform(-6, 6)
            alpha = rng.uniform(0.02, 0.6)
            for kind in (StatisticKind.T_A, StatisticKind.T_B, StatisticKind.STUDENT):
                table = {StatisticKind.T_A: coarse_tables["ta"], StatisticKind.T_B: coarse_tables["tb"]}.get(kind)
                r = inference.test_mu(x, mu0, alpha, kind, table)
                if kind is StatisticKind.STUDENT:
                    ci = ci_student(x, alpha)
                elif kind is StatisticKind.T_A:
                    ci = ci_ta(x, alpha / 2, alpha / 2, table)
                else:
                    ci = ci_tb(x, alpha / 2, alpha / 2, table)
                outside = mu0 < ci.lower - boundary or mu0 > ci.upper + boundary
                near_edge = min(abs(mu0 - ci.lower), abs(mu0 - ci.upper)) < boundary
                if not near_edge:
                    assert r.reject == outside

    def test_student_p_value_consistent_with_rejection(self, rng):
        for _ in range(30):
            x = rng.standard_normal(9) + 0.4
            alpha = float(rng.uniform(0.01, 0.5))
            r = inference.test_mu(x, 0.0, alpha, StatisticKind.STUDENT)
            assert r.p_value is not None
            if abs(r.p_value - alpha) > 1e-9:
                assert r.reject == (r.p_value < alpha)

    def test_p_value_none_on_coarse_table(self, coarse_tables):
        r = inference.test_mu([1.0, 2.0, 3.0, 4.0, 4.1], 0.0, 0.05, StatisticKind.T_A, coarse_tables["ta"])
        assert r.p_value is None

    def test_p_value_filled_with_dense_table(self, ta_dense_n10, rng):
        x = rng.standard_normal(10)
        r = inference.test_mu(x, 0.0, 0.05, StatisticKind.T_A, ta_dense_n10)
        assert r.p_value is not None
        # reject agrees with the p-value up to the dense grid resolution
        if abs(r.p_value - 0.05) > 0.002:
            assert r.reject == (r.p_value < 0.05)

    def test_one_sided(self, ta_dense_n10, rng):
        x = rng.standard_normal(10) + 3.0  # clearly above 0
        up = inference.test_mu(x, 0.0, 0.05, StatisticKind.T_A, ta_dense_n10, Alternative.GREATER)
        down = inference.test_mu(x, 0.0, 0.05, StatisticKind.T_A, ta_dense_n10, Alternative.LESS)
        assert up.reject and not down.reject
        assert up.p_value < 0.05 < down.p_value

    def test_result_is_frozen_record(self, rng):
        r = inference.test_mu(rng.standard_normal(6), 0.0, 0.05, StatisticKind.STUDENT)
        assert isinstance(r, TestResult)
        with pytest.raises(Exception):
            r.reject = True
