"""Tests for the contamination, power, and convergence studies."""

import io

import numpy as np
import pytest

from robust_ttest.errors import TableMissing
from robust_ttest.experiments import (
    ContaminationStudy,
    PowerStudy,
    run_contamination,
    run_convergence,
    run_power,
    write_csv,
)
from robust_ttest.statistics import StatisticKind
from robust_ttest.tables import load_reference_table


@pytest.fixture(scope="module")
def ref_tables():
    return (
        load_reference_table(StatisticKind.T_A),
        load_reference_table(StatisticKind.T_B),
    )


def by_method(rows, key_index=1):
    out = {}
    for row in rows:
        out.setdefault(row[key_index], []).append(row)
    return out


class TestContamination:
    def test_original_data_reproduces_published_student_ci(self, ref_tables):
        # delta = 392 restores the untouched butterfat sample; the
        # published interval is the equi-tailed 90% one.
        study = ContaminationStudy(delta_grid=(392.0,))
        rows = run_contamination(study, *ref_tables)
        student = by_method(rows)["student"][0]
        assert student[2] == pytest.approx(472.80, abs=0.05)
        assert student[3] == pytest.approx(542.20, abs=0.05)

    def test_deterministic(self, ref_tables):
        study = ContaminationStudy(delta_grid=tuple(np.linspace(0, 2000, 21)))
        assert run_contamination(study, *ref_tables) == run_contamination(study, *ref_tables)

    def test_student_blows_up_robust_do_not(self, ref_tables):
        # The t factor cancels in the length ratio, leaving the ratio of
        # sample standard deviations; for this data that is exactly
        # sqrt(2237981.8 / 153049) = 3.82396 (direct computation).
        study = ContaminationStudy(delta_grid=(392.0, 2000.0))
        rows = by_method(run_contamination(study, *ref_tables))
        student_len = {r[0]: r[4] for r in rows["student"]}
        assert student_len[2000.0] / student_len[392.0] == pytest.approx(3.82396, abs=1e-4)
        for method in ("ta", "tb"):
            lengths = [r[4] for r in rows[method]]
            assert max(lengths) / min(lengths) < 2.0

    def test_rows_cover_grid_and_methods(self, ref_tables):
        study = ContaminationStudy(delta_grid=tuple(np.linspace(0, 2000, 11)))
        rows = run_contamination(study, *ref_tables)
        assert len(rows) == 11 * 3
        lengths = [r[4] for r in rows]
        assert all(v >= 0 for v in lengths)

    def test_missing_row_raises(self, ref_tables):
        study = ContaminationStudy(base_data=tuple(range(60)), delta_grid=(1.0,))
        with pytest.raises(TableMissing):
            run_contamination(study, *ref_tables)


@pytest.fixture(scope="module")
def small_study_rows(ref_tables):
    study = PowerStudy(mu_grid=(-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0), reps=10_000)
    return run_power(study, *ref_tables, seed=7)


class TestPower:
    def test_reproducible(self, ref_tables):
        study = PowerStudy(mu_grid=(0.0, 1.0), reps=1500)
        a = run_power(study, *ref_tables, seed=11)
        b = run_power(study, *ref_tables, seed=11)
        assert a == b
        c = run_power(study, *ref_tables, seed=12)
        assert a != c

    def test_size_near_alpha_at_origin(self, small_study_rows):
        at_zero = [r for r in small_study_rows if r[0] == 0.0]
        for _, method, power in at_zero:
            assert power == pytest.approx(0.05, abs=0.01), method

    def test_saturates_at_extremes(self, small_study_rows):
        # Direct simulation: student/tb exceed 0.99 at |mu| = 2, while the
        # median/MAD test tops out near 0.977 there (it is noticeably the
        # least efficient of the three under clean normal data).
        powers = {(r[0], r[1]): r[2] for r in small_study_rows}
        for mu in (-2.0, 2.0):
            assert powers[(mu, "student")] > 0.99
            assert powers[(mu, "tb")] > 0.99
            assert 0.95 < powers[(mu, "ta")] < powers[(mu, "tb")]

    def test_symmetry_in_mu(self, small_study_rows):
        rows = by_method(small_study_rows)
        for method, mrows in rows.items():
            power = {r[0]: r[2] for r in mrows}
            for mu in (0.5, 1.0, 2.0):
                assert power[mu] == pytest.approx(power[-mu], abs=0.02), method

    def test_nondecreasing_in_abs_mu(self, small_study_rows):
        rows = by_method(small_study_rows)
        for method, mrows in rows.items():
            power = {r[0]: r[2] for r in mrows}
            for seq in ((0.0, 0.5, 1.0, 2.0), (0.0, -0.5, -1.0, -2.0)):
                for a, b in zip(seq, seq[1:]):
                    assert power[b] >= power[a] - 0.02, (method, a, b)

    def test_contaminated_robust_tests_win(self, ref_tables):
        study = PowerStudy(mu_grid=(-1.5,), reps=4000, contaminate=True)
        rows = {r[1]: r[2] for r in run_power(study, *ref_tables, seed=9)}
        assert rows["ta"] > rows["student"]
        assert rows["tb"] > rows["student"]


class TestConvergence:
    def test_known_deviations(self, ref_tables):
        _, tb = ref_tables
        rows = run_convergence(tb)
        cell = {(n, p): dev for n, p, _, dev in rows}
        assert cell[(50, 0.975)] == pytest.approx(0.034, abs=1e-3)
        assert cell[(50, 0.5)] == 0.0

    def test_ta_deviation_larger_than_tb(self, ref_tables):
        ta, tb = ref_tables
        dev_ta = {(n, p): d for n, p, _, d in run_convergence(ta)}
        dev_tb = {(n, p): d for n, p, _, d in run_convergence(tb)}
        assert dev_ta[(50, 0.975)] == pytest.approx(0.103, abs=1e-3)
        assert dev_ta[(50, 0.975)] > dev_tb[(50, 0.975)]


class TestCsv:
    def test_layout_and_metadata(self):
        buf = io.StringIO()
        write_csv([(1.0, "x", 0.25)], ("a", "b", "c"), buf, metadata={"seed": 3})
        lines = buf.getvalue().splitlines()
        assert lines[0] == "# seed: 3"
        assert lines[1] == "a,b,c"
        assert lines[2] == "1.0,x,0.25"
