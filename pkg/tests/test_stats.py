"""
Tests for Friedman ranking, post hoc step-down procedures and result
matrix files.
"""

import shutil
import tempfile
import unittest
from pathlib import Path

import numpy as np
import pytest
from scipy import stats as scipy_stats

from src.antbench.models import RankTable, ResultMatrix
from src.antbench.stats import (
    CONTROL_VS_ALL,
    HOMMEL,
    SHAFFER,
    MatrixParseError,
    average_ranks,
    compare_to_control,
    comparisons_frame,
    friedman_test,
    hommel_adjust,
    iman_davenport,
    pairwise_comparisons,
    pairwise_z,
    ranks_frame,
    read_result_matrix,
    shaffer_sequence,
    stepdown_thresholds,
    two_sided_p,
)


def matrix(values, algorithms=None) -> ResultMatrix:
    values = np.asarray(values, dtype=float)
    n, m = values.shape
    algorithms = algorithms or tuple(f"alg{j}" for j in range(m))
    return ResultMatrix(values, tuple(f"ds{i}" for i in range(n)), tuple(algorithms))


DOMINANCE = matrix([[0.1, 0.2, 0.3], [0.05, 0.1, 0.4], [0.2, 0.3, 0.35], [0.0, 0.01, 0.02]])


class TestRanks(unittest.TestCase):
    """Fractional ranking."""

    def test_tied_row(self):
        table = average_ranks(matrix([[0.10, 0.10, 0.30], [0.2, 0.1, 0.3]]))
        np.testing.assert_allclose(table.ranks[0], [1.5, 1.5, 3.0])

    def test_identical_columns(self):
        table = average_ranks(matrix(np.full((5, 4), 0.2)))
        np.testing.assert_allclose(table.average_ranks, np.full(4, 2.5))

    def test_strict_order(self):
        table = average_ranks(matrix([[0.1, 0.2], [0.3, 0.4], [0.0, 0.5]]))
        np.testing.assert_allclose(table.average_ranks, [1.0, 2.0])

    def test_rows_sum(self):
        rng = np.random.default_rng(1)
        values = np.round(rng.random((10, 5)), 1)
        table = average_ranks(matrix(values))
        np.testing.assert_allclose(table.ranks.sum(axis=1), np.full(10, 15.0))

    def test_matrix_too_small(self):
        with self.assertRaises(ValueError):
            matrix([[0.1, 0.2]])


class TestFriedman:
    """Friedman and Iman-Davenport statistics."""

    def test_strict_dominance(self):
        statistic, p = friedman_test(DOMINANCE)
        assert statistic == pytest.approx(8.0)
        assert p == pytest.approx(np.exp(-4.0))

    def test_identical_columns(self):
        assert friedman_test(matrix(np.full((4, 3), 0.3))) == (0.0, 1.0)

    def test_matches_independent_oracle(self):
        rng = np.random.default_rng(2024)
        for _ in range(50):
            values = rng.random((5, 4))
            statistic, p = friedman_test(matrix(values))
            expected = scipy_stats.friedmanchisquare(*values.T)
            assert statistic == pytest.approx(expected.statistic, abs=1e-9)
            assert p == pytest.approx(expected.pvalue, abs=1e-9)

    def test_tie_correction_matches_oracle(self):
        values = np.array([[0.1, 0.1, 0.3, 0.2], [0.2, 0.3, 0.3, 0.1], [0.0, 0.5, 0.2, 0.2], [0.4, 0.1, 0.1, 0.3]])
        statistic, _ = friedman_test(matrix(values))
        assert statistic == pytest.approx(scipy_stats.friedmanchisquare(*values.T).statistic, abs=1e-9)

    def test_monotone_transform_invariance(self):
        values = np.random.default_rng(5).random((6, 4))
        assert friedman_test(matrix(values)) == friedman_test(matrix(np.sqrt(values) * 3 + 1))

    def test_iman_davenport_perfect_agreement(self):
        statistic, p = iman_davenport(DOMINANCE)
        assert statistic == float("inf")
        assert p == 0.0

    def test_iman_davenport_formula(self):
        values = np.random.default_rng(8).random((6, 4))
        chi2, _ = friedman_test(matrix(values))
        statistic, _ = iman_davenport(matrix(values))
        assert statistic == pytest.approx(5 * chi2 / (6 * 3 - chi2))


class TestPairwiseZ(unittest.TestCase):
    """z statistics of average-rank differences."""

    def setUp(self):
        ranks = np.tile(np.arange(1.0, 9.0), (17, 1))
        self.table = RankTable(ranks=ranks, algorithms=tuple(f"a{j}" for j in range(8)))

    def test_unit_rank_difference(self):
        self.assertAlmostEqual(pairwise_z(self.table, 1, 0), 1.190238071, places=6)

    def test_antisymmetry(self):
        self.assertEqual(pairwise_z(self.table, 2, 5), -pairwise_z(self.table, 5, 2))

    def test_equal_ranks(self):
        ranks = np.tile([1.5, 1.5, 3.0], (4, 1))
        table = RankTable(ranks=ranks, algorithms=("a", "b", "c"))
        self.assertEqual(pairwise_z(table, 0, 1), 0.0)
        self.assertEqual(two_sided_p(0.0), 1.0)


class TestStepDown:
    """Step-down thresholds and significance."""

    def test_control_vs_all_thresholds(self):
        results = stepdown_thresholds([0.001 * (i + 1) for i in range(7)], alpha=0.05)
        thresholds = [r.threshold for r in results]
        assert thresholds[:4] == pytest.approx([0.0071428571, 0.0083333333, 0.01, 0.0125])
        assert thresholds[-1] == pytest.approx(0.05)

    def test_sorted_by_p(self):
        results = stepdown_thresholds([0.5, 0.01, 0.2], labels=["a", "b", "c"])
        assert [r.label for r in results] == ["b", "c", "a"]

    def test_shaffer_thresholds(self):
        results = stepdown_thresholds(np.linspace(0.0001, 0.9, 28), alpha=0.05, mode=SHAFFER)
        assert results[0].threshold == pytest.approx(0.05 / 28)
        assert results[1].threshold == pytest.approx(0.05 / 21)

    def test_shaffer_sequence(self):
        assert shaffer_sequence(3) == [0, 1, 3]
        assert shaffer_sequence(4) == [0, 1, 2, 3, 6]

    def test_shaffer_needs_pair_family(self):
        with pytest.raises(ValueError):
            stepdown_thresholds([0.1] * 5, mode=SHAFFER)

    def test_all_ones(self):
        assert not any(r.significant for r in stepdown_thresholds([1.0] * 6))

    def test_zero_alpha(self):
        assert not any(r.significant for r in stepdown_thresholds([0.0, 0.001], alpha=0.0))

    @pytest.mark.parametrize("mode", [CONTROL_VS_ALL, HOMMEL])
    def test_rejections_form_prefix(self, mode):
        rng = np.random.default_rng(17)
        for _ in range(100):
            p = rng.random(7) ** 3
            flags = [r.significant for r in stepdown_thresholds(p, mode=mode)]
            assert flags == sorted(flags, reverse=True)

    def test_thresholds_non_decreasing(self):
        for mode, size in ((CONTROL_VS_ALL, 7), (SHAFFER, 28)):
            thresholds = [r.threshold for r in stepdown_thresholds(np.linspace(0, 1, size), mode=mode)]
            assert thresholds == sorted(thresholds)

    def test_stops_at_first_failure(self):
        results = stepdown_thresholds([0.001, 0.04, 0.002], alpha=0.05)
        assert [r.significant for r in results] == [True, True, True]
        results = stepdown_thresholds([0.001, 0.03, 0.04], alpha=0.05)
        assert [r.significant for r in results] == [True, False, False]

    def test_hommel_rejects_all_below_alpha(self):
        p = [0.01, 0.02, 0.03, 0.04, 0.045]
        np.testing.assert_allclose(hommel_adjust(np.array(p)), np.full(5, 0.045))
        assert all(r.significant for r in stepdown_thresholds(p, mode=HOMMEL))
        assert not any(r.significant for r in stepdown_thresholds(p, mode=CONTROL_VS_ALL))

    def test_hommel_no_larger_than_holm(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            p = rng.random(6) ** 2
            holm = [r.adjusted_p for r in stepdown_thresholds(p, mode=CONTROL_VS_ALL)]
            hommel = [r.adjusted_p for r in stepdown_thresholds(p, mode=HOMMEL)]
            assert all(a <= b + 1e-12 for a, b in zip(hommel, holm))

    def test_invalid_p_value(self):
        with pytest.raises(ValueError):
            stepdown_thresholds([0.1, 1.2])


class TestComparisons:
    """Control and pairwise families built from rank tables."""

    @pytest.fixture
    def table(self):
        rng = np.random.default_rng(11)
        values = rng.random((17, 8)) * 0.5 + np.arange(8)
        return average_ranks(matrix(values, tuple("ABCDEFGH")))

    def test_control_defaults_to_best(self, table):
        results = compare_to_control(table)
        assert len(results) == 7
        assert "A" not in [r.label for r in results]

    def test_control_z_sign(self, table):
        results = compare_to_control(table, control="H")
        assert all(r.z <= 0 for r in results)

    def test_unknown_control(self, table):
        with pytest.raises(ValueError):
            compare_to_control(table, control="Z")

    def test_control_rejects_shaffer(self, table):
        with pytest.raises(ValueError):
            compare_to_control(table, mode=SHAFFER)

    def test_pairwise_family(self, table):
        results = pairwise_comparisons(table)
        assert len(results) == 28
        assert results[0].threshold == pytest.approx(0.05 / 28)
        assert all(" vs " in r.label for r in results)

    def test_frames(self, table):
        frame = comparisons_frame(pairwise_comparisons(table))
        assert list(frame.columns) == ["hypothesis", "z", "p_value", "threshold", "adjusted_p", "significant"]
        ranks = ranks_frame(table, [f"ds{i}" for i in range(17)])
        assert ranks.index[-1] == "average"
        assert ranks.loc["average", "A"] == pytest.approx(table.average_rank("A"))


class TestMatrixFiles(unittest.TestCase):
    """Reading result matrices."""

    def setUp(self):
        self.test_dir = Path(tempfile.mkdtemp())

    def tearDown(self):
        shutil.rmtree(self.test_dir, ignore_errors=True)

    def write(self, content: str) -> Path:
        path = self.test_dir / "matrix.csv"
        path.write_text(content, encoding="utf-8")
        return path

    def test_wide_layout(self):
        m = read_result_matrix(self.write("dataset,cAM,eAM\niris,0.1067,0.08\nwine,0.12,0.09\n"))
        self.assertEqual(m.datasets, ("iris", "wine"))
        self.assertEqual(m.algorithms, ("cAM", "eAM"))
        np.testing.assert_allclose(m.values, [[0.1067, 0.08], [0.12, 0.09]])

    def test_summary_layout(self):
        path = self.write(
            "dataset,algorithm,protocol,mean_error\n"
            "iris,antminer,cv,0.1\n"
            "iris,bagged,holdout,0.05\n"
            "wine,antminer,cv,0.2\n"
            "wine,bagged,holdout,0.15\n"
        )
        m = read_result_matrix(path)
        self.assertEqual(m.algorithms, ("antminer", "bagged"))
        np.testing.assert_allclose(m.values, [[0.1, 0.05], [0.2, 0.15]])

    def test_short_row(self):
        with self.assertRaises(MatrixParseError):
            read_result_matrix(self.write("dataset,a,b\niris,0.1\nwine,0.2,0.3\n"))

    def test_long_row(self):
        with self.assertRaises(MatrixParseError):
            read_result_matrix(self.write("dataset,a,b\niris,0.1,0.2\nwine,0.2,0.3,0.4\n"))

    def test_non_numeric_cell(self):
        with self.assertRaises(MatrixParseError):
            read_result_matrix(self.write("dataset,a,b\niris,0.1,high\nwine,0.2,0.3\n"))

    def test_too_small(self):
        with self.assertRaises(MatrixParseError):
            read_result_matrix(self.write("dataset,a,b\niris,0.1,0.2\n"))

    def test_incomplete_summary(self):
        path = self.write("dataset,algorithm,mean_error\niris,a,0.1\niris,b,0.2\nwine,a,0.3\n")
        with self.assertRaises(MatrixParseError):
            read_result_matrix(path)

    def test_empty_file(self):
        with self.assertRaises(MatrixParseError):
            read_result_matrix(self.write(""))

    def test_missing_file(self):
        with self.assertRaises(FileNotFoundError):
            read_result_matrix(self.test_dir / "absent.csv")
