"""
Tests for the evaluation protocols and their tabular reports.
"""

import unittest
from pathlib import Path

import pytest
from joblib import parallel_backend

from src.antbench.antminer import AntMinerLearner, MajorityClassLearner
from src.antbench.config import AntMinerParams
from src.antbench.dataset import load_dataset
from src.antbench.ensemble import BaggedLearner
from src.antbench.evaluation import (
    cross_validate,
    curve_from_report,
    evaluate_ensemble,
    format_percent,
    format_size,
    holdout_evaluate,
    runs_frame,
    stability_curve,
    stability_text,
    summary_frame,
    summary_record,
    test_error as error_rate,
)
from src.antbench.models import (
    NOMINAL,
    AttributeSpec,
    DatasetTable,
    ErrorReport,
    InstanceRow,
    ModelSizeReport,
    RuleListModel,
    StabilityCurve,
)

IRIS = Path(__file__).parent / "fixtures" / "iris.csv"
FAST = AntMinerParams(num_ants=20, convergence_rules=5)


def binary_table(labels) -> DatasetTable:
    x = AttributeSpec("x", NOMINAL, ("p", "q"))
    label = AttributeSpec("class", NOMINAL, ("yes", "no"))
    rows = tuple(InstanceRow(values=("p",), class_label=c) for c in labels)
    return DatasetTable(name="binary", schema=(x,), class_attribute=label, rows=rows)


def constant_model(table: DatasetTable, label: str) -> RuleListModel:
    return RuleListModel(rules=(), default_class=label, schema=table.schema, class_attribute=table.class_attribute)


class TestErrorRate(unittest.TestCase):
    """Fraction of misclassified rows."""

    def test_balanced_binary(self):
        table = binary_table(["yes", "no"] * 5)
        self.assertEqual(error_rate(constant_model(table, "yes"), table), 0.5)

    def test_perfect(self):
        table = binary_table(["yes"] * 4)
        self.assertEqual(error_rate(constant_model(table, "yes"), table), 0.0)

    def test_empty_table(self):
        table = binary_table([])
        with self.assertRaises(ValueError):
            error_rate(constant_model(table, "yes"), table)


class TestCrossValidate:
    """Repeated stratified k-fold CV."""

    @pytest.fixture(scope="class")
    def iris(self):
        return load_dataset(IRIS)

    def test_majority_baseline(self, iris):
        report, sizes = cross_validate(iris, MajorityClassLearner(), k=10, iterations=2, seed=1)
        assert len(report.per_run_errors) == 2
        assert all(len(row) == 10 for row in report.per_run_errors)
        assert report.mean_error == pytest.approx(2 / 3)
        assert sizes.mean_terms == 0.0
        assert report.protocol == "cv"
        assert report.algorithm == "majority"

    def test_single_fold_rejected(self, iris):
        with pytest.raises(ValueError):
            cross_validate(iris, MajorityClassLearner(), k=1)

    def test_deterministic(self, iris):
        first = cross_validate(iris, AntMinerLearner(FAST), k=3, iterations=1, seed=4)
        second = cross_validate(iris, AntMinerLearner(FAST), k=3, iterations=1, seed=4)
        assert first == second

    def test_independent_of_workers(self, iris):
        sequential = cross_validate(iris, AntMinerLearner(FAST), k=3, iterations=1, seed=8)
        with parallel_backend("threading"):
            pooled = cross_validate(iris, AntMinerLearner(FAST), k=3, iterations=1, seed=8, n_jobs=2)
        assert sequential == pooled

    def test_errors_are_fractions(self, iris):
        report, sizes = cross_validate(iris, AntMinerLearner(FAST), k=5, iterations=1, seed=2)
        assert all(0.0 <= e <= 1.0 for row in report.per_run_errors for e in row)
        assert sizes.mean_terms >= 0.0


class TestHoldout:
    """Repeated hold-out protocols."""

    @pytest.fixture(scope="class")
    def iris(self):
        return load_dataset(IRIS)

    def test_ensemble_matches_bagged_learner(self, iris):
        base = AntMinerLearner(FAST)
        direct = evaluate_ensemble(iris, base, T=2, iterations=2, seed=3)
        adapted = holdout_evaluate(iris, BaggedLearner(base, replicas=2), iterations=2, seed=3)
        assert direct == adapted

    def test_ensemble_report_shape(self, iris):
        report, sizes = evaluate_ensemble(iris, MajorityClassLearner(), T=3, iterations=4, seed=1)
        assert report.algorithm == "bagged"
        assert report.protocol == "holdout"
        assert len(report.per_run_errors) == 4
        assert all(len(row) == 1 for row in report.per_run_errors)
        assert sizes.mean_total_terms == 0.0

    def test_ensemble_sizes_are_per_member(self, iris):
        _, sizes = evaluate_ensemble(iris, AntMinerLearner(FAST), T=2, iterations=1, seed=6)
        assert sizes.per_run_total_terms[0][0] == pytest.approx(2 * sizes.per_run_terms[0][0])

    def test_holdout_majority_learner(self, iris):
        report, _ = holdout_evaluate(iris, MajorityClassLearner(), iterations=3, seed=1)
        assert report.mean_error == pytest.approx(2 / 3)


class TestStability:
    """Per-fold error curves."""

    def test_curve_length(self):
        iris = load_dataset(IRIS)
        curve = stability_curve(iris, MajorityClassLearner(), seed=1, k=10)
        assert len(curve.per_fold_errors) == 10
        assert curve.variance == pytest.approx(0.0)

    def test_curve_from_first_iteration(self):
        report = ErrorReport("d", "a", ((0.1, 0.2), (0.3, 0.4)))
        assert curve_from_report(report).per_fold_errors == (0.1, 0.2)


class TestReports(unittest.TestCase):
    """Per-run, summary and stability renderings."""

    def setUp(self):
        self.report = ErrorReport("iris", "antminer", ((0.1, 0.2), (0.0, 0.1)), protocol="cv")
        self.sizes = ModelSizeReport(per_run_terms=((3.0, 4.0), (5.0, 4.0)))

    def test_format_percent(self):
        self.assertEqual(format_percent(0.1067), "10.67")

    def test_format_size(self):
        # mean 4, sample std sqrt(2/3), four runs
        self.assertEqual(format_size(self.sizes), "4.00 [0.41]")

    def test_runs_frame(self):
        frame = runs_frame(self.report, self.sizes, master_seed=1, config="k=2")
        self.assertEqual(len(frame), 4)
        self.assertEqual(list(frame["iteration"]), [0, 0, 1, 1])
        self.assertEqual(list(frame["run"]), [0, 1, 0, 1])
        self.assertEqual(set(frame["master_seed"]), {1})

    def test_summary(self):
        frame = summary_frame([summary_record(self.report, self.sizes, 1, "k=2")])
        row = frame.iloc[0]
        self.assertEqual(row["runs"], 4)
        self.assertEqual(row["error_pct"], "10.00")
        self.assertEqual(row["size"], "4.00 [0.41]")
        self.assertEqual(row["mean_total_terms"], repr(4.0))

    def test_stability_text(self):
        curve = StabilityCurve("iris", "antminer", (0.1, 0.0, 0.2))
        lines = stability_text(curve, master_seed=7).splitlines()
        self.assertTrue(all(line.startswith("#") for line in lines[:3]))
        self.assertEqual(lines[-3:], ["1 0.1", "2 0.0", "3 0.2"])
        self.assertIn("master_seed=7", lines[0])
