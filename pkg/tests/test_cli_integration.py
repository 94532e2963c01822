"""
CLI integration tests for antbench.

Commands are run through Typer's CliRunner against the iris fixture with a
tiny colony so each invocation finishes in seconds.
"""

import os
import re
import shutil
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import pandas as pd
import yaml
from typer.testing import CliRunner

from src.antbench.antminer import AntMinerLearner
from src.antbench.cli.commands import app
from src.antbench.config import DATA_DIR_ENV, AntMinerParams
from src.antbench.dataset import load_dataset
from src.antbench.evaluation import evaluate_ensemble

FIXTURES = Path(__file__).parent / "fixtures"
IRIS = FIXTURES / "iris.csv"
QUICK = ["--ants", "10", "--iterations", "1", "--folds", "3", "--seed", "1"]


def strip_ansi(text: str) -> str:
    """Remove ANSI escape codes from text."""
    ansi_escape = re.compile(r'\x1B(?:[@-Z\\-_]|\[[0-?]*[ -/]*[@-~])')
    return ansi_escape.sub('', text)


class CLITestCase(unittest.TestCase):
    """Isolated home, config path and data directory."""

    def setUp(self):
        self.test_dir = Path(tempfile.mkdtemp())
        self.config_patcher = patch(
            "src.antbench.config.get_default_config_path",
            return_value=self.test_dir / ".antbench" / "config.yaml",
        )
        self.config_patcher.start()
        self.cli_config_patcher = patch(
            "src.antbench.cli.commands.get_default_config_path",
            return_value=self.test_dir / ".antbench" / "config.yaml",
        )
        self.cli_config_patcher.start()
        self.env_patcher = patch.dict(os.environ)
        self.env_patcher.start()
        os.environ.pop(DATA_DIR_ENV, None)
        self.runner = CliRunner()

    def tearDown(self):
        self.env_patcher.stop()
        self.cli_config_patcher.stop()
        self.config_patcher.stop()
        shutil.rmtree(self.test_dir, ignore_errors=True)

    def invoke(self, *args):
        return self.runner.invoke(app, [str(a) for a in args])


class TestBenchRun(CLITestCase):
    """bench run."""

    def test_single_model_cv(self):
        out = self.test_dir / "results"
        result = self.invoke("bench", "run", IRIS, *QUICK, "--out", out)
        self.assertEqual(result.exit_code, 0, strip_ansi(result.stdout))
        summary = pd.read_csv(out / "summary.csv", dtype=str)
        self.assertEqual(list(summary["algorithm"]), ["antminer"])
        self.assertEqual(list(summary["protocol"]), ["cv"])
        self.assertEqual(list(summary["runs"]), ["3"])
        self.assertTrue((out / "runs" / "iris__antminer.csv").exists())
        self.assertTrue((out / "bench.log").exists())
        self.assertFalse((out / "failures.yaml").exists())

    def test_paper_profile(self):
        out = self.test_dir / "results"
        result = self.invoke("bench", "run", IRIS, "--profile", "paper", "--ants", "5", "--iterations", "1",
                             "--folds", "2", "--out", out)
        self.assertEqual(result.exit_code, 0, strip_ansi(result.stdout))
        config = pd.read_csv(out / "summary.csv", dtype=str).loc[0, "config"]
        self.assertIn("profile=paper", config)
        self.assertIn("antminer.num_ants=5", config)
        self.assertNotIn("ensemble.seed", config)

    def test_summary_is_reproducible(self):
        first, second = self.test_dir / "a", self.test_dir / "b"
        self.assertEqual(self.invoke("bench", "run", IRIS, *QUICK, "--out", first).exit_code, 0)
        self.assertEqual(self.invoke("bench", "run", IRIS, *QUICK, "--out", second).exit_code, 0)
        self.assertEqual((first / "summary.csv").read_bytes(), (second / "summary.csv").read_bytes())
        self.assertIn(b"\r\n", (first / "summary.csv").read_bytes())

    def test_bagged_matches_library(self):
        out = self.test_dir / "results"
        result = self.invoke("bench", "run", IRIS, *QUICK, "--algo", "bagged", "--replicas", "2", "--out", out)
        self.assertEqual(result.exit_code, 0, strip_ansi(result.stdout))
        row = pd.read_csv(out / "summary.csv", dtype=str).iloc[0]
        self.assertEqual(row["algorithm"], "bagged")
        self.assertEqual(row["protocol"], "holdout")

        report, sizes = evaluate_ensemble(
            load_dataset(IRIS), AntMinerLearner(AntMinerParams(num_ants=10)), T=2, iterations=1, seed=1,
        )
        self.assertEqual(row["mean_error"], repr(report.mean_error))
        self.assertEqual(row["mean_terms"], repr(sizes.mean_terms))

    def test_both_algorithms(self):
        out = self.test_dir / "results"
        result = self.invoke("bench", "run", IRIS, *QUICK, "--algo", "both", "--replicas", "2", "--out", out)
        self.assertEqual(result.exit_code, 0, strip_ansi(result.stdout))
        summary = pd.read_csv(out / "summary.csv", dtype=str)
        self.assertEqual(list(summary["algorithm"]), ["antminer", "bagged"])
        self.assertIn("Results", strip_ansi(result.stdout))

    def test_missing_dataset(self):
        missing = self.test_dir / "missing.csv"
        result = self.invoke("bench", "run", missing, *QUICK, "--out", self.test_dir / "results")
        self.assertEqual(result.exit_code, 2)
        self.assertIn("missing.csv", strip_ansi(result.stdout))

    def test_no_datasets(self):
        result = self.invoke("bench", "run", *QUICK)
        self.assertEqual(result.exit_code, 2)

    def test_invalid_parameter(self):
        result = self.invoke("bench", "run", IRIS, "--ants", "0", "--out", self.test_dir / "results")
        self.assertEqual(result.exit_code, 2)
        self.assertIn("num_ants", strip_ansi(result.stdout))

    def test_failure_manifest(self):
        shutil.copy(FIXTURES / "iris.schema.yaml", self.test_dir / "broken.schema.yaml")
        lines = IRIS.read_text().splitlines()
        lines[5] = lines[5].replace("Iris-setosa", "Iris-unknown")
        broken = self.test_dir / "broken.csv"
        broken.write_text("\n".join(lines) + "\n")

        out = self.test_dir / "results"
        result = self.invoke("bench", "run", IRIS, broken, *QUICK, "--out", out)
        self.assertEqual(result.exit_code, 1)
        self.assertTrue((out / "summary.csv").exists())
        manifest = yaml.safe_load((out / "failures.yaml").read_text())
        self.assertEqual(manifest["master_seed"], 1)
        self.assertEqual(len(manifest["failures"]), 1)
        self.assertEqual(manifest["failures"][0]["stage"], "load")
        self.assertIn("line 6", manifest["failures"][0]["error"])

    def test_config_file(self):
        config_file = self.test_dir / "bench.yaml"
        config_file.write_text(yaml.safe_dump({
            "datasets": [str(IRIS)],
            "folds": 3,
            "iterations": 1,
            "antminer": {"num_ants": 10},
            "output_dir": str(self.test_dir / "from-file"),
        }))
        result = self.invoke("bench", "run", "--config", config_file)
        self.assertEqual(result.exit_code, 0, strip_ansi(result.stdout))
        self.assertTrue((self.test_dir / "from-file" / "summary.csv").exists())

    def test_data_directory_lookup(self):
        os.environ[DATA_DIR_ENV] = str(FIXTURES)
        out = self.test_dir / "results"
        result = self.invoke("bench", "run", "iris", *QUICK, "--out", out)
        self.assertEqual(result.exit_code, 0, strip_ansi(result.stdout))


class TestBenchStability(CLITestCase):
    """bench stability."""

    def test_curve_written(self):
        out = self.test_dir / "results"
        result = self.invoke("bench", "stability", IRIS, "--ants", "10", "--folds", "3",
                             "--algo", "antminer", "--out", out)
        self.assertEqual(result.exit_code, 0, strip_ansi(result.stdout))
        curve = (out / "stability" / "iris__antminer.dat").read_text().splitlines()
        data_lines = [line for line in curve if not line.startswith("#")]
        self.assertEqual([line.split()[0] for line in data_lines], ["1", "2", "3"])
        summary = pd.read_csv(out / "summary.csv", dtype=str)
        self.assertEqual(list(summary["protocol"]), ["stability"])


class TestStatsCompare(CLITestCase):
    """stats compare."""

    def write_matrix(self, content: str) -> Path:
        path = self.test_dir / "matrix.csv"
        path.write_text(content)
        return path

    def test_all_modes(self):
        matrix = self.write_matrix(
            "dataset,cAM,eAM,C4.5\n"
            "iris,0.1067,0.05,0.06\n"
            "wine,0.12,0.08,0.07\n"
            "glass,0.35,0.30,0.32\n"
            "breast-w,0.06,0.04,0.05\n"
        )
        out = self.test_dir / "stats"
        result = self.invoke("stats", "compare", matrix, "--out", out)
        self.assertEqual(result.exit_code, 0, strip_ansi(result.stdout))
        for name in ("ranks.csv", "friedman.csv", "control-vs-all.csv", "hommel.csv", "shaffer-pairwise.csv"):
            self.assertTrue((out / name).exists(), name)
        self.assertIn("Friedman", strip_ansi(result.stdout))
        pairwise = pd.read_csv(out / "shaffer-pairwise.csv")
        self.assertEqual(len(pairwise), 3)
        ranks = pd.read_csv(out / "ranks.csv", index_col=0)
        self.assertAlmostEqual(ranks.loc["average", "eAM"], 1.25)

    def test_identical_columns_report_no_effect(self):
        matrix = self.write_matrix("dataset,a,b,c\nx,0.1,0.1,0.1\ny,0.3,0.3,0.3\nz,0.2,0.2,0.2\n")
        out = self.test_dir / "stats"
        result = self.invoke("stats", "compare", matrix, "--out", out)
        self.assertEqual(result.exit_code, 0, strip_ansi(result.stdout))
        friedman = pd.read_csv(out / "friedman.csv").set_index("test")
        self.assertEqual(friedman.loc["friedman", "statistic"], 0.0)
        self.assertEqual(friedman.loc["friedman", "p_value"], 1.0)

    def test_eight_algorithms_seventeen_datasets(self):
        out = self.test_dir / "stats"
        result = self.invoke("stats", "compare", FIXTURES / "error_rates.csv", "--out", out)
        self.assertEqual(result.exit_code, 0, strip_ansi(result.stdout))
        pairwise = pd.read_csv(out / "shaffer-pairwise.csv")
        self.assertEqual(len(pairwise), 28)
        self.assertAlmostEqual(pairwise.loc[0, "threshold"], 0.05 / 28, places=9)
        self.assertAlmostEqual(pairwise.loc[0, "threshold"], 0.0017857, places=7)
        control = pd.read_csv(out / "control-vs-all.csv")
        self.assertEqual(len(control), 7)
        self.assertAlmostEqual(control.loc[0, "threshold"], 0.05 / 7, places=9)

    def test_zero_alpha_rejects_nothing(self):
        out = self.test_dir / "stats"
        result = self.invoke("stats", "compare", FIXTURES / "error_rates.csv", "--alpha", "0", "--out", out)
        self.assertEqual(result.exit_code, 0, strip_ansi(result.stdout))
        for name in ("control-vs-all.csv", "hommel.csv", "shaffer-pairwise.csv"):
            table = pd.read_csv(out / name)
            self.assertFalse(table["significant"].astype(bool).any(), name)

    def test_single_mode(self):
        matrix = self.write_matrix("dataset,a,b\nx,0.1,0.2\ny,0.3,0.4\n")
        out = self.test_dir / "stats"
        result = self.invoke("stats", "compare", matrix, "--mode", "hommel", "--out", out)
        self.assertEqual(result.exit_code, 0, strip_ansi(result.stdout))
        self.assertTrue((out / "hommel.csv").exists())
        self.assertFalse((out / "shaffer-pairwise.csv").exists())

    def test_summary_input(self):
        out = self.test_dir / "results"
        self.invoke("bench", "run", IRIS, *QUICK, "--out", out)
        summary = pd.read_csv(out / "summary.csv", dtype=str)
        self.assertEqual(len(summary), 1)
        # a one-dataset summary cannot be ranked
        result = self.invoke("stats", "compare", out / "summary.csv", "--out", self.test_dir / "stats")
        self.assertEqual(result.exit_code, 2)

    def test_ragged_matrix(self):
        matrix = self.write_matrix("dataset,a,b\nx,0.1\ny,0.3,0.4\n")
        result = self.invoke("stats", "compare", matrix, "--out", self.test_dir / "stats")
        self.assertEqual(result.exit_code, 2)

    def test_missing_matrix(self):
        result = self.invoke("stats", "compare", self.test_dir / "absent.csv")
        self.assertEqual(result.exit_code, 2)

    def test_invalid_mode(self):
        matrix = self.write_matrix("dataset,a,b\nx,0.1,0.2\ny,0.3,0.4\n")
        result = self.invoke("stats", "compare", matrix, "--mode", "nemenyi")
        self.assertEqual(result.exit_code, 2)

    def test_unknown_control(self):
        matrix = self.write_matrix("dataset,a,b\nx,0.1,0.2\ny,0.3,0.4\n")
        result = self.invoke("stats", "compare", matrix, "--control", "zzz", "--out", self.test_dir / "stats")
        self.assertEqual(result.exit_code, 2)


class TestDatasetInfo(CLITestCase):
    """dataset info."""

    def test_iris(self):
        result = self.invoke("dataset", "info", IRIS)
        self.assertEqual(result.exit_code, 0)
        self.assertIn("iris: 4 continuous, 0 nominal, 3 classes, 150 examples", strip_ansi(result.stdout))

    def test_wine(self):
        result = self.invoke("dataset", "info", FIXTURES / "wine.csv")
        self.assertEqual(result.exit_code, 0)
        self.assertIn("wine: 13 continuous, 0 nominal, 3 classes, 178 examples", strip_ansi(result.stdout))

    def test_nominal_arff(self):
        result = self.invoke("dataset", "info", FIXTURES / "weather.nominal.arff")
        self.assertEqual(result.exit_code, 0)
        self.assertIn("weather.symbolic: 0 continuous, 4 nominal, 2 classes, 14 examples",
                      strip_ansi(result.stdout))

    def test_missing_file(self):
        result = self.invoke("dataset", "info", self.test_dir / "nothing.csv")
        self.assertEqual(result.exit_code, 2)

    def test_missing_schema(self):
        orphan = self.test_dir / "orphan.csv"
        orphan.write_text("a,b\n1,x\n")
        result = self.invoke("dataset", "info", orphan)
        self.assertEqual(result.exit_code, 2)

    def test_unparsable_file(self):
        shutil.copy(FIXTURES / "iris.schema.yaml", self.test_dir / "bad.schema.yaml")
        (self.test_dir / "bad.csv").write_text(
            "sepal_length,sepal_width,petal_length,petal_width,class\n1,2,three,4,Iris-setosa\n"
        )
        result = self.invoke("dataset", "info", self.test_dir / "bad.csv")
        self.assertEqual(result.exit_code, 1)


class TestUtilityCommands(CLITestCase):
    """config and version."""

    def test_version(self):
        result = self.invoke("version")
        self.assertEqual(result.exit_code, 0)
        self.assertIn("1.0.0", strip_ansi(result.stdout))

    def test_config_creates_template(self):
        result = self.invoke("config")
        self.assertEqual(result.exit_code, 0, strip_ansi(result.stdout))
        self.assertTrue((self.test_dir / ".antbench" / "config.yaml").exists())
        self.assertIn("3000", strip_ansi(result.stdout))

    def test_config_show(self):
        result = self.invoke("config", "--show")
        self.assertEqual(result.exit_code, 0)
        self.assertIn("profile", strip_ansi(result.stdout))
