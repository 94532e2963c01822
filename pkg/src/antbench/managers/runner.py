"""
Batch experiment orchestration.

BenchRunner runs the configured protocol for every dataset and algorithm,
writes per-run tables as soon as each experiment finishes, and assembles the
summary in a fixed (dataset, algorithm) order once all are done.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from rich.console import Console
from rich.table import Table

from ..antminer.colony import AntMinerLearner
from ..config import ExperimentConfig
from ..dataset.loader import load_dataset
from ..ensemble.bagging import BaggedLearner
from ..evaluation.protocol import cross_validate, curve_from_report, evaluate_ensemble, holdout_evaluate
from ..evaluation.reports import (
    runs_frame,
    stability_text,
    summary_frame,
    summary_record,
)
from ..models import DatasetTable, ErrorReport, ModelSizeReport
from .reports import ReportManager

logger = logging.getLogger(__name__)
console = Console()

DEFAULT_PROTOCOL = {"antminer": "cv", "bagged": "holdout"}


@dataclass
class BenchOutcome:
    """What a batch produced: summary rows in order and failed experiments."""
    records: List[Dict[str, Any]] = field(default_factory=list)
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


class BenchRunner:
    """
    Runs a batch of experiments described by an ExperimentConfig.

    Args:
        config: Effective configuration (flags, file and profile applied)
        dataset_paths: Resolved dataset files, in config order
        reports: Writer for the output directory
    """

    def __init__(self, config: ExperimentConfig, dataset_paths: List[Path],
                 reports: Optional[ReportManager] = None):
        self.config = config
        self.dataset_paths = dataset_paths
        self.reports = reports or ReportManager(Path(config.output_dir))
        self.description = config.describe()

    @property
    def algorithms(self) -> Tuple[str, ...]:
        if self.config.algorithm == "both":
            return ("antminer", "bagged")
        return (self.config.algorithm,)

    def protocol_for(self, algorithm: str) -> str:
        if self.config.protocol == "auto":
            return DEFAULT_PROTOCOL[algorithm]
        return self.config.protocol

    def _learner(self, algorithm: str):
        base = AntMinerLearner(self.config.antminer)
        if algorithm == "bagged":
            return BaggedLearner(base, self.config.ensemble.replicas)
        return base

    def evaluate(self, data: DatasetTable, algorithm: str) -> Tuple[ErrorReport, ModelSizeReport]:
        """Run one (dataset, algorithm) experiment under its protocol."""
        cfg = self.config
        protocol = self.protocol_for(algorithm)
        logger.info(f"{data.name}/{algorithm}: protocol={protocol} seed={cfg.seed}")
        if protocol == "cv":
            return cross_validate(data, self._learner(algorithm), cfg.folds, cfg.iterations, cfg.seed, cfg.workers)
        if protocol == "stability":
            report, sizes = cross_validate(data, self._learner(algorithm), cfg.folds, 1, cfg.seed, cfg.workers)
            return ErrorReport(report.dataset, report.algorithm, report.per_run_errors, "stability"), sizes
        if algorithm == "bagged":
            return evaluate_ensemble(
                data, AntMinerLearner(cfg.antminer), cfg.ensemble.replicas, cfg.iterations,
                cfg.seed, cfg.train_fraction, cfg.workers,
            )
        return holdout_evaluate(data, self._learner(algorithm), cfg.iterations, cfg.seed,
                                cfg.train_fraction, cfg.workers)

    def _write_experiment(self, report: ErrorReport, sizes: ModelSizeReport) -> Dict[str, Any]:
        seed = self.config.seed
        self.reports.write_runs(runs_frame(report, sizes, seed, self.description),
                                report.dataset, report.algorithm)
        if report.protocol == "stability":
            curve = curve_from_report(report)
            self.reports.write_stability(stability_text(curve, seed, self.description),
                                         report.dataset, report.algorithm)
        return summary_record(report, sizes, seed, self.description)

    def run(self) -> BenchOutcome:
        """
        Run every experiment, keeping going after failures.

        Returns:
            BenchOutcome; a failure manifest is written when any experiment failed
        """
        self.reports.ensure_directory()
        outcome = BenchOutcome()
        logger.info(f"Bench run: master_seed={self.config.seed} config={self.description}")

        for path in self.dataset_paths:
            try:
                data = load_dataset(path)
            except Exception as e:
                console.print(f"❌ Failed to load {path}: {e}", style="red")
                logger.error(f"Dataset {path} failed to load: {e}")
                outcome.failures.append({"dataset": str(path), "algorithm": None, "stage": "load",
                                         "error": f"{type(e).__name__}: {e}"})
                continue
            for algorithm in self.algorithms:
                console.print(f"🐜 {data.name} / {algorithm} ({self.protocol_for(algorithm)})", style="cyan")
                try:
                    report, sizes = self.evaluate(data, algorithm)
                    outcome.records.append(self._write_experiment(report, sizes))
                except Exception as e:
                    console.print(f"❌ {data.name} / {algorithm} failed: {e}", style="red")
                    logger.exception(f"Experiment {data.name}/{algorithm} failed")
                    outcome.failures.append({"dataset": data.name, "algorithm": algorithm, "stage": "evaluate",
                                             "error": f"{type(e).__name__}: {e}"})

        if outcome.records:
            self.reports.write_summary(summary_frame(outcome.records))
        if outcome.failures:
            self.reports.write_failures(outcome.failures, {"master_seed": self.config.seed,
                                                           "config": self.description})
            console.print(f"⚠️  [yellow]{len(outcome.failures)} experiment(s) failed[/yellow]")
            console.print(f"💡 See {self.reports.output_dir / 'failures.yaml'}", style="dim")
        else:
            self.reports.clear_failures()
        return outcome

    def render(self, outcome: BenchOutcome) -> Table:
        """Summary as a Rich table: error in percent, size as mean [se]."""
        table = Table(title=f"Results (seed {self.config.seed})")
        table.add_column("Dataset", style="cyan")
        table.add_column("Algorithm")
        table.add_column("Protocol", style="dim")
        table.add_column("Error %", justify="right")
        table.add_column("Terms [se]", justify="right")
        for record in outcome.records:
            table.add_row(record["dataset"], record["algorithm"], record["protocol"],
                          record["error_pct"], record["size"])
        return table
