"""
Tabular renderings of evaluation results.

Per-run and summary tables are pandas DataFrames whose CSV form carries the
master seed and the effective configuration on every row; stability curves
are two-column plot data with a commented header.
"""

import logging
from typing import Iterable, List, Optional

import pandas as pd

from ..models import ErrorReport, ModelSizeReport, StabilityCurve

logger = logging.getLogger(__name__)

RUN_COLUMNS = ["dataset", "algorithm", "iteration", "run", "error", "terms", "master_seed", "config"]
SUMMARY_COLUMNS = [
    "dataset", "algorithm", "protocol", "runs", "mean_error", "error_pct",
    "mean_terms", "terms_std_error", "mean_total_terms", "size", "master_seed", "config",
]


def format_percent(fraction: float) -> str:
    """Error as a percentage with two decimals (0.1067 -> '10.67')."""
    return f"{100.0 * fraction:.2f}"


def format_size(sizes: ModelSizeReport) -> str:
    """Model size as 'mean [standard error]'."""
    return f"{sizes.mean_terms:.2f} [{sizes.std_error:.2f}]"


def runs_frame(report: ErrorReport, sizes: ModelSizeReport, master_seed: int, config: str) -> pd.DataFrame:
    """One row per (iteration, fold or run)."""
    records = []
    for iteration, (errors, terms) in enumerate(zip(report.per_run_errors, sizes.per_run_terms)):
        for run, (error, term_count) in enumerate(zip(errors, terms)):
            records.append({
                "dataset": report.dataset,
                "algorithm": report.algorithm,
                "iteration": iteration,
                "run": run,
                "error": repr(float(error)),
                "terms": repr(float(term_count)),
                "master_seed": master_seed,
                "config": config,
            })
    return pd.DataFrame.from_records(records, columns=RUN_COLUMNS)


def summary_record(report: ErrorReport, sizes: ModelSizeReport, master_seed: int, config: str) -> dict:
    runs = sum(len(row) for row in report.per_run_errors)
    return {
        "dataset": report.dataset,
        "algorithm": report.algorithm,
        "protocol": report.protocol,
        "runs": runs,
        "mean_error": repr(report.mean_error),
        "error_pct": format_percent(report.mean_error),
        "mean_terms": repr(sizes.mean_terms),
        "terms_std_error": repr(sizes.std_error),
        "mean_total_terms": repr(sizes.mean_total_terms),
        "size": format_size(sizes),
        "master_seed": master_seed,
        "config": config,
    }


def summary_frame(records: Iterable[dict]) -> pd.DataFrame:
    """Summary rows in the order given (datasets, then algorithms)."""
    return pd.DataFrame.from_records(list(records), columns=SUMMARY_COLUMNS)


def stability_text(curve: StabilityCurve, master_seed: int, config: Optional[str] = None) -> str:
    """
    Two-column plot data: fold index (1-based) and test error.

    Header lines start with '#', which gnuplot and numpy.loadtxt skip.
    """
    lines: List[str] = [
        f"# dataset={curve.dataset} algorithm={curve.algorithm} master_seed={master_seed}",
        f"# variance={curve.variance!r}",
    ]
    if config:
        lines.append(f"# config={config}")
    lines.append("# fold error")
    lines.extend(f"{fold} {error!r}" for fold, error in enumerate(curve.per_fold_errors, start=1))
    return "\n".join(lines) + "\n"
