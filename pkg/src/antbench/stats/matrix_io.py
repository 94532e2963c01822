"""
Reading result matrices and rendering comparison tables.

Two CSV layouts are accepted:

- wide: first column holds dataset names, every other column one algorithm
- summary: the summary CSV written by `bench run`, with `dataset`,
  `algorithm` and `mean_error` columns (one row per pair)
"""

import logging
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..models import ComparisonResult, RankTable, ResultMatrix

logger = logging.getLogger(__name__)

SUMMARY_KEYS = ("dataset", "algorithm", "mean_error")
COMPARISON_COLUMNS = ["hypothesis", "z", "p_value", "threshold", "adjusted_p", "significant"]


class MatrixParseError(ValueError):
    """A result matrix file is ragged, incomplete or non-numeric."""


def _numeric(frame: pd.DataFrame, path: Path) -> np.ndarray:
    values = frame.apply(lambda column: pd.to_numeric(column.str.strip(), errors="coerce"))
    bad = values.isna()
    if bad.any().any():
        row, column = next(zip(*np.nonzero(bad.to_numpy())))
        raise MatrixParseError(
            f"{path}: missing or non-numeric cell at data row {row + 1}, column '{frame.columns[column]}'"
        )
    return values.to_numpy(dtype=float)


def _from_summary(frame: pd.DataFrame, path: Path) -> ResultMatrix:
    datasets = list(dict.fromkeys(frame["dataset"]))
    algorithms = list(dict.fromkeys(frame["algorithm"]))
    if frame.duplicated(subset=["dataset", "algorithm"]).any():
        raise MatrixParseError(f"{path}: duplicate (dataset, algorithm) rows")
    wide = frame.pivot(index="dataset", columns="algorithm", values="mean_error")
    wide = wide.reindex(index=datasets, columns=algorithms).fillna("")
    return ResultMatrix(_numeric(wide, path), tuple(datasets), tuple(algorithms))


def read_result_matrix(path: Union[str, Path]) -> ResultMatrix:
    """
    Load a datasets x algorithms error matrix.

    Raises:
        FileNotFoundError: If the file does not exist
        MatrixParseError: On ragged rows, empty or non-numeric cells, or a
            matrix smaller than 2 x 2
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Result matrix not found: {path}")
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise MatrixParseError(f"{path}: empty file") from None
    except pd.errors.ParserError as e:
        raise MatrixParseError(f"{path}: ragged matrix: {e}") from None
    # short rows come back as NaN even with keep_default_na=False
    if frame.isna().any().any():
        raise MatrixParseError(f"{path}: ragged matrix (a row has too few fields)")

    try:
        if all(key in frame.columns for key in SUMMARY_KEYS):
            matrix = _from_summary(frame, path)
        else:
            labels = tuple(str(v).strip() for v in frame.iloc[:, 0])
            body = frame.iloc[:, 1:]
            matrix = ResultMatrix(_numeric(body, path), labels, tuple(str(c).strip() for c in body.columns))
    except MatrixParseError:
        raise
    except ValueError as e:
        raise MatrixParseError(f"{path}: {e}") from None
    logger.info(f"Loaded result matrix {matrix.shape[0]}x{matrix.shape[1]} from {path}")
    return matrix


def ranks_frame(rank_table: RankTable, datasets: Sequence[str]) -> pd.DataFrame:
    """Per-dataset ranks with a final 'average' row."""
    frame = pd.DataFrame(rank_table.ranks, index=list(datasets), columns=list(rank_table.algorithms))
    frame.loc["average"] = rank_table.average_ranks
    frame.index.name = "dataset"
    return frame


def comparisons_frame(results: Iterable[ComparisonResult]) -> pd.DataFrame:
    return pd.DataFrame.from_records(
        [
            {
                "hypothesis": r.label,
                "z": r.z,
                "p_value": r.p_value,
                "threshold": r.threshold,
                "adjusted_p": r.adjusted_p,
                "significant": r.significant,
            }
            for r in results
        ],
        columns=COMPARISON_COLUMNS,
    )


def friedman_frame(statistic: float, p_value: float, iman_statistic: float, iman_p: float,
                   n: int, m: int, control: Optional[str] = None) -> pd.DataFrame:
    return pd.DataFrame.from_records([
        {"test": "friedman", "statistic": statistic, "p_value": p_value, "datasets": n, "algorithms": m},
        {"test": "iman-davenport", "statistic": iman_statistic, "p_value": iman_p, "datasets": n, "algorithms": m},
    ]).assign(control=control or "")
