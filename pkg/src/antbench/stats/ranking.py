"""
Rank-based comparison of several algorithms over several datasets.

- average_ranks: per-dataset fractional ranks (1 = lowest error) and their means
- friedman_test: chi-square Friedman statistic with tie correction
- iman_davenport: the F-distributed refinement of the Friedman statistic
- pairwise_z: z statistic of an average-rank difference
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy import stats

from ..models import RankTable, ResultMatrix

logger = logging.getLogger(__name__)


def average_ranks(matrix: ResultMatrix) -> RankTable:
    """Rank each row ascending, tied cells sharing their mean rank."""
    ranks = stats.rankdata(matrix.values, method="average", axis=1)
    return RankTable(ranks=np.asarray(ranks, dtype=float), algorithms=matrix.algorithms)


def _tie_correction(ranks: np.ndarray) -> float:
    """1 - sum(t^3 - t) / (n (m^3 - m)) over every group of tied ranks."""
    n, m = ranks.shape
    ties = 0.0
    for row in ranks:
        _, counts = np.unique(row, return_counts=True)
        ties += float(np.sum(counts ** 3 - counts))
    return 1.0 - ties / (n * (m ** 3 - m))


def friedman_test(matrix: ResultMatrix) -> Tuple[float, float]:
    """
    Friedman chi-square statistic and its p-value (m - 1 degrees of freedom).

    chi2 = 12n / (m(m+1)) * (sum R_j^2 - m(m+1)^2 / 4), divided by the tie
    correction. A matrix without any rank difference yields (0.0, 1.0).
    """
    table = average_ranks(matrix)
    n, m = table.n_datasets, table.n_algorithms
    r = table.average_ranks
    chi2 = 12.0 * n / (m * (m + 1)) * (float(np.sum(r ** 2)) - m * (m + 1) ** 2 / 4.0)
    correction = _tie_correction(table.ranks)
    if correction <= 0 or chi2 <= 1e-12:
        return 0.0, 1.0
    statistic = chi2 / correction
    return statistic, float(stats.chi2.sf(statistic, m - 1))


def iman_davenport(matrix: ResultMatrix) -> Tuple[float, float]:
    """
    Iman-Davenport F statistic, (n-1) chi2 / (n(m-1) - chi2), with (m-1) and
    (m-1)(n-1) degrees of freedom. Perfect agreement across every dataset
    gives an infinite statistic and p = 0.
    """
    n, m = matrix.shape
    chi2, _ = friedman_test(matrix)
    denominator = n * (m - 1) - chi2
    if denominator <= 0:
        return math.inf, 0.0
    statistic = (n - 1) * chi2 / denominator
    return statistic, float(stats.f.sf(statistic, m - 1, (m - 1) * (n - 1)))


def rank_standard_error(m: int, n: int) -> float:
    """sqrt(m(m+1) / (6n)), the standard error of an average-rank difference."""
    return math.sqrt(m * (m + 1) / (6.0 * n))


def pairwise_z(rank_table: RankTable, i: int, j: int, n: Optional[int] = None) -> float:
    """
    z = (R_i - R_j) / sqrt(m(m+1) / (6n)).

    Args:
        rank_table: Ranks of m algorithms
        i, j: Algorithm columns
        n: Dataset count; defaults to the rows of the table
    """
    n = rank_table.n_datasets if n is None else n
    r = rank_table.average_ranks
    return float((r[i] - r[j]) / rank_standard_error(rank_table.n_algorithms, n))


def two_sided_p(z: float) -> float:
    """Two-sided standard-normal tail probability of z."""
    return float(min(1.0, 2.0 * stats.norm.sf(abs(z))))
