"""
Post hoc procedures following a Friedman test.

Three modes share the step-down presentation (p-values sorted ascending,
each compared with a threshold, rejections stopping at the first failure):

- control-vs-all: thresholds alpha / (H - i), adjusted p-values after Holm
- shaffer-pairwise: thresholds alpha / t_i, t_i the largest number of
  pairwise hypotheses that can still be true after i rejections
- hommel: Hommel's adjusted p-values, shown against the control-vs-all
  thresholds; rejection when the adjusted p-value is below alpha
"""

import logging
import math
from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, List, Optional, Sequence

import numpy as np

from ..models import ComparisonResult, RankTable
from ..validators import BenchValidator
from .ranking import rank_standard_error, two_sided_p

logger = logging.getLogger(__name__)

CONTROL_VS_ALL = "control-vs-all"
SHAFFER = "shaffer-pairwise"
HOMMEL = "hommel"
MODES = (CONTROL_VS_ALL, SHAFFER, HOMMEL)


@lru_cache(maxsize=None)
def _true_hypothesis_counts(k: int) -> FrozenSet[int]:
    if k <= 1:
        return frozenset({0})
    counts = set()
    for j in range(1, k + 1):
        counts.update(math.comb(j, 2) + x for x in _true_hypothesis_counts(k - j))
    return frozenset(counts)


def shaffer_sequence(k: int) -> List[int]:
    """
    Possible numbers of simultaneously true pairwise hypotheses among k
    algorithms, ascending. S(k) = union over j of {C(j,2) + x : x in S(k-j)}.
    """
    BenchValidator.validate_positive_int("k", k)
    return sorted(_true_hypothesis_counts(k))


def algorithms_for_pairs(h: int) -> int:
    """k such that k(k-1)/2 = h."""
    k = int(round((1 + math.sqrt(1 + 8 * h)) / 2))
    if k * (k - 1) // 2 != h:
        raise ValueError(f"{h} hypotheses are not the pairs of any number of algorithms")
    return k


def hommel_adjust(sorted_p: np.ndarray) -> np.ndarray:
    """Hommel adjusted p-values for ascending p-values."""
    p = np.asarray(sorted_p, dtype=float)
    h = len(p)
    adjusted = p.copy()
    for m in range(h, 1, -1):
        cim = np.min(m * p[-m:] / np.arange(1, m + 1))
        adjusted[-m:] = np.maximum(adjusted[-m:], cim)
        adjusted[:-m] = np.maximum(adjusted[:-m], np.minimum(m * p[:-m], cim))
    return np.minimum(adjusted, 1.0)


def _stepdown_adjust(sorted_p: np.ndarray, multipliers: np.ndarray) -> np.ndarray:
    return np.maximum.accumulate(np.minimum(1.0, multipliers * sorted_p))


def stepdown_thresholds(p_values: Sequence[float], alpha: float = 0.05, mode: str = CONTROL_VS_ALL,
                        labels: Optional[Sequence[str]] = None,
                        z_values: Optional[Sequence[float]] = None) -> List[ComparisonResult]:
    """
    Assign step-down thresholds and significance to a family of hypotheses.

    Args:
        p_values: Unadjusted p-values, in any order
        alpha: Family-wise significance level
        mode: 'control-vs-all', 'shaffer-pairwise' or 'hommel'
        labels: Hypothesis labels (default H1, H2, ... in input order)
        z_values: z statistics aligned with p_values

    Returns:
        ComparisonResults sorted by ascending p-value (stable); the
        significant ones form a prefix of the list

    Raises:
        ValueError: On p-values outside [0, 1], an unknown mode, or a
            pairwise family whose size is not k(k-1)/2
    """
    BenchValidator.validate_choice("mode", mode, MODES)
    BenchValidator.validate_alpha(alpha)
    p = np.asarray(p_values, dtype=float)
    BenchValidator.validate_p_values(p)
    h = len(p)
    if h == 0:
        return []
    labels = list(labels) if labels is not None else [f"H{i + 1}" for i in range(h)]
    z = list(z_values) if z_values is not None else [math.nan] * h
    if len(labels) != h or len(z) != h:
        raise ValueError("labels and z_values must align with p_values")

    order = np.argsort(p, kind="stable")
    sorted_p = p[order]
    if mode == SHAFFER:
        possible = shaffer_sequence(algorithms_for_pairs(h))
        multipliers = np.array([max(s for s in possible if s <= h - i) for i in range(h)], dtype=float)
    else:
        multipliers = np.arange(h, 0, -1, dtype=float)
    thresholds = alpha / multipliers

    if mode == HOMMEL:
        adjusted = hommel_adjust(sorted_p)
        passes = adjusted < alpha
    else:
        adjusted = _stepdown_adjust(sorted_p, multipliers)
        passes = sorted_p < thresholds
    significant = np.logical_and.accumulate(passes)

    return [
        ComparisonResult(
            label=labels[idx],
            z=float(z[idx]),
            p_value=float(sorted_p[pos]),
            threshold=float(thresholds[pos]),
            significant=bool(significant[pos]),
            adjusted_p=float(adjusted[pos]),
        )
        for pos, idx in enumerate(order)
    ]


def best_algorithm(rank_table: RankTable) -> str:
    """Algorithm with the lowest average rank (earliest column on ties)."""
    return rank_table.algorithms[int(np.argmin(rank_table.average_ranks))]


def compare_to_control(rank_table: RankTable, control: Optional[str] = None, alpha: float = 0.05,
                       mode: str = CONTROL_VS_ALL) -> List[ComparisonResult]:
    """
    Compare every algorithm with a control.

    Args:
        rank_table: Average ranks of m algorithms
        control: Control algorithm; the best-ranked one by default
        alpha: Significance level
        mode: 'control-vs-all' or 'hommel'

    Returns:
        m - 1 ComparisonResults sorted by p-value, z = (R_j - R_control) / se
    """
    if mode == SHAFFER:
        raise ValueError("Shaffer's procedure applies to all pairwise comparisons, not to a control")
    control = control or best_algorithm(rank_table)
    if control not in rank_table.algorithms:
        raise ValueError(f"Unknown control algorithm '{control}'")
    c = rank_table.algorithms.index(control)
    se = rank_standard_error(rank_table.n_algorithms, rank_table.n_datasets)
    r = rank_table.average_ranks
    others = [j for j in range(rank_table.n_algorithms) if j != c]
    z = [float((r[j] - r[c]) / se) for j in others]
    return stepdown_thresholds(
        [two_sided_p(v) for v in z], alpha, mode,
        labels=[rank_table.algorithms[j] for j in others], z_values=z,
    )


def pairwise_comparisons(rank_table: RankTable, alpha: float = 0.05,
                         mode: str = SHAFFER) -> List[ComparisonResult]:
    """
    All m(m-1)/2 pairwise comparisons labelled 'a vs b', z = (R_a - R_b) / se.
    """
    se = rank_standard_error(rank_table.n_algorithms, rank_table.n_datasets)
    r = rank_table.average_ranks
    names = rank_table.algorithms
    pairs = list(combinations(range(rank_table.n_algorithms), 2))
    z = [float((r[i] - r[j]) / se) for i, j in pairs]
    return stepdown_thresholds(
        [two_sided_p(v) for v in z], alpha, mode,
        labels=[f"{names[i]} vs {names[j]}" for i, j in pairs], z_values=z,
    )
