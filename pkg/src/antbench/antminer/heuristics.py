"""
Scoring functions of the rule learner.

- heuristic: information gain of the class given a term, log2(C) - H(class | term)
- discretize_threshold: entropy-minimising binary split of a continuous column
- rule_quality: sensitivity x specificity of a rule on a table
- prune_rule: greedy term removal that never lowers rule quality
"""

import logging
import math
from dataclasses import replace
from typing import Optional, Tuple

import numpy as np

from ..models import GE, LT, AttributeSpec, DatasetTable, Rule, Term

logger = logging.getLogger(__name__)

# Entropy differences below this are treated as ties.
TIE_TOLERANCE = 1e-12


class NoSplitAvailable(ValueError):
    """A continuous column has fewer than two distinct values."""


def class_entropy(counts: np.ndarray) -> float:
    """Shannon entropy (bits) of a class-count vector; 0 for an empty one."""
    counts = np.asarray(counts, dtype=float)
    total = counts.sum()
    if total <= 0:
        return 0.0
    p = counts[counts > 0] / total
    return float(-(p * np.log2(p)).sum())


def _entropy_rows(counts: np.ndarray) -> np.ndarray:
    """Row-wise entropy of a (k, C) count matrix."""
    totals = counts.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(totals > 0, counts / np.where(totals > 0, totals, 1), 0.0)
        logs = np.where(p > 0, np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return -(p * logs).sum(axis=1)


def gain_from_mask(mask: np.ndarray, codes: np.ndarray, n_classes: int) -> float:
    """log2(C) - H(class | mask); 0 when the mask selects nothing."""
    if n_classes < 2 or not mask.any():
        return 0.0
    counts = np.bincount(codes[mask], minlength=n_classes)
    return max(0.0, math.log2(n_classes) - class_entropy(counts))


def heuristic(vertex: Term, data: DatasetTable) -> float:
    """
    Desirability of a term on a table.

    Args:
        vertex: Candidate term
        data: Rows the term is evaluated on (non-empty)

    Returns:
        float in [0, log2(C)]: log2(C) minus the class entropy among the
        rows satisfying the term; 0 if no row satisfies it
    """
    mask = vertex.mask(data.matrix)
    return gain_from_mask(mask, data.class_codes, len(data.class_domain))


def best_split(values: np.ndarray, codes: np.ndarray, n_classes: int) -> Tuple[float, str, float]:
    """
    Exhaustive midpoint scan for the entropy-minimising threshold.

    Returns:
        (threshold, direction, weighted entropy); ties between thresholds go
        to the smallest, ties between sides go to '<'

    Raises:
        NoSplitAvailable: If all values are identical
    """
    order = np.argsort(values, kind="stable")
    sorted_values = values[order]
    sorted_codes = codes[order]
    boundaries = np.flatnonzero(sorted_values[1:] != sorted_values[:-1])
    if boundaries.size == 0:
        raise NoSplitAvailable("no split available: all values are identical")

    one_hot = np.zeros((len(sorted_codes), n_classes))
    one_hot[np.arange(len(sorted_codes)), sorted_codes] = 1.0
    cumulative = np.cumsum(one_hot, axis=0)
    left = cumulative[boundaries]
    right = cumulative[-1] - left
    n_left = left.sum(axis=1)
    n_right = right.sum(axis=1)
    h_left = _entropy_rows(left)
    h_right = _entropy_rows(right)
    weighted = (n_left * h_left + n_right * h_right) / len(sorted_codes)

    best = int(np.flatnonzero(weighted <= weighted.min() + TIE_TOLERANCE)[0])
    position = boundaries[best]
    threshold = float((sorted_values[position] + sorted_values[position + 1]) / 2.0)
    direction = GE if h_right[best] < h_left[best] - TIE_TOLERANCE else LT
    return threshold, direction, float(weighted[best])


def discretize_threshold(attribute: AttributeSpec, data: DatasetTable) -> Tuple[float, str]:
    """
    Choose a binary split for a continuous attribute on the given rows.

    Args:
        attribute: Continuous attribute of the table's schema
        data: Rows to split

    Returns:
        (threshold, direction): midpoint between consecutive distinct values
        minimising the size-weighted class entropy, and the purer side

    Raises:
        ValueError: If the attribute is not continuous
        NoSplitAvailable: If the column holds a single distinct value
    """
    if not attribute.is_continuous:
        raise ValueError(f"Attribute '{attribute.name}' is not continuous")
    column = data.attribute_index(attribute.name)
    threshold, direction, _ = best_split(data.matrix[:, column], data.class_codes, len(data.class_domain))
    return threshold, direction


def quality_from_mask(covered: np.ndarray, positives: np.ndarray) -> float:
    """sensitivity x specificity, with 0/0 factors counted as 0."""
    tp = int(np.count_nonzero(covered & positives))
    fp = int(np.count_nonzero(covered)) - tp
    fn = int(np.count_nonzero(positives)) - tp
    tn = len(covered) - tp - fp - fn
    sensitivity = tp / (tp + fn) if tp + fn else 0.0
    specificity = tn / (tn + fp) if tn + fp else 0.0
    return sensitivity * specificity


def rule_quality(rule: Rule, data: DatasetTable) -> float:
    """
    Sensitivity x specificity of a rule against its predicted class.

    Returns:
        float in [0, 1]
    """
    positives = data.class_codes == data.class_attribute.code(rule.predicted_class)
    return quality_from_mask(rule.mask(data.matrix), positives)


def majority_code(codes: np.ndarray, n_classes: int) -> Optional[int]:
    """Most frequent class code (earliest on ties); None for no rows."""
    if codes.size == 0:
        return None
    return int(np.argmax(np.bincount(codes, minlength=n_classes)))


def prune_rule(rule: Rule, data: DatasetTable) -> Rule:
    """
    Greedily drop terms while doing so does not lower rule quality.

    Each pass tries removing every single term, re-electing the predicted
    class as the majority of the rows the shorter rule covers, and keeps the
    best trial (earliest term on ties) if its quality is at least the current
    one. The last remaining term is never removed.

    Returns:
        Pruned rule with its quality recomputed on `data`
    """
    matrix, codes = data.matrix, data.class_codes
    domain = data.class_domain
    n_classes = len(domain)
    current = replace(rule, quality=rule_quality(rule, data))

    while len(current.terms) > 1:
        best_trial: Optional[Rule] = None
        for i in range(len(current.terms)):
            terms = current.terms[:i] + current.terms[i + 1:]
            covered = np.ones(len(codes), dtype=bool)
            for term in terms:
                covered &= term.mask(matrix)
            code = majority_code(codes[covered], n_classes)
            label = domain[code] if code is not None else current.predicted_class
            positives = codes == data.class_attribute.code(label)
            trial = Rule(terms=terms, predicted_class=label, quality=quality_from_mask(covered, positives))
            if best_trial is None or trial.quality > best_trial.quality:
                best_trial = trial
        if best_trial.quality >= current.quality:
            current = best_trial
        else:
            break
    return current
