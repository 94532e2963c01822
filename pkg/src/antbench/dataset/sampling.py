"""
Seeded resampling of DatasetTables: stratified folds, stratified hold-out
splits and bootstrap samples. All three are pure functions of
(table, parameters, seed).
"""

import logging
import math
from typing import List, Tuple

import numpy as np

from ..models import DatasetTable, FoldPlan
from ..utils.decorators import requires_rows
from ..validators import BenchValidator

logger = logging.getLogger(__name__)


def _class_members(data: DatasetTable) -> List[np.ndarray]:
    codes = data.class_codes
    return [np.flatnonzero(codes == c) for c in range(len(data.class_domain))]


@requires_rows
def stratified_folds(data: DatasetTable, k: int, seed: int) -> FoldPlan:
    """
    Assign rows to k folds, stratified by class.

    Rows of each class are shuffled with the seed and dealt round-robin into
    the folds; dealing continues where the previous class stopped, so both
    per-class and overall fold sizes differ by at most one.

    Raises:
        ValueError: If k is not positive or exceeds the row count
    """
    BenchValidator.validate_positive_int("k", k)
    n = len(data)
    if k > n:
        raise ValueError(f"Cannot build {k} folds from {n} rows")
    rarest = int(data.class_counts()[data.class_counts() > 0].min())
    if k > rarest:
        logger.warning(f"{data.name}: k={k} exceeds the rarest class count ({rarest}); some folds miss a class")

    rng = np.random.default_rng(seed)
    assignments = np.empty(n, dtype=int)
    position = 0
    for members in _class_members(data):
        for index in rng.permutation(members):
            assignments[index] = position % k
            position += 1
    return FoldPlan(k=k, assignments=tuple(int(a) for a in assignments))


def _stratified_quota(counts: np.ndarray, n_train: int) -> np.ndarray:
    """Largest-remainder allocation of n_train over classes (ties: class order)."""
    exact = counts * (n_train / counts.sum())
    quota = np.floor(exact).astype(int)
    remainder = exact - quota
    order = sorted(range(len(counts)), key=lambda c: (-remainder[c], c))
    for c in order[: n_train - int(quota.sum())]:
        quota[c] += 1
    return np.minimum(quota, counts)


@requires_rows
def holdout_split(data: DatasetTable, train_fraction: float, seed: int) -> Tuple[DatasetTable, DatasetTable]:
    """
    Split a table into stratified training and test parts.

    The training part holds round(train_fraction * n) rows, allocated over
    classes by largest remainder so each class is split to within one row of
    the requested fraction. Both parts keep the original row order.

    Raises:
        ValueError: If either part would be empty
    """
    n = len(data)
    n_train = int(math.floor(train_fraction * n + 0.5))
    if n_train <= 0:
        raise ValueError(f"train_fraction={train_fraction} leaves the training part of '{data.name}' empty")
    if n_train >= n:
        raise ValueError(f"train_fraction={train_fraction} leaves the test part of '{data.name}' empty")

    rng = np.random.default_rng(seed)
    quota = _stratified_quota(data.class_counts(), n_train)
    train_idx: List[int] = []
    for members, take in zip(_class_members(data), quota):
        train_idx.extend(int(i) for i in rng.permutation(members)[:take])
    chosen = np.zeros(n, dtype=bool)
    chosen[train_idx] = True
    train = data.subset(np.flatnonzero(chosen))
    test = data.subset(np.flatnonzero(~chosen))
    logger.debug(f"{data.name}: hold-out split {len(train)}/{len(test)} (seed={seed})")
    return train, test


@requires_rows
def bootstrap_sample(train: DatasetTable, seed: int) -> DatasetTable:
    """
    Draw n rows uniformly with replacement from an n-row table.
    """
    rng = np.random.default_rng(seed)
    picks = rng.integers(0, len(train), size=len(train))
    return train.subset(picks)
