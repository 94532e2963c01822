"""
Data models for antbench.

This module contains the dataclass definitions shared across the package:
- AttributeSpec, InstanceRow, DatasetTable, FoldPlan: tabular data and folds
- Term, Rule, RuleListModel: the ordered rule-list classifier
- ErrorReport, ModelSizeReport, StabilityCurve: evaluation outputs
- ResultMatrix, RankTable, ComparisonResult: multi-classifier comparison
- Learner, Classifier: the pluggable base-learner protocols
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

try:
    from typing import Protocol, runtime_checkable
except ImportError:  # pragma: no cover
    from typing_extensions import Protocol, runtime_checkable

Value = Union[str, float]

NOMINAL = "nominal"
CONTINUOUS = "continuous"

EQ = "="
LT = "<"
GE = ">="


@dataclass(frozen=True)
class AttributeSpec:
    """
    Schema entry for one attribute.

    Attributes:
        name: Attribute name, unique within a schema
        kind: Either 'nominal' or 'continuous'
        domain: Ordered category labels (nominal attributes only)
    """
    name: str
    kind: str
    domain: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("Attribute name cannot be empty")
        if self.kind not in (NOMINAL, CONTINUOUS):
            raise ValueError(f"Attribute '{self.name}': unknown kind '{self.kind}'")
        if self.kind == NOMINAL:
            if not self.domain:
                raise ValueError(f"Nominal attribute '{self.name}' has an empty domain")
            if len(set(self.domain)) != len(self.domain):
                raise ValueError(f"Nominal attribute '{self.name}' has duplicate labels")
        elif self.domain:
            raise ValueError(f"Continuous attribute '{self.name}' cannot declare a domain")

    @property
    def is_nominal(self) -> bool:
        return self.kind == NOMINAL

    @property
    def is_continuous(self) -> bool:
        return self.kind == CONTINUOUS

    @cached_property
    def _codes(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.domain)}

    def code(self, label: str) -> int:
        """Position of a category label in the domain."""
        try:
            return self._codes[label]
        except KeyError:
            raise ValueError(f"Unknown category '{label}' for attribute '{self.name}'") from None

    def accepts(self, value: Value) -> bool:
        """Check that a value has the right kind for this attribute."""
        if self.is_nominal:
            return isinstance(value, str) and value in self._codes
        return (
            isinstance(value, (int, float, np.floating, np.integer))
            and not isinstance(value, bool)
            and math.isfinite(value)
        )


@dataclass(frozen=True)
class InstanceRow:
    """One example: a value per schema attribute plus its class label."""
    values: Tuple[Value, ...]
    class_label: str


@dataclass(frozen=True)
class DatasetTable:
    """
    Immutable classification table (the training set S).

    Numeric views used by the learners (`matrix`, `class_codes`) are computed
    on first access and cached; nominal values are stored as domain codes.

    Attributes:
        name: Dataset name used in reports
        schema: Predictor attributes, in column order
        class_attribute: Nominal class attribute
        rows: Instances
    """
    name: str
    schema: Tuple[AttributeSpec, ...]
    class_attribute: AttributeSpec
    rows: Tuple[InstanceRow, ...]

    def __post_init__(self) -> None:
        if not self.class_attribute.is_nominal:
            raise ValueError(f"Class attribute '{self.class_attribute.name}' must be nominal")
        names = [a.name for a in self.schema]
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate attribute names in schema of '{self.name}'")
        if self.class_attribute.name in names:
            raise ValueError(f"Class attribute '{self.class_attribute.name}' also listed as predictor")
        width = len(self.schema)
        for i, row in enumerate(self.rows):
            if len(row.values) != width:
                raise ValueError(f"Row {i}: expected {width} values, got {len(row.values)}")
            for spec, value in zip(self.schema, row.values):
                if not spec.accepts(value):
                    raise ValueError(f"Row {i}: invalid value {value!r} for attribute '{spec.name}'")
            if row.class_label not in self.class_attribute.domain:
                raise ValueError(f"Row {i}: unknown class label '{row.class_label}'")

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def class_domain(self) -> Tuple[str, ...]:
        return self.class_attribute.domain

    @property
    def nominal_count(self) -> int:
        return sum(1 for a in self.schema if a.is_nominal)

    @property
    def continuous_count(self) -> int:
        return sum(1 for a in self.schema if a.is_continuous)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Rows as an (n, p) float array; nominal columns hold domain codes."""
        out = np.empty((len(self.rows), len(self.schema)), dtype=float)
        for j, spec in enumerate(self.schema):
            if spec.is_nominal:
                out[:, j] = [spec.code(row.values[j]) for row in self.rows]
            else:
                out[:, j] = [row.values[j] for row in self.rows]
        return out

    @cached_property
    def class_codes(self) -> np.ndarray:
        return np.array([self.class_attribute.code(r.class_label) for r in self.rows], dtype=int)

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.class_codes, minlength=len(self.class_domain))

    def majority_class(self) -> str:
        """Most frequent class; ties go to the label earliest in the domain."""
        return self.class_domain[int(np.argmax(self.class_counts()))]

    def attribute_index(self, name: str) -> int:
        for i, spec in enumerate(self.schema):
            if spec.name == name:
                return i
        raise KeyError(f"No attribute named '{name}' in '{self.name}'")

    def subset(self, indices: Sequence[int], name: Optional[str] = None) -> 'DatasetTable':
        """New table holding the rows at `indices` (repeats allowed)."""
        return DatasetTable(
            name=name or self.name,
            schema=self.schema,
            class_attribute=self.class_attribute,
            rows=tuple(self.rows[int(i)] for i in indices),
        )


@dataclass(frozen=True)
class FoldPlan:
    """
    Assignment of every row to one of k folds.

    Attributes:
        k: Number of folds
        assignments: Fold index per row, in row order
    """
    k: int
    assignments: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"Fold count must be positive, got {self.k}")
        if any(not 0 <= a < self.k for a in self.assignments):
            raise ValueError(f"Fold assignments must lie in [0, {self.k})")

    def test_indices(self, fold: int) -> List[int]:
        return [i for i, a in enumerate(self.assignments) if a == fold]

    def train_indices(self, fold: int) -> List[int]:
        return [i for i, a in enumerate(self.assignments) if a != fold]


def check_instance(schema: Sequence[AttributeSpec], instance: InstanceRow) -> None:
    """Raise ValueError when an instance does not conform to a schema."""
    if len(instance.values) != len(schema):
        raise ValueError(
            f"Schema mismatch: instance has {len(instance.values)} values, schema has {len(schema)}"
        )
    for spec, value in zip(schema, instance.values):
        if not spec.accepts(value):
            raise ValueError(f"Schema mismatch: {value!r} is not a valid '{spec.name}' value")


@dataclass(frozen=True)
class Term:
    """
    A single rule condition: `attribute operator value`.

    `=` applies to nominal attributes (value is a category label), `<` and
    `>=` to continuous ones (value is a finite threshold).

    Attributes:
        attribute: Schema entry tested by the term
        index: Column of the attribute in the schema
        operator: One of '=', '<', '>='
        value: Category label or threshold
    """
    attribute: AttributeSpec
    index: int
    operator: str
    value: Value

    def __post_init__(self) -> None:
        if self.operator == EQ:
            if not self.attribute.is_nominal:
                raise ValueError(f"'=' term on continuous attribute '{self.attribute.name}'")
            self.attribute.code(self.value)
        elif self.operator in (LT, GE):
            if not self.attribute.is_continuous:
                raise ValueError(f"'{self.operator}' term on nominal attribute '{self.attribute.name}'")
            if not math.isfinite(self.value):
                raise ValueError(f"Threshold for '{self.attribute.name}' must be finite")
        else:
            raise ValueError(f"Unknown operator '{self.operator}'")

    def matches(self, value: Value) -> bool:
        if self.operator == EQ:
            return value == self.value
        if self.operator == LT:
            return value < self.value
        return value >= self.value

    def mask(self, matrix: np.ndarray) -> np.ndarray:
        """Boolean coverage over the rows of a table matrix."""
        column = matrix[:, self.index]
        if self.operator == EQ:
            return column == self.attribute.code(self.value)
        if self.operator == LT:
            return column < self.value
        return column >= self.value

    def __str__(self) -> str:
        value = self.value if self.operator == EQ else repr(float(self.value))
        return f"{self.attribute.name} {self.operator} {value}"


@dataclass(frozen=True)
class Rule:
    """
    IF term_1 AND ... AND term_n THEN predicted_class.

    Attributes:
        terms: Conjunction of conditions, at most one per attribute
        predicted_class: Consequent label
        quality: Rule quality on the data the rule was scored against
    """
    terms: Tuple[Term, ...]
    predicted_class: str
    quality: float = 0.0

    def __post_init__(self) -> None:
        columns = [t.index for t in self.terms]
        if len(set(columns)) != len(columns):
            raise ValueError("A rule may test each attribute at most once")

    def __len__(self) -> int:
        return len(self.terms)

    def covers(self, instance: InstanceRow) -> bool:
        return all(t.matches(instance.values[t.index]) for t in self.terms)

    def mask(self, matrix: np.ndarray) -> np.ndarray:
        covered = np.ones(matrix.shape[0], dtype=bool)
        for term in self.terms:
            covered &= term.mask(matrix)
        return covered

    def same_as(self, other: 'Rule') -> bool:
        """Equal antecedent and consequent, ignoring quality."""
        return self.terms == other.terms and self.predicted_class == other.predicted_class

    def __str__(self) -> str:
        antecedent = " AND ".join(str(t) for t in self.terms) if self.terms else "TRUE"
        return f"IF {antecedent} THEN {self.predicted_class}"


@dataclass(frozen=True)
class RuleListModel:
    """
    Ordered rule list with a default class (the discovered model h_t).

    Classification is first-match over `rules`, falling back to
    `default_class` when no rule fires.
    """
    rules: Tuple[Rule, ...]
    default_class: str
    schema: Tuple[AttributeSpec, ...]
    class_attribute: AttributeSpec
    colony_sizes: Tuple[int, ...] = ()

    @property
    def term_count(self) -> int:
        return sum(len(rule) for rule in self.rules)

    def classify(self, instance: InstanceRow) -> str:
        check_instance(self.schema, instance)
        for rule in self.rules:
            if rule.covers(instance):
                return rule.predicted_class
        return self.default_class

    def predict(self, table: DatasetTable) -> List[str]:
        """Labels for every row of a table, vectorised over the rule list."""
        if table.schema != self.schema:
            raise ValueError(f"Schema mismatch between model and table '{table.name}'")
        labels = np.full(len(table), self.default_class, dtype=object)
        pending = np.ones(len(table), dtype=bool)
        for rule in self.rules:
            hit = pending & rule.mask(table.matrix)
            labels[hit] = rule.predicted_class
            pending &= ~hit
        return list(labels)


@runtime_checkable
class Classifier(Protocol):
    """A trained model that labels instances."""

    @property
    def term_count(self) -> int: ...

    def classify(self, instance: InstanceRow) -> str: ...

    def predict(self, table: DatasetTable) -> List[str]: ...


@runtime_checkable
class Learner(Protocol):
    """Anything that trains a Classifier from a table and a seed."""

    name: str

    def fit(self, data: DatasetTable, seed: int) -> Classifier: ...


@dataclass(frozen=True)
class ErrorReport:
    """
    Test errors of one algorithm on one dataset.

    Attributes:
        dataset: Dataset name
        algorithm: Algorithm label
        per_run_errors: iteration x (fold or run) matrix of fractions
        protocol: 'cv', 'holdout' or 'stability'
    """
    dataset: str
    algorithm: str
    per_run_errors: Tuple[Tuple[float, ...], ...]
    protocol: str = "cv"

    @property
    def mean_error(self) -> float:
        return float(np.mean(np.asarray(self.per_run_errors, dtype=float)))


@dataclass(frozen=True)
class ModelSizeReport:
    """
    Model sizes over the same runs as the paired ErrorReport.

    `per_run_terms` holds terms per model (per member for ensembles);
    `per_run_total_terms` the whole-model total, equal to `per_run_terms`
    for single classifiers.
    """
    per_run_terms: Tuple[Tuple[float, ...], ...]
    per_run_total_terms: Tuple[Tuple[float, ...], ...] = ()

    def _flat(self) -> np.ndarray:
        return np.asarray(self.per_run_terms, dtype=float).ravel()

    @property
    def mean_terms(self) -> float:
        return float(np.mean(self._flat()))

    @property
    def std_error(self) -> float:
        values = self._flat()
        if values.size < 2:
            return 0.0
        return float(np.std(values, ddof=1) / math.sqrt(values.size))

    @property
    def mean_total_terms(self) -> float:
        totals = self.per_run_total_terms or self.per_run_terms
        return float(np.mean(np.asarray(totals, dtype=float)))


@dataclass(frozen=True)
class StabilityCurve:
    """Per-fold test errors of one cross-validation run, in fold order."""
    dataset: str
    algorithm: str
    per_fold_errors: Tuple[float, ...]

    @property
    def variance(self) -> float:
        if len(self.per_fold_errors) < 2:
            return 0.0
        return float(np.var(self.per_fold_errors, ddof=1))


@dataclass(frozen=True, eq=False)
class ResultMatrix:
    """
    Datasets (rows) x algorithms (columns) of mean test errors.
    """
    values: np.ndarray
    datasets: Tuple[str, ...]
    algorithms: Tuple[str, ...]

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise ValueError("Result matrix must be two-dimensional")
        n, m = values.shape
        if n < 2 or m < 2:
            raise ValueError(f"Result matrix needs at least 2 datasets and 2 algorithms, got {n}x{m}")
        if not np.all(np.isfinite(values)):
            raise ValueError("Result matrix has missing or non-finite cells")
        if len(self.datasets) != n or len(self.algorithms) != m:
            raise ValueError("Result matrix labels do not match its shape")
        object.__setattr__(self, "values", values)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape


@dataclass(frozen=True, eq=False)
class RankTable:
    """Per-dataset fractional ranks (1 = lowest error) and their column means."""
    ranks: np.ndarray
    algorithms: Tuple[str, ...]

    @property
    def n_datasets(self) -> int:
        return self.ranks.shape[0]

    @property
    def n_algorithms(self) -> int:
        return self.ranks.shape[1]

    @cached_property
    def average_ranks(self) -> np.ndarray:
        return self.ranks.mean(axis=0)

    def average_rank(self, algorithm: str) -> float:
        return float(self.average_ranks[self.algorithms.index(algorithm)])


@dataclass(frozen=True)
class ComparisonResult:
    """
    One post hoc hypothesis, either `algorithm` (vs. control) or `a vs. b`.

    Attributes:
        label: Algorithm or pair label
        z: z statistic of the rank difference
        p_value: Unadjusted two-sided p-value
        threshold: Step-down significance threshold at this position
        significant: Whether the step-down procedure rejects the hypothesis
        adjusted_p: Adjusted p-value for the chosen procedure
    """
    label: str
    z: float
    p_value: float
    threshold: float
    significant: bool
    adjusted_p: float = field(default=float("nan"))
