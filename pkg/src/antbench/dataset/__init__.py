"""
Dataset package for antbench.

Loading of CSV (with YAML sidecar schema) and ARFF files, and seeded
resampling: stratified folds, hold-out splits and bootstrap samples.
"""

from .loader import (
    DatasetParseError,
    SchemaNotFoundError,
    load_dataset,
    load_schema,
    resolve_dataset_path,
    schema_path_for,
)
from .sampling import bootstrap_sample, holdout_split, stratified_folds

__all__ = [
    'DatasetParseError',
    'SchemaNotFoundError',
    'load_dataset',
    'load_schema',
    'resolve_dataset_path',
    'schema_path_for',
    'bootstrap_sample',
    'holdout_split',
    'stratified_folds',
]
