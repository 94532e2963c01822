"""
Nonparametric multi-algorithm comparison: Friedman ranks and statistics,
step-down post hoc procedures, and result-matrix IO.
"""

from .matrix_io import (
    MatrixParseError,
    comparisons_frame,
    friedman_frame,
    ranks_frame,
    read_result_matrix,
)
from .posthoc import (
    CONTROL_VS_ALL,
    HOMMEL,
    MODES,
    SHAFFER,
    best_algorithm,
    compare_to_control,
    hommel_adjust,
    pairwise_comparisons,
    shaffer_sequence,
    stepdown_thresholds,
)
from .ranking import average_ranks, friedman_test, iman_davenport, pairwise_z, two_sided_p

__all__ = [
    'MatrixParseError',
    'comparisons_frame',
    'friedman_frame',
    'ranks_frame',
    'read_result_matrix',
    'CONTROL_VS_ALL',
    'HOMMEL',
    'MODES',
    'SHAFFER',
    'best_algorithm',
    'compare_to_control',
    'hommel_adjust',
    'pairwise_comparisons',
    'shaffer_sequence',
    'stepdown_thresholds',
    'average_ranks',
    'friedman_test',
    'iman_davenport',
    'pairwise_z',
    'two_sided_p',
]
