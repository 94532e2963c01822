"""
Evaluation protocols and report tables.
"""

from .protocol import (
    cross_validate,
    curve_from_report,
    evaluate_ensemble,
    holdout_evaluate,
    model_size,
    stability_curve,
    test_error,
)
from .reports import (
    format_percent,
    format_size,
    runs_frame,
    stability_text,
    summary_frame,
    summary_record,
)

__all__ = [
    'cross_validate',
    'curve_from_report',
    'evaluate_ensemble',
    'holdout_evaluate',
    'model_size',
    'stability_curve',
    'test_error',
    'format_percent',
    'format_size',
    'runs_frame',
    'stability_text',
    'summary_frame',
    'summary_record',
]
