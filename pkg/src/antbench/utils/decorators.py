"""
Utility decorators for antbench.

This module provides decorators for common functionality like
input table requirements and stage logging.
"""

import logging
import time
from functools import wraps

logger = logging.getLogger(__name__)


def requires_rows(func):
    """
    Decorator to ensure the table argument holds at least one row.

    Looks for the first positional argument with a `rows` attribute (a
    DatasetTable) and raises ValueError when it is empty, so sampling and
    training functions share one error message for degenerate input.

    Args:
        func: Function to decorate

    Returns:
        Decorated function that rejects empty tables
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        candidates = list(args) + list(kwargs.values())
        table = next((a for a in candidates if hasattr(a, "rows") and hasattr(a, "schema")), None)
        if table is not None and len(table.rows) == 0:
            raise ValueError(f"{func.__name__} requires a non-empty table (got '{table.name}')")
        return func(*args, **kwargs)
    return wrapper


def logged_stage(func):
    """
    Decorator to log start, completion and duration of a protocol stage.

    Args:
        func: Function to decorate

    Returns:
        Decorated function with debug-level timing logs
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        logger.debug(f"Starting {func.__name__}")
        started = time.perf_counter()
        result = func(*args, **kwargs)
        logger.debug(f"Finished {func.__name__} in {time.perf_counter() - started:.2f}s")
        return result
    return wrapper
