"""
Manager modules for antbench.

This package contains the classes that orchestrate batches of experiments
and write their report files.
"""

from .reports import ReportManager
from .runner import BenchOutcome, BenchRunner

__all__ = ['ReportManager', 'BenchOutcome', 'BenchRunner']
