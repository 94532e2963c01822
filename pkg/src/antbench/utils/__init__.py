"""
Utility modules for antbench.

Provides decorators and seed helpers used throughout the package.
"""

from .decorators import logged_stage, requires_rows
from .seeding import derive_seed

__all__ = ['requires_rows', 'logged_stage', 'derive_seed']
