"""
CLI package for antbench.

This package contains the Typer command definitions and the console entry
point.
"""

from .commands import app, main

__all__ = ['app', 'main']
