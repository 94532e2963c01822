"""
Main entry point for the antbench application.

This module allows the package to be executed directly with:
    python -m antbench

Or with the antbench command:
    antbench bench run iris --profile desk
"""

from .cli import main

if __name__ == "__main__":
    main()
