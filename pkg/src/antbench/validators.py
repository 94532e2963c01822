"""
Validation logic for antbench.

This module provides centralized validation for learner parameters,
sampling arguments, file paths and other user inputs with consistent
error messages.
"""

import math
from pathlib import Path
from typing import Iterable, Union

Number = Union[int, float]


class BenchValidator:
    """
    Centralized validation logic for antbench inputs.

    Every check raises ValueError (or FileNotFoundError for paths) with a
    message naming the offending parameter.
    """

    @staticmethod
    def validate_positive_int(name: str, value: int) -> int:
        """
        Validate that a parameter is a positive integer.

        Args:
            name: Parameter name used in the error message
            value: Value to check

        Returns:
            int: The validated value

        Raises:
            ValueError: If value is not an integer >= 1
        """
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"{name} must be an integer, got {value!r}")
        if value < 1:
            raise ValueError(f"{name} must be positive, got {value}")
        return value

    @staticmethod
    def validate_non_negative(name: str, value: Number) -> float:
        if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
            raise ValueError(f"{name} must be a finite number, got {value!r}")
        if value < 0:
            raise ValueError(f"{name} must be non-negative, got {value}")
        return float(value)

    @staticmethod
    def validate_open_unit(name: str, value: Number) -> float:
        """
        Validate a real strictly inside (0, 1).

        Raises:
            ValueError: If value is outside the open unit interval
        """
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ValueError(f"{name} must be a number, got {value!r}")
        if not 0.0 < value < 1.0:
            raise ValueError(f"{name} must lie in (0, 1), got {value}")
        return float(value)

    @staticmethod
    def validate_alpha(value: Number) -> float:
        """Significance level in [0, 1]; 0 rejects nothing."""
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ValueError(f"alpha must be a number, got {value!r}")
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {value}")
        return float(value)

    @staticmethod
    def validate_seed(seed: int) -> int:
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ValueError(f"Seed must be an integer, got {seed!r}")
        if seed < 0:
            raise ValueError(f"Seed must be non-negative, got {seed}")
        return seed

    @staticmethod
    def validate_choice(name: str, value: str, choices: Iterable[str]) -> str:
        options = tuple(choices)
        if value not in options:
            raise ValueError(f"Invalid {name} '{value}'. Expected one of: {', '.join(options)}")
        return value

    @staticmethod
    def validate_p_values(p_values: Iterable[float]) -> None:
        for p in p_values:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"p-values must lie in [0, 1], got {p}")

    @staticmethod
    def validate_existing_path(path: Union[str, Path], what: str = "File") -> Path:
        """
        Validate that a path exists.

        Raises:
            FileNotFoundError: Naming the missing path
        """
        resolved = Path(path).expanduser()
        if not resolved.exists():
            raise FileNotFoundError(f"{what} not found: {resolved}")
        return resolved
