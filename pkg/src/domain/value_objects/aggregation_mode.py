"""
Aggregation Mode Value Object
"""
from enum import Enum


class AggregationMode(str, Enum):
    """
    How seeds are collapsed into one summary value

    Business Rules:
        - BEST_OF_SEEDS: max over seeds, selected per (algorithm, task, M, lambda) cell
        - MEAN_CI95: mean with normal-approximation 95% confidence half-width
    """
    BEST_OF_SEEDS = "best_of_seeds"
    MEAN_CI95 = "mean_ci95"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_string(cls, value: str) -> 'AggregationMode':
        """
        Raises:
            ValueError: If value is not a valid mode
        """
        normalized = value.strip().lower()
        for mode in cls:
            if mode.value == normalized:
                return mode
        valid = ', '.join(m.value for m in cls)
        raise ValueError(f"Invalid aggregation mode: {value}. Valid modes: {valid}")
