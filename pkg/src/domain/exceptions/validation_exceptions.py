"""
Validation Exceptions

Exceptions for malformed inputs: MDP tables, grid text and experiment configs.
"""
from typing import Dict, List, Optional, Tuple


class ValidationException(Exception):
    """Base exception for validation errors"""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(message)


class MdpValidationException(ValidationException):
    """Base exception for TabularMdp invariant violations"""
    pass


class ShapeMismatchException(MdpValidationException):
    """Raised when an MDP array has the wrong shape"""

    def __init__(self, field: str, expected: Tuple[int, ...], actual: Tuple[int, ...]):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Invalid shape for {field}: expected {expected}, got {actual}", field)


class NonStochasticTransitionException(MdpValidationException):
    """Raised when a transition row is not a probability distribution"""

    def __init__(self, state: int, action: int, row_sum: float):
        self.state = state
        self.action = action
        self.row_sum = row_sum
        super().__init__(
            f"Transition row T[{state}][{action}] is not stochastic (sum {row_sum:.12g})",
            "transitions",
        )


class NonStochasticInitialDistributionException(MdpValidationException):
    """Raised when the initial distribution is not a probability vector"""

    def __init__(self, total: float):
        self.total = total
        super().__init__(
            f"Initial distribution is not stochastic (sum {total:.12g})",
            "initial_dist",
        )


class DiscountOutOfRangeException(MdpValidationException):
    """Raised when the discount is outside [0, 1)"""

    def __init__(self, discount: float):
        self.discount = discount
        super().__init__(f"Discount must lie in [0, 1), got {discount}", "discount")


class GridParseException(ValidationException):
    """Base exception for grid text errors"""

    def __init__(self, message: str):
        super().__init__(message, "grid")


class EmptyGridException(GridParseException):
    """Raised when the grid text has no rows"""

    def __init__(self):
        super().__init__("Grid text is empty")


class RaggedRowsException(GridParseException):
    """Raised when grid rows have different widths"""

    def __init__(self, row: int, width: int, expected: int):
        self.row = row
        self.width = width
        self.expected = expected
        super().__init__(f"Grid row {row} has width {width}, expected {expected}")


class UnknownCellException(GridParseException):
    """Raised when the grid text contains a character outside the alphabet"""

    def __init__(self, row: int, col: int, char: str):
        self.row = row
        self.col = col
        self.char = char
        super().__init__(f"Unknown cell character {char!r} at row {row}, col {col}")


class AllWallGridException(GridParseException):
    """Raised when a grid has no traversable cell"""

    def __init__(self):
        super().__init__("Grid has no non-wall cells")


class ConfigValidationException(ValidationException):
    """Raised when an experiment config fails validation"""

    def __init__(self, errors: List[Tuple[str, str]]):
        self.errors = errors
        error_messages = [f"{field}: {message}" for field, message in errors]
        super().__init__(f"Invalid experiment config: {'; '.join(error_messages)}")

    def get_errors_by_field(self) -> Dict[str, List[str]]:
        """
        Get errors grouped by field

        Returns:
            Dict mapping field paths to error messages
        """
        errors_by_field: Dict[str, List[str]] = {}
        for field, message in self.errors:
            errors_by_field.setdefault(field, []).append(message)
        return errors_by_field


class NegativeIndexException(ValidationException):
    """Raised when a demonstration holds a negative state or action index"""

    def __init__(self, field: str, value: int):
        self.value = value
        super().__init__(f"Demonstration {field} must be non-negative, got {value}", field)
