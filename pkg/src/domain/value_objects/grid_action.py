"""
Grid Action Value Object

The four movement actions of the gridworld, in action-index order.
"""
from enum import Enum
from typing import Tuple


class GridAction(int, Enum):
    """
    Movement actions, indexed 0..3

    Business Rules:
        - Index order is UP, DOWN, LEFT, RIGHT
        - Offsets are (row, col) deltas
        - There is no stay action; blocked moves resolve to staying
    """
    UP = 0
    DOWN = 1
    LEFT = 2
    RIGHT = 3

    @property
    def offset(self) -> Tuple[int, int]:
        return _OFFSETS[self]

    @property
    def arrow(self) -> str:
        """Single-character rendering for policy dumps"""
        return _ARROWS[self]

    @property
    def orthogonal(self) -> Tuple['GridAction', 'GridAction']:
        """The two directions a slip can deflect this action into"""
        if self in (GridAction.UP, GridAction.DOWN):
            return (GridAction.LEFT, GridAction.RIGHT)
        return (GridAction.UP, GridAction.DOWN)

    @classmethod
    def from_string(cls, value: str) -> 'GridAction':
        """
        Create GridAction from its name

        Raises:
            ValueError: If value is not a valid action name
        """
        try:
            return cls[value.strip().upper()]
        except KeyError:
            valid = ', '.join(a.name for a in cls)
            raise ValueError(f"Invalid action: {value}. Valid actions: {valid}")


_OFFSETS = {
    GridAction.UP: (-1, 0),
    GridAction.DOWN: (1, 0),
    GridAction.LEFT: (0, -1),
    GridAction.RIGHT: (0, 1),
}

_ARROWS = {
    GridAction.UP: "^",
    GridAction.DOWN: "v",
    GridAction.LEFT: "<",
    GridAction.RIGHT: ">",
}
