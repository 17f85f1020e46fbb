"""
Demo Role Value Object
"""
from enum import Enum


class DemoRole(str, Enum):
    """
    Role of a demonstration file in a few-shot experiment

    Business Rules:
        - SOURCE: large demo sets (N) of the non-target tasks
        - TARGET: demo set of the target task, truncated to M at fit time
    """
    SOURCE = "source"
    TARGET = "target"

    def __str__(self) -> str:
        return self.value

    @property
    def code(self) -> int:
        """Stable integer used when deriving seeds"""
        return 0 if self == DemoRole.SOURCE else 1

    @classmethod
    def from_string(cls, value: str) -> 'DemoRole':
        """
        Raises:
            ValueError: If value is not a valid role
        """
        normalized = value.strip().lower()
        for role in cls:
            if role.value == normalized:
                return role
        raise ValueError(f"Invalid demo role: {value}. Valid roles: source, target")
