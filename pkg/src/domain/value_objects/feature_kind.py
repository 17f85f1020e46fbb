"""
Feature Kind Value Object
"""
from enum import Enum


class FeatureKind(str, Enum):
    """
    Feature representation used for the reward

    Business Rules:
        - TERRAIN: K=5 indicator of the cell's terrain (generative ground truth)
        - ONE_HOT_STATE: K=n_states indicator of the state (experimental condition)
    """
    TERRAIN = "terrain"
    ONE_HOT_STATE = "one_hot_state"

    def __str__(self) -> str:
        return self.value

    @property
    def display_name(self) -> str:
        return {
            FeatureKind.TERRAIN: "Terrain indicators",
            FeatureKind.ONE_HOT_STATE: "One-hot state",
        }[self]

    @classmethod
    def from_string(cls, value: str) -> 'FeatureKind':
        """
        Create FeatureKind from string

        Raises:
            ValueError: If value is not a valid feature kind
        """
        normalized = value.strip().lower()
        for kind in cls:
            if kind.value == normalized:
                return kind
        valid = ', '.join(k.value for k in cls)
        raise ValueError(f"Invalid feature kind: {value}. Valid kinds: {valid}")
