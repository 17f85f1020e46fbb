"""
Algorithm Value Object

Learners the harness can run, plus the two reference rows it emits.
"""
from enum import Enum


class Algorithm(str, Enum):
    """
    Row producers of the experiment harness

    Business Rules:
        - SINGLE: MCE IRL on the target demos only
        - JOINT: MCE IRL on source and target demos concatenated
        - MULTITASK: shared-mean regularised MCE IRL over all tasks
        - META: Reptile over source tasks, then finetune on the target
        - ORACLE / EXPERT: reference rows, not selectable learners
    """
    SINGLE = "single"
    JOINT = "joint"
    MULTITASK = "multitask"
    META = "meta"
    ORACLE = "oracle"
    EXPERT = "expert"

    def __str__(self) -> str:
        return self.value

    @property
    def display_name(self) -> str:
        return {
            Algorithm.SINGLE: "Single-task",
            Algorithm.JOINT: "Joint training",
            Algorithm.MULTITASK: "Multi-task (regularised)",
            Algorithm.META: "Reptile meta-initialisation",
            Algorithm.ORACLE: "Oracle",
            Algorithm.EXPERT: "Expert",
        }[self]

    @property
    def is_learner(self) -> bool:
        return self not in (Algorithm.ORACLE, Algorithm.EXPERT)

    @property
    def uses_lambda(self) -> bool:
        return self == Algorithm.MULTITASK

    @classmethod
    def from_string(cls, value: str) -> 'Algorithm':
        """
        Create Algorithm from string

        Raises:
            ValueError: If value is not a valid algorithm
        """
        normalized = value.strip().lower()
        for algorithm in cls:
            if algorithm.value == normalized:
                return algorithm
        valid = ', '.join(a.value for a in cls)
        raise ValueError(f"Invalid algorithm: {value}. Valid algorithms: {valid}")

    @classmethod
    def learners(cls) -> tuple:
        return tuple(a for a in cls if a.is_learner)
