"""
Trajectory and DemoSet Entities

Fixed-horizon demonstrations stored as integer index arrays.
"""
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from ..exceptions.domain_exceptions import DimensionMismatchException
from ..exceptions.validation_exceptions import NegativeIndexException
from .tabular_mdp import readonly_array


def check_non_negative(states: np.ndarray, actions: np.ndarray) -> None:
    """
    Raises:
        NegativeIndexException: If any state or action index is below zero
    """
    for field, values in (("states", states), ("actions", actions)):
        if values.size and values.min() < 0:
            raise NegativeIndexException(field, int(values.min()))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    One demonstration (s_0, a_0, ..., s_T, a_T)

    Business Rules:
        - Nonempty
        - State and action indices are non-negative
        - The final state carries an action, so there are T+1 pairs
    """
    states: np.ndarray
    actions: np.ndarray

    def __post_init__(self):
        states = readonly_array(self.states, dtype=np.int64)
        actions = readonly_array(self.actions, dtype=np.int64)
        if states.ndim != 1 or states.shape != actions.shape:
            raise ValueError(
                f"States and actions must be equal-length vectors, got "
                f"{states.shape} and {actions.shape}"
            )
        if states.size == 0:
            raise ValueError("Trajectory must contain at least one step")
        check_non_negative(states, actions)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "actions", actions)

    @classmethod
    def from_steps(cls, steps: Sequence[Tuple[int, int]]) -> 'Trajectory':
        if len(steps) == 0:
            raise ValueError("Trajectory must contain at least one step")
        states, actions = zip(*steps)
        return cls(states=np.array(states), actions=np.array(actions))

    @property
    def steps(self) -> List[Tuple[int, int]]:
        return list(zip(self.states.tolist(), self.actions.tolist()))

    def __len__(self) -> int:
        return int(self.states.size)


@dataclass(frozen=True, eq=False)
class DemoSet:
    """
    Labelled demonstrations of one task

    Business Rules:
        - Every trajectory has exactly horizon + 1 (state, action) pairs
        - An empty set (n = 0) is allowed; it stands for a zero-shot target

    Attributes:
        task_label: Label shared by all demonstrations of the task
        states: Array of shape (n, horizon + 1)
        actions: Array of shape (n, horizon + 1)
        horizon: Truncation horizon H
        seed: Seed the rollouts were drawn with
    """
    task_label: str
    states: np.ndarray
    actions: np.ndarray
    horizon: int
    seed: int

    def __post_init__(self):
        if self.horizon < 0:
            raise ValueError(f"Horizon must be non-negative, got {self.horizon}")
        width = self.horizon + 1
        states = readonly_array(np.reshape(self.states, (-1, width)), dtype=np.int64)
        actions = readonly_array(np.reshape(self.actions, (-1, width)), dtype=np.int64)
        if states.shape != actions.shape:
            raise DimensionMismatchException("demo actions", states.shape, actions.shape)
        check_non_negative(states, actions)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "actions", actions)

    @classmethod
    def from_trajectories(
        cls,
        task_label: str,
        trajectories: Sequence[Trajectory],
        seed: int = 0,
    ) -> 'DemoSet':
        """
        Raises:
            ValueError: If trajectories is empty or lengths differ
        """
        if not trajectories:
            raise ValueError("Use DemoSet.empty for a set without trajectories")
        lengths = {len(t) for t in trajectories}
        if len(lengths) != 1:
            raise ValueError(f"Trajectories must share one length, got {sorted(lengths)}")
        return cls(
            task_label=task_label,
            states=np.stack([t.states for t in trajectories]),
            actions=np.stack([t.actions for t in trajectories]),
            horizon=lengths.pop() - 1,
            seed=seed,
        )

    @classmethod
    def empty(cls, task_label: str, horizon: int, seed: int = 0) -> 'DemoSet':
        shape = (0, horizon + 1)
        return cls(
            task_label=task_label,
            states=np.zeros(shape, dtype=np.int64),
            actions=np.zeros(shape, dtype=np.int64),
            horizon=horizon,
            seed=seed,
        )

    @classmethod
    def concatenate(cls, sets: Sequence['DemoSet'], task_label: str) -> 'DemoSet':
        """
        Stack several demo sets into one

        Args:
            sets: Demo sets sharing one horizon
            task_label: Label of the combined set

        Returns:
            DemoSet whose seed is the first set's seed

        Raises:
            ValueError: If sets is empty
            DimensionMismatchException: If horizons differ
        """
        if not sets:
            raise ValueError("Nothing to concatenate")
        horizon = sets[0].horizon
        for demo_set in sets[1:]:
            if demo_set.horizon != horizon:
                raise DimensionMismatchException("demo horizon", horizon, demo_set.horizon)
        return cls(
            task_label=task_label,
            states=np.concatenate([d.states for d in sets], axis=0),
            actions=np.concatenate([d.actions for d in sets], axis=0),
            horizon=horizon,
            seed=sets[0].seed,
        )

    def take(self, m: int) -> 'DemoSet':
        """
        First m trajectories

        Raises:
            ValueError: If m is negative or exceeds the set size
        """
        if m < 0 or m > self.n:
            raise ValueError(f"Cannot take {m} trajectories from a set of {self.n}")
        return DemoSet(
            task_label=self.task_label,
            states=self.states[:m],
            actions=self.actions[:m],
            horizon=self.horizon,
            seed=self.seed,
        )

    @property
    def n(self) -> int:
        return int(self.states.shape[0])

    @property
    def is_empty(self) -> bool:
        return self.n == 0

    @property
    def trajectories(self) -> List[Trajectory]:
        return [Trajectory(states=s, actions=a) for s, a in zip(self.states, self.actions)]

    def __iter__(self) -> Iterator[Trajectory]:
        return iter(self.trajectories)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"DemoSet(task_label={self.task_label!r}, n={self.n}, horizon={self.horizon})"
