"""
Meta State Entity

Reptile meta-initialisation of the reward weights and its history.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .tabular_mdp import readonly_array


@dataclass(frozen=True, eq=False)
class MetaStep:
    """One outer step: the task sampled, where the inner loop started and ended."""
    outer_step: int
    task_label: str
    start_phi: np.ndarray
    end_theta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "start_phi", readonly_array(self.start_phi))
        object.__setattr__(self, "end_theta", readonly_array(self.end_theta))


@dataclass(frozen=True, eq=False)
class MetaState:
    """
    Reptile meta-initialisation

    Business Rules:
        - phi finite
        - 0 <= outer_lr <= 1
        - inner_steps >= 1

    Attributes:
        phi: Meta-initialisation of the reward weights
        outer_lr: Reptile step size alpha
        inner_steps: Inner gradient steps N per outer step
        inner_lr: Inner gradient step size
        outer_iters: Outer steps T taken
        seed: Task-sampling seed
        history: One MetaStep per outer step
    """
    phi: np.ndarray
    outer_lr: float = 1.0
    inner_steps: int = 1
    inner_lr: float = 0.0
    outer_iters: int = 0
    seed: Optional[int] = None
    history: Tuple[MetaStep, ...] = ()

    def __post_init__(self):
        phi = readonly_array(self.phi)
        if phi.ndim != 1 or not np.all(np.isfinite(phi)):
            raise ValueError("phi must be a finite vector")
        if not 0.0 <= self.outer_lr <= 1.0:
            raise ValueError(f"Outer learning rate must lie in [0, 1], got {self.outer_lr}")
        if self.inner_steps < 1:
            raise ValueError(f"Inner steps must be at least 1, got {self.inner_steps}")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "history", tuple(self.history))

    @property
    def k(self) -> int:
        return self.phi.shape[0]


def zero_meta_state(k: int) -> MetaState:
    """Meta state at phi = 0, the baseline initialisation for finetuning."""
    return MetaState(phi=np.zeros(k))
