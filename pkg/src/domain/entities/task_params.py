"""
Task Parameter Entities

Learned reward weights and the report of the fit that produced them.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .tabular_mdp import readonly_array


@dataclass(frozen=True, eq=False)
class TaskParams:
    """
    Per-task reward weights theta_i and their mean

    Business Rules:
        - mean is always the arithmetic mean of thetas (derived, never stored)
        - lam >= 0

    Attributes:
        task_labels: One label per row of thetas
        thetas: Array of shape (m, K)
        lam: Regularisation strength lambda
        feature_kind: Feature representation name, when known
        seed: Experiment seed, when known
    """
    task_labels: Tuple[str, ...]
    thetas: np.ndarray
    lam: float = 0.0
    feature_kind: Optional[str] = None
    seed: Optional[int] = None

    def __post_init__(self):
        thetas = readonly_array(np.atleast_2d(self.thetas))
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "task_labels", tuple(self.task_labels))
        if len(self.task_labels) != thetas.shape[0]:
            raise ValueError(
                f"{len(self.task_labels)} labels for {thetas.shape[0]} weight vectors"
            )
        if self.lam < 0:
            raise ValueError(f"Lambda must be non-negative, got {self.lam}")

    @property
    def mean(self) -> np.ndarray:
        return self.thetas.mean(axis=0)

    @property
    def m(self) -> int:
        return self.thetas.shape[0]

    @property
    def k(self) -> int:
        return self.thetas.shape[1]

    def theta_for(self, task_label: str) -> np.ndarray:
        """
        Raises:
            KeyError: If the label is unknown
        """
        try:
            index = self.task_labels.index(task_label)
        except ValueError:
            raise KeyError(f"Unknown task label: {task_label}")
        return self.thetas[index]


@dataclass
class FitReport:
    """
    Diagnostics of a gradient-ascent fit

    Attributes:
        iterations: Gradient iterations run
        grad_norms: Final sup-norm of each task's gradient
        loss_trace: Objective per iteration, index 0 is the initial value
        task_loss_traces: Array (iterations + 1, m) of per-task objectives
        converged: Whether every task reached grad_tol
        wall_clock_seconds: Elapsed time of the fit
        metadata: Free-form extra fields
    """
    iterations: int
    grad_norms: Tuple[float, ...]
    loss_trace: np.ndarray
    task_loss_traces: np.ndarray
    converged: bool
    wall_clock_seconds: float = 0.0
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def final_loss(self) -> float:
        return float(self.loss_trace[-1]) if len(self.loss_trace) else float("nan")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "iterations": self.iterations,
            "grad_norms": [float(g) for g in self.grad_norms],
            "final_loss": self.final_loss,
            "converged": self.converged,
            "wall_clock_seconds": self.wall_clock_seconds,
            **self.metadata,
        }
