"""
Fit Options

Hyperparameters of exact gradient-ascent MCE IRL.
"""
from dataclasses import dataclass

from src.shared.constants import (
    DEFAULT_DIVERGENCE_PATIENCE,
    DEFAULT_FIT_MAX_ITER,
    DEFAULT_GRAD_TOL,
    DEFAULT_LEARNING_RATE,
    PLANNER_MAX_ITER,
    PLANNER_TOL,
)


@dataclass(frozen=True)
class FitOptions:
    """
    Gradient-ascent settings

    Business Rules:
        - Constant learning rate per task, halved when a step lowers the
          objective (if step_halving); the lowering step is rejected
        - Stops when every task's sup-norm gradient is <= grad_tol or after
          max_iter iterations
        - divergence_patience consecutive lowering steps abort the fit

    Attributes:
        learning_rate: Initial step size
        max_iter: Iteration budget
        grad_tol: Sup-norm gradient tolerance (0 disables early stopping)
        step_halving: Halve the step and reject it when the objective drops
        divergence_patience: Consecutive objective drops that abort the fit
        planner_tol: Tolerance of the inner soft planner
        planner_max_iter: Iteration budget of the inner soft planner
    """
    learning_rate: float = DEFAULT_LEARNING_RATE
    max_iter: int = DEFAULT_FIT_MAX_ITER
    grad_tol: float = DEFAULT_GRAD_TOL
    step_halving: bool = True
    divergence_patience: int = DEFAULT_DIVERGENCE_PATIENCE
    planner_tol: float = PLANNER_TOL
    planner_max_iter: int = PLANNER_MAX_ITER

    def __post_init__(self):
        if self.learning_rate < 0:
            raise ValueError(f"Learning rate must be non-negative, got {self.learning_rate}")
        if self.max_iter < 0:
            raise ValueError(f"max_iter must be non-negative, got {self.max_iter}")
        if self.grad_tol < 0:
            raise ValueError(f"grad_tol must be non-negative, got {self.grad_tol}")
        if self.divergence_patience < 1:
            raise ValueError(
                f"divergence_patience must be at least 1, got {self.divergence_patience}"
            )
        if self.planner_tol <= 0 or self.planner_max_iter < 1:
            raise ValueError("Planner tolerance must be positive and max_iter at least 1")
