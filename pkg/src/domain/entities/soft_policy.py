"""
Soft Policy and Occupancy Entities

Outputs of the maximum-causal-entropy planner.
"""
from dataclasses import dataclass

import numpy as np

from .tabular_mdp import readonly_array


@dataclass(frozen=True, eq=False)
class SoftPolicy:
    """
    Stochastic policy pi(a|s) with its soft value tables

    Business Rules:
        - Each pi[s] is a probability distribution
        - log pi[s][a] = Q_soft[s][a] - V_soft[s]
        - V_soft[s] = logsumexp_a Q_soft[s][a] within the reported residual

    Attributes:
        pi: Array of shape (n_states, n_actions)
        q_soft: Array of shape (n_states, n_actions)
        v_soft: Array of shape (n_states,)
        residual: Final sup-norm fixed-point residual
        iterations: Backups performed
    """
    pi: np.ndarray
    q_soft: np.ndarray
    v_soft: np.ndarray
    residual: float
    iterations: int = 0

    def __post_init__(self):
        object.__setattr__(self, "pi", readonly_array(self.pi))
        object.__setattr__(self, "q_soft", readonly_array(self.q_soft))
        object.__setattr__(self, "v_soft", readonly_array(self.v_soft))

    @property
    def log_pi(self) -> np.ndarray:
        """log pi computed from the soft tables, finite everywhere."""
        return self.q_soft - self.v_soft[:, None]

    @property
    def n_states(self) -> int:
        return self.pi.shape[0]

    @property
    def n_actions(self) -> int:
        return self.pi.shape[1]


@dataclass(frozen=True, eq=False)
class Occupancy:
    """
    Discounted state-action visitation rho(s, a) from mu0

    Business Rules:
        - rho >= 0
        - sum rho = 1 / (1 - gamma)
    """
    rho: np.ndarray
    discount: float
    residual: float = 0.0
    iterations: int = 0

    def __post_init__(self):
        object.__setattr__(self, "rho", readonly_array(self.rho))

    @property
    def total(self) -> float:
        return float(self.rho.sum())

    @property
    def expected_total(self) -> float:
        return 1.0 / (1.0 - self.discount)
