"""
Tabular MDP Entity

Finite MDP with a known transition tensor, plus the per (state, action)
feature map a linear reward is expressed in.
"""
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from ..exceptions.domain_exceptions import DimensionMismatchException
from ..value_objects.feature_kind import FeatureKind


def readonly_array(values, dtype=float) -> np.ndarray:
    """Copy values into a read-only numpy array."""
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


def broadcast_state_reward(state_reward, n_actions: int) -> np.ndarray:
    """
    Expand a per-state reward vector into an action-constant R[s][a] table.

    Args:
        state_reward: Vector of length n_states
        n_actions: Number of actions

    Returns:
        Array of shape (n_states, n_actions)
    """
    state_reward = np.asarray(state_reward, dtype=float)
    return np.repeat(state_reward[:, None], n_actions, axis=1)


@dataclass(frozen=True, eq=False)
class TabularMdp:
    """
    Finite MDP (S, A, T, gamma, mu0, R)

    Business Rules:
        - T[s][a] is a probability distribution over next states
        - mu0 is a probability distribution over states
        - 0 <= gamma < 1
        - reward is optional; planners may be handed a reward table directly

    The invariants are checked by MdpValidator, not at construction, so
    malformed MDPs can be built and rejected with a precise error.

    Attributes:
        n_states: Number of states
        n_actions: Number of actions
        transitions: Array T of shape (n_states, n_actions, n_states)
        discount: Discount factor gamma
        initial_dist: Array mu0 of shape (n_states,)
        reward: Optional array R of shape (n_states, n_actions)
    """
    n_states: int
    n_actions: int
    transitions: np.ndarray
    discount: float
    initial_dist: np.ndarray
    reward: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.n_states < 1 or self.n_actions < 1:
            raise ValueError(
                f"MDP needs at least one state and one action, got "
                f"n_states={self.n_states}, n_actions={self.n_actions}"
            )
        object.__setattr__(self, "transitions", readonly_array(self.transitions))
        object.__setattr__(self, "initial_dist", readonly_array(self.initial_dist))
        object.__setattr__(self, "discount", float(self.discount))
        if self.reward is not None:
            object.__setattr__(self, "reward", readonly_array(self.reward))

    @classmethod
    def from_state_reward(
        cls,
        transitions,
        discount: float,
        initial_dist,
        state_reward,
    ) -> 'TabularMdp':
        """Build an MDP whose reward depends on the state only."""
        transitions = np.asarray(transitions, dtype=float)
        n_states, n_actions = transitions.shape[0], transitions.shape[1]
        return cls(
            n_states=n_states,
            n_actions=n_actions,
            transitions=transitions,
            discount=discount,
            initial_dist=initial_dist,
            reward=broadcast_state_reward(state_reward, n_actions),
        )

    def with_reward(self, reward) -> 'TabularMdp':
        """Return a copy of this MDP carrying the given reward table."""
        return replace(self, reward=np.asarray(reward, dtype=float))

    def reward_table(self, reward=None) -> np.ndarray:
        """
        Resolve the reward to plan with.

        Args:
            reward: Explicit R[s][a]; falls back to the MDP's own reward

        Returns:
            Array of shape (n_states, n_actions)

        Raises:
            ValueError: If neither an explicit nor a stored reward exists
            DimensionMismatchException: If the reward has the wrong shape
        """
        if reward is None:
            reward = self.reward
        if reward is None:
            raise ValueError("No reward given and the MDP carries none")
        reward = np.asarray(reward, dtype=float)
        if reward.shape != (self.n_states, self.n_actions):
            raise DimensionMismatchException(
                "reward", (self.n_states, self.n_actions), reward.shape
            )
        return reward

    @property
    def horizon_scale(self) -> float:
        """Total discounted mass 1 / (1 - gamma)."""
        return 1.0 / (1.0 - self.discount)

    def __repr__(self) -> str:
        return (
            f"TabularMdp(n_states={self.n_states}, n_actions={self.n_actions}, "
            f"discount={self.discount})"
        )


@dataclass(frozen=True, eq=False)
class FeatureMap:
    """
    Per (state, action) feature vectors phi(s, a) in R^K

    Business Rules:
        - All entries finite
        - The reward for weights theta is R(s, a) = theta . phi(s, a)

    Attributes:
        table: Array of shape (n_states, n_actions, K)
        kind: Representation the table was built from, when known
    """
    table: np.ndarray
    kind: Optional[FeatureKind] = None

    def __post_init__(self):
        table = readonly_array(self.table)
        if table.ndim != 3:
            raise ValueError(f"Feature table must be 3-dimensional, got shape {table.shape}")
        if not np.all(np.isfinite(table)):
            raise ValueError("Feature table contains non-finite entries")
        object.__setattr__(self, "table", table)

    @property
    def k(self) -> int:
        """Feature dimension K"""
        return self.table.shape[2]

    @property
    def n_states(self) -> int:
        return self.table.shape[0]

    @property
    def n_actions(self) -> int:
        return self.table.shape[1]

    def reward(self, theta) -> np.ndarray:
        """Linear reward table theta . phi(s, a)"""
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (self.k,):
            raise DimensionMismatchException("theta", (self.k,), theta.shape)
        return self.table @ theta

    def check_compatible(self, mdp: TabularMdp) -> None:
        """
        Raises:
            DimensionMismatchException: If the table does not fit the MDP
        """
        expected = (mdp.n_states, mdp.n_actions)
        if self.table.shape[:2] != expected:
            raise DimensionMismatchException("features", expected, self.table.shape[:2])

    def __repr__(self) -> str:
        return f"FeatureMap(shape={self.table.shape}, kind={self.kind})"
