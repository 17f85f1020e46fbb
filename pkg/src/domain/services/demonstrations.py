"""
Demonstrations Domain Service

Expert rollouts and the empirical discounted feature counts of demo sets.
"""
import logging

import numpy as np

from src.shared.utils.seeding import make_rng

from ..entities.tabular_mdp import FeatureMap, TabularMdp
from ..entities.trajectory import DemoSet
from ..exceptions.domain_exceptions import DimensionMismatchException, EmptyDemoSetException
from .exact_planner import PolicyLike, as_policy_table

logger = logging.getLogger(__name__)


def _draw(cdf_rows: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Inverse-CDF draw of one index per row of cumulative probabilities."""
    u = rng.random(cdf_rows.shape[0]) * cdf_rows[:, -1]
    return np.sum(cdf_rows <= u[:, None], axis=1)


def sample_trajectories(
    mdp: TabularMdp,
    policy: PolicyLike,
    horizon: int,
    n: int,
    seed: int,
    task_label: str = "",
) -> DemoSet:
    """
    Roll out n independent trajectories of horizon + 1 steps

    s_0 ~ mu0, a_t ~ pi(.|s_t), s_{t+1} ~ T(s_t, a_t). All rollouts advance
    together, drawing from one PCG64 stream in a fixed order, so the result
    is a pure function of the seed.

    Args:
        mdp: MDP supplying dynamics and mu0
        policy: SoftPolicy, pi table or deterministic action vector
        horizon: Last time index H (>= 1)
        n: Number of trajectories (>= 1)
        seed: Generator seed
        task_label: Label stored on the DemoSet

    Returns:
        DemoSet with states and actions of shape (n, horizon + 1)
    """
    if horizon < 1:
        raise ValueError(f"Horizon must be at least 1, got {horizon}")
    if n < 1:
        raise ValueError(f"Number of trajectories must be at least 1, got {n}")

    pi = as_policy_table(policy, mdp.n_states, mdp.n_actions)
    pi_cdf = np.cumsum(pi, axis=1)
    transition_cdf = np.cumsum(mdp.transitions, axis=2)
    start_cdf = np.broadcast_to(np.cumsum(mdp.initial_dist), (n, mdp.n_states))
    rng = make_rng(seed)

    states = np.empty((n, horizon + 1), dtype=np.int64)
    actions = np.empty((n, horizon + 1), dtype=np.int64)
    s = _draw(start_cdf, rng)
    for t in range(horizon + 1):
        a = _draw(pi_cdf[s], rng)
        states[:, t] = s
        actions[:, t] = a
        if t < horizon:
            s = _draw(transition_cdf[s, a], rng)

    logger.debug("Sampled %d trajectories of horizon %d (seed %d)", n, horizon, seed)
    return DemoSet(task_label=task_label, states=states, actions=actions, horizon=horizon, seed=seed)


def discounted_visitation_counts(
    demos: DemoSet,
    n_states: int,
    n_actions: int,
    discount: float,
) -> np.ndarray:
    """
    Mean discounted visitation (1/N) sum_j sum_t gamma^t [s_t, a_t = s, a]

    Raises:
        EmptyDemoSetException: If demos has no trajectories
        DimensionMismatchException: If an index is out of range
    """
    if demos.is_empty:
        raise EmptyDemoSetException(demos.task_label)
    if demos.states.max() >= n_states or demos.actions.max() >= n_actions:
        raise DimensionMismatchException(
            "demo indices",
            (n_states, n_actions),
            (int(demos.states.max()) + 1, int(demos.actions.max()) + 1),
        )
    weights = np.broadcast_to(discount ** np.arange(demos.horizon + 1), demos.states.shape)
    flat = demos.states * n_actions + demos.actions
    counts = np.bincount(flat.ravel(), weights=weights.ravel(), minlength=n_states * n_actions)
    return counts.reshape(n_states, n_actions) / demos.n


def empirical_feature_counts(demos: DemoSet, features: FeatureMap, discount: float) -> np.ndarray:
    """
    Mean discounted feature count phi(D) = (1/N) sum_j sum_t gamma^t phi(s_t, a_t)

    Raises:
        EmptyDemoSetException: If demos has no trajectories
    """
    counts = discounted_visitation_counts(demos, features.n_states, features.n_actions, discount)
    return np.einsum("sa,sak->k", counts, features.table)


def trajectory_returns(demos: DemoSet, reward, discount: float = 1.0) -> np.ndarray:
    """Return sum_t gamma^t R(s_t, a_t) of every trajectory."""
    reward = np.asarray(reward, dtype=float)
    weights = discount ** np.arange(demos.horizon + 1)
    return reward[demos.states, demos.actions] @ weights
