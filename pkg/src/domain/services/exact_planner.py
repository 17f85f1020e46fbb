"""
Exact Planner Domain Service

Hard-max value iteration, greedy policies and exact policy evaluation.
These produce the oracle values every learned policy is compared against.
"""
import logging
from typing import Tuple, Union

import numpy as np
from scipy import linalg

from src.shared.constants import PLANNER_MAX_ITER, PLANNER_TOL, POLICY_EVAL_RESIDUAL

from ..entities.soft_policy import SoftPolicy
from ..entities.tabular_mdp import TabularMdp
from ..exceptions.domain_exceptions import (
    DimensionMismatchException,
    PlannerConvergenceException,
    SingularSystemException,
)
from .mdp_validation import validate_mdp

logger = logging.getLogger(__name__)

PolicyLike = Union[SoftPolicy, np.ndarray]


def deterministic_to_stochastic(policy, n_actions: int) -> np.ndarray:
    """
    One-hot pi table for a deterministic policy

    Args:
        policy: Integer action per state
        n_actions: Number of actions

    Returns:
        Array of shape (n_states, n_actions)
    """
    policy = np.asarray(policy, dtype=np.int64)
    return np.eye(n_actions)[policy]


def as_policy_table(policy: PolicyLike, n_states: int, n_actions: int) -> np.ndarray:
    """
    Normalise any policy representation to a pi[s][a] table

    Accepts a SoftPolicy, a stochastic table, or a deterministic action vector.

    Raises:
        DimensionMismatchException: If the policy does not fit the MDP
    """
    if isinstance(policy, SoftPolicy):
        table = policy.pi
    else:
        table = np.asarray(policy)
        if table.ndim == 1 and np.issubdtype(table.dtype, np.integer):
            if table.shape != (n_states,):
                raise DimensionMismatchException("policy", (n_states,), table.shape)
            return deterministic_to_stochastic(table, n_actions)
        table = table.astype(float)
    if table.shape != (n_states, n_actions):
        raise DimensionMismatchException("policy", (n_states, n_actions), table.shape)
    return table


def value_iteration(
    mdp: TabularMdp,
    reward=None,
    tol: float = PLANNER_TOL,
    max_iter: int = PLANNER_MAX_ITER,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Optimal values by hard-max value iteration

    Args:
        mdp: Validated MDP
        reward: R[s][a]; defaults to the MDP's reward
        tol: Sup-norm stopping tolerance on successive value vectors
        max_iter: Iteration budget

    Returns:
        Tuple (V*, Q*) with Q* = R + gamma T V*

    Raises:
        PlannerConvergenceException: If max_iter is exhausted
    """
    validate_mdp(mdp)
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    reward = mdp.reward_table(reward)
    gamma = mdp.discount

    v = np.zeros(mdp.n_states)
    residual = np.inf
    for iteration in range(1, max_iter + 1):
        v_next = (reward + gamma * (mdp.transitions @ v)).max(axis=1)
        residual = float(np.max(np.abs(v_next - v)))
        v = v_next
        if residual <= tol:
            break
    else:
        raise PlannerConvergenceException("value_iteration", max_iter, residual, tol)

    logger.debug("value_iteration converged in %d iterations (residual %.3e)", iteration, residual)
    q = reward + gamma * (mdp.transitions @ v)
    return v, q


def greedy_policy(q) -> np.ndarray:
    """argmax_a Q(s, a) per state; ties go to the lowest action index."""
    return np.argmax(np.asarray(q, dtype=float), axis=1)


def policy_evaluation(mdp: TabularMdp, reward, policy: PolicyLike) -> np.ndarray:
    """
    Exact V^pi from the linear system (I - gamma P_pi) V = r_pi

    Raises:
        SingularSystemException: If the solve fails or misses the residual bound
    """
    reward = mdp.reward_table(reward)
    pi = as_policy_table(policy, mdp.n_states, mdp.n_actions)
    p_pi = np.einsum("sa,sat->st", pi, mdp.transitions)
    r_pi = np.einsum("sa,sa->s", pi, reward)
    system = np.eye(mdp.n_states) - mdp.discount * p_pi

    try:
        v = linalg.solve(system, r_pi)
        residual = np.max(np.abs(system @ v - r_pi))
        if residual > POLICY_EVAL_RESIDUAL:
            # one step of iterative refinement
            v = v + linalg.solve(system, r_pi - system @ v)
            residual = np.max(np.abs(system @ v - r_pi))
    except linalg.LinAlgError as e:
        raise SingularSystemException(str(e)) from e

    if not residual <= POLICY_EVAL_RESIDUAL:
        raise SingularSystemException(f"residual {residual:.3e} after refinement")
    return v


def policy_value(mdp: TabularMdp, reward, policy: PolicyLike) -> float:
    """Expected discounted return sum_t gamma^t R from mu0."""
    return float(mdp.initial_dist @ policy_evaluation(mdp, reward, policy))


def finite_horizon_return(
    mdp: TabularMdp,
    reward,
    policy: PolicyLike,
    horizon: int,
    discount: float = 1.0,
) -> float:
    """
    Expected return over steps 0..horizon by propagating the state distribution

    Matches the mean return of rollouts truncated at the same horizon.
    """
    reward = mdp.reward_table(reward)
    pi = as_policy_table(policy, mdp.n_states, mdp.n_actions)
    p_pi = np.einsum("sa,sat->st", pi, mdp.transitions)
    r_pi = np.einsum("sa,sa->s", pi, reward)

    dist = np.array(mdp.initial_dist, dtype=float)
    total = 0.0
    weight = 1.0
    for _ in range(horizon + 1):
        total += weight * float(dist @ r_pi)
        dist = dist @ p_pi
        weight *= discount
    return total
