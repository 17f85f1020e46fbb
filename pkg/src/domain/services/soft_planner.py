"""
Soft Planner Domain Service

Maximum-causal-entropy planning: soft value iteration, discounted
occupancy measures, feature expectations and causal entropy.
"""
import logging
from typing import Optional

import numpy as np
from scipy.special import entr, logsumexp

from src.shared.constants import PLANNER_MAX_ITER, PLANNER_TOL

from ..entities.soft_policy import Occupancy, SoftPolicy
from ..entities.tabular_mdp import FeatureMap, TabularMdp
from ..entities.trajectory import Trajectory
from ..exceptions.domain_exceptions import (
    DimensionMismatchException,
    PlannerConvergenceException,
    ZeroProbabilityActionException,
)
from .exact_planner import PolicyLike, as_policy_table
from .mdp_validation import validate_mdp

logger = logging.getLogger(__name__)


def _start_vector(values, n_states: int, name: str) -> np.ndarray:
    if values is None:
        return np.zeros(n_states)
    values = np.array(values, dtype=float)
    if values.shape != (n_states,):
        raise DimensionMismatchException(name, (n_states,), values.shape)
    return values


def soft_value_iteration(
    mdp: TabularMdp,
    reward=None,
    tol: float = PLANNER_TOL,
    max_iter: int = PLANNER_MAX_ITER,
    v_init: Optional[np.ndarray] = None,
) -> SoftPolicy:
    """
    Solve the softmax Bellman equations

        Q(s, a) = R(s, a) + gamma sum_s' T(s, a, s') V(s')
        V(s)    = log sum_a exp Q(s, a)

    by fixed-point iteration from V = 0 (or v_init), then read off
    pi = exp(Q - V). Every v_init reaches the same fixed point.

    Args:
        mdp: Validated MDP
        reward: R[s][a]; defaults to the MDP's reward
        tol: Sup-norm stopping tolerance on successive V iterates
        max_iter: Iteration budget
        v_init: Starting V, typically the soft values of a nearby reward

    Returns:
        SoftPolicy whose residual is |logsumexp(Q) - V| at the returned tables

    Raises:
        PlannerConvergenceException: If max_iter is exhausted
    """
    validate_mdp(mdp)
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    reward = mdp.reward_table(reward)
    gamma = mdp.discount

    v = _start_vector(v_init, mdp.n_states, "v_init")
    residual = np.inf
    for iteration in range(1, max_iter + 1):
        v_next = logsumexp(reward + gamma * (mdp.transitions @ v), axis=1)
        residual = float(np.max(np.abs(v_next - v)))
        v = v_next
        if residual <= tol:
            break
    else:
        raise PlannerConvergenceException("soft_value_iteration", max_iter, residual, tol)

    q = reward + gamma * (mdp.transitions @ v)
    v_soft = logsumexp(q, axis=1)
    pi = np.exp(q - v_soft[:, None])
    final_residual = float(np.max(np.abs(v_soft - v)))
    logger.debug(
        "soft_value_iteration converged in %d iterations (residual %.3e)",
        iteration,
        final_residual,
    )
    return SoftPolicy(pi=pi, q_soft=q, v_soft=v_soft, residual=final_residual, iterations=iteration)


def occupancy(
    mdp: TabularMdp,
    policy: PolicyLike,
    tol: float = PLANNER_TOL,
    max_iter: int = PLANNER_MAX_ITER,
    d_init: Optional[np.ndarray] = None,
) -> Occupancy:
    """
    Discounted state-action occupancy rho(s, a) = pi(a|s) d(s), where

        d = mu0 + gamma d P_pi

    is iterated from d = mu0, or from d_init when given. The stopping
    residual is the L1 norm of the last increment, which bounds its
    sup-norm and the normalisation error by tol / (1 - gamma).

    Raises:
        PlannerConvergenceException: If max_iter is exhausted
    """
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    pi = as_policy_table(policy, mdp.n_states, mdp.n_actions)
    p_pi = np.einsum("sa,sat->st", pi, mdp.transitions)
    mu0 = np.asarray(mdp.initial_dist, dtype=float)
    gamma = mdp.discount

    d = mu0.copy() if d_init is None else _start_vector(d_init, mdp.n_states, "d_init")
    residual = np.inf
    for iteration in range(1, max_iter + 1):
        d_next = mu0 + gamma * (d @ p_pi)
        residual = float(np.sum(np.abs(d_next - d)))
        d = d_next
        if residual <= tol:
            break
    else:
        raise PlannerConvergenceException("occupancy", max_iter, residual, tol)

    return Occupancy(rho=pi * d[:, None], discount=gamma, residual=residual, iterations=iteration)


def state_marginals(occ: Occupancy) -> np.ndarray:
    """sum_a rho(s, a)"""
    return occ.rho.sum(axis=1)


def feature_expectations(occ: Occupancy, features: FeatureMap) -> np.ndarray:
    """
    F = sum_{s,a} rho(s, a) phi(s, a)

    Raises:
        DimensionMismatchException: If the feature table does not match rho
    """
    if features.table.shape[:2] != occ.rho.shape:
        raise DimensionMismatchException("features", occ.rho.shape, features.table.shape[:2])
    return np.einsum("sa,sak->k", occ.rho, features.table)


def trajectory_log_likelihood(
    policy: SoftPolicy,
    traj: Trajectory,
    strict: bool = False,
) -> float:
    """
    Causal log-likelihood sum_t log pi(a_t | s_t)

    An action with probability exactly 0 yields -inf (logged), or raises in
    strict mode.

    Raises:
        ZeroProbabilityActionException: In strict mode, on a zero-probability step
        DimensionMismatchException: If an index is out of range
    """
    pi = policy.pi
    if traj.states.max() >= pi.shape[0] or traj.actions.max() >= pi.shape[1]:
        raise DimensionMismatchException(
            "trajectory indices", pi.shape, (int(traj.states.max()), int(traj.actions.max()))
        )
    probs = pi[traj.states, traj.actions]
    zero = np.flatnonzero(probs == 0.0)
    if zero.size:
        step = int(zero[0])
        state, action = int(traj.states[step]), int(traj.actions[step])
        if strict:
            raise ZeroProbabilityActionException(state, action, step)
        logger.warning(
            "Trajectory takes zero-probability action %d in state %d at step %d",
            action,
            state,
            step,
        )
        return float("-inf")
    return float(np.sum(np.log(probs)))


def causal_entropy(
    mdp: TabularMdp,
    policy: PolicyLike,
    tol: float = PLANNER_TOL,
    max_iter: int = PLANNER_MAX_ITER,
) -> float:
    """Discounted causal entropy sum_{s,a} rho(s, a) (-log pi(a|s))."""
    pi = as_policy_table(policy, mdp.n_states, mdp.n_actions)
    d = state_marginals(occupancy(mdp, pi, tol=tol, max_iter=max_iter))
    return float(d @ entr(pi).sum(axis=1))


def expected_log_likelihood(policy: SoftPolicy, occ: Occupancy) -> float:
    """
    Occupancy-weighted causal log-likelihood sum rho(s, a) log pi(a|s)

    With occ taken from demonstrations' visitation this is the discounted
    log-likelihood of the demonstrations under policy.
    """
    if occ.rho.shape != policy.pi.shape:
        raise DimensionMismatchException("occupancy", policy.pi.shape, occ.rho.shape)
    return float(np.sum(occ.rho * policy.log_pi))
