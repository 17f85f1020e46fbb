"""
MCE IRL objective and gradient

For reward R = theta . phi the ascended objective is the dual

    L(theta) = theta . phi(D) - mu0 . V_soft_theta

whose exact gradient is phi(D) - F(pi_theta). When phi(D) comes from a
visitation measure satisfying the occupancy flow equations (in particular
the expert's exact occupancy), L equals that measure's discounted causal
log-likelihood sum rho log pi_theta.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.domain.entities.soft_policy import SoftPolicy
from src.domain.entities.tabular_mdp import FeatureMap, TabularMdp
from src.domain.entities.trajectory import DemoSet
from src.domain.exceptions.domain_exceptions import DimensionMismatchException
from src.domain.services.demonstrations import empirical_feature_counts
from src.domain.services.soft_planner import (
    feature_expectations,
    occupancy,
    soft_value_iteration,
    state_marginals,
)
from src.shared.constants import PLANNER_MAX_ITER, PLANNER_TOL


@dataclass(frozen=True, eq=False)
class GradientEvaluation:
    """
    Objective, gradient and policy at one theta

    policy.v_soft and state_visitation seed the planners of the next
    evaluation at a nearby theta.
    """
    objective: float
    gradient: np.ndarray
    policy: Optional[SoftPolicy] = None
    state_visitation: Optional[np.ndarray] = None


@dataclass(frozen=True, eq=False)
class IrlTask:
    """
    One task of a fit: its MDP, features and demonstration counts

    demo_counts is None for a zero-shot task (no demonstrations), whose
    data term vanishes.
    """
    label: str
    mdp: TabularMdp
    features: FeatureMap
    demo_counts: Optional[np.ndarray]
    n_demos: int = 0

    def __post_init__(self):
        self.features.check_compatible(self.mdp)
        if self.demo_counts is not None:
            counts = np.asarray(self.demo_counts, dtype=float)
            if counts.shape != (self.features.k,):
                raise DimensionMismatchException("demo_counts", (self.features.k,), counts.shape)
            object.__setattr__(self, "demo_counts", counts)

    @classmethod
    def from_demos(cls, mdp: TabularMdp, features: FeatureMap, demos: DemoSet) -> 'IrlTask':
        counts = None
        if not demos.is_empty:
            counts = empirical_feature_counts(demos, features, mdp.discount)
        return cls(
            label=demos.task_label,
            mdp=mdp,
            features=features,
            demo_counts=counts,
            n_demos=demos.n,
        )

    @property
    def is_zero_shot(self) -> bool:
        return self.demo_counts is None


def _check_theta(features: FeatureMap, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (features.k,):
        raise DimensionMismatchException("theta", (features.k,), theta.shape)
    return theta


def mce_objective_and_gradient(
    mdp: TabularMdp,
    features: FeatureMap,
    theta,
    demo_counts,
    tol: float = PLANNER_TOL,
    max_iter: int = PLANNER_MAX_ITER,
    warm: Optional[GradientEvaluation] = None,
) -> GradientEvaluation:
    """
    Evaluate L(theta) and its gradient with one soft planning pass

    warm, an evaluation at a nearby theta, starts both planners from its
    soft values and state visitation. The result agrees with a cold start
    to within the planner tolerance.

    Raises:
        PlannerConvergenceException: If a planner does not converge
        DimensionMismatchException: If theta or demo_counts have the wrong size
    """
    features.check_compatible(mdp)
    theta = _check_theta(features, theta)
    demo_counts = np.asarray(demo_counts, dtype=float)
    if demo_counts.shape != (features.k,):
        raise DimensionMismatchException("demo_counts", (features.k,), demo_counts.shape)

    v_init = d_init = None
    if warm is not None and warm.policy is not None:
        v_init, d_init = warm.policy.v_soft, warm.state_visitation

    policy = soft_value_iteration(mdp, features.reward(theta), tol=tol, max_iter=max_iter, v_init=v_init)
    occ = occupancy(mdp, policy, tol=tol, max_iter=max_iter, d_init=d_init)
    expected = feature_expectations(occ, features)
    objective = float(theta @ demo_counts - mdp.initial_dist @ policy.v_soft)
    return GradientEvaluation(
        objective=objective,
        gradient=demo_counts - expected,
        policy=policy,
        state_visitation=state_marginals(occ),
    )


def mce_gradient(
    mdp: TabularMdp,
    features: FeatureMap,
    theta,
    demo_counts,
    tol: float = PLANNER_TOL,
    max_iter: int = PLANNER_MAX_ITER,
) -> np.ndarray:
    """phi(D) - F(pi_theta)"""
    return mce_objective_and_gradient(mdp, features, theta, demo_counts, tol, max_iter).gradient


def mce_objective(
    mdp: TabularMdp,
    features: FeatureMap,
    theta,
    demo_counts,
    tol: float = PLANNER_TOL,
    max_iter: int = PLANNER_MAX_ITER,
) -> float:
    """theta . phi(D) - mu0 . V_soft_theta"""
    return mce_objective_and_gradient(mdp, features, theta, demo_counts, tol, max_iter).objective


def evaluate_task(
    task: IrlTask,
    theta,
    tol: float,
    max_iter: int,
    warm: Optional[GradientEvaluation] = None,
) -> GradientEvaluation:
    """Data term of one task; zero for a zero-shot task."""
    if task.is_zero_shot:
        return GradientEvaluation(objective=0.0, gradient=np.zeros(task.features.k))
    return mce_objective_and_gradient(
        task.mdp, task.features, theta, task.demo_counts, tol, max_iter, warm=warm
    )
