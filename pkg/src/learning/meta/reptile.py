"""
Reptile meta-initialisation with an exact MCE IRL inner loop

Per outer step t: sample a task, run N plain gradient-ascent steps on its
MCE objective from theta_0 = phi_{t-1}, then move

    phi_t = (1 - alpha) phi_{t-1} + alpha theta_N
"""
import logging
from typing import Callable, List, Optional

import numpy as np

from src.domain.entities.meta_state import MetaState, MetaStep
from src.domain.entities.tabular_mdp import FeatureMap, TabularMdp
from src.domain.entities.trajectory import DemoSet
from src.domain.exceptions.domain_exceptions import IrlDomainException, TaskFailedException
from src.domain.services.demonstrations import empirical_feature_counts
from src.shared.constants import PLANNER_MAX_ITER, PLANNER_TOL

from ..irl.gradient import mce_objective_and_gradient
from .task_sampler import MetaTask, TaskSampler

logger = logging.getLogger(__name__)

MetaProgressCallback = Callable[[MetaStep, np.ndarray], None]


def inner_loop(
    mdp: TabularMdp,
    features: FeatureMap,
    demo_counts: np.ndarray,
    theta0: np.ndarray,
    lr: float,
    steps: int,
    tol: float = PLANNER_TOL,
    max_iter: int = PLANNER_MAX_ITER,
) -> np.ndarray:
    """`steps` plain steps theta <- theta + lr * (phi(D) - F(pi_theta))"""
    theta = np.array(theta0, dtype=float)
    evaluation = None
    for _ in range(steps):
        evaluation = mce_objective_and_gradient(
            mdp, features, theta, demo_counts, tol, max_iter, warm=evaluation
        )
        theta = theta + lr * evaluation.gradient
    return theta


def reptile_meta(
    sampler: TaskSampler,
    inner_lr: float,
    inner_steps: int,
    outer_lr: float,
    outer_iters: int,
    phi0: Optional[np.ndarray] = None,
    planner_tol: float = PLANNER_TOL,
    planner_max_iter: int = PLANNER_MAX_ITER,
    progress: Optional[MetaProgressCallback] = None,
) -> MetaState:
    """
    Meta-train a reward initialisation

    Args:
        sampler: Seeded task distribution
        inner_lr: Inner gradient step size
        inner_steps: Inner steps N (>= 1)
        outer_lr: Reptile step alpha in [0, 1]
        outer_iters: Outer steps T (>= 1)
        phi0: Initial phi; zeros by default

    Returns:
        MetaState with phi_T and one history entry per outer step

    Raises:
        TaskFailedException: If the inner loop fails on a sampled task
    """
    if outer_iters < 1 or inner_steps < 1:
        raise ValueError(
            f"outer_iters and inner_steps must be at least 1, got {outer_iters} and {inner_steps}"
        )
    if not 0.0 <= outer_lr <= 1.0:
        raise ValueError(f"Outer learning rate must lie in [0, 1], got {outer_lr}")

    phi = np.zeros(sampler.k) if phi0 is None else np.array(phi0, dtype=float)
    history: List[MetaStep] = []
    for step in range(1, outer_iters + 1):
        task: MetaTask = sampler.sample()
        try:
            theta_n = inner_loop(
                task.mdp, task.features, task.demo_counts, phi,
                inner_lr, inner_steps, planner_tol, planner_max_iter,
            )
        except IrlDomainException as e:
            raise TaskFailedException(task.label, e) from e

        meta_step = MetaStep(outer_step=step, task_label=task.label, start_phi=phi, end_theta=theta_n)
        history.append(meta_step)
        phi = (1.0 - outer_lr) * phi + outer_lr * theta_n
        logger.debug("Reptile step %d on task %s: |phi| = %.4g", step, task.label, np.linalg.norm(phi))
        if progress is not None:
            progress(meta_step, phi)

    return MetaState(
        phi=phi,
        outer_lr=outer_lr,
        inner_steps=inner_steps,
        inner_lr=inner_lr,
        outer_iters=outer_iters,
        seed=sampler.seed,
        history=tuple(history),
    )


def finetune(
    meta: MetaState,
    mdp: TabularMdp,
    features: FeatureMap,
    demos: DemoSet,
    steps: int,
    lr: float,
    planner_tol: float = PLANNER_TOL,
    planner_max_iter: int = PLANNER_MAX_ITER,
) -> np.ndarray:
    """
    `steps` MCE gradient-ascent steps from theta_0 = phi

    Raises:
        EmptyDemoSetException: If demos is empty and steps > 0
    """
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    if steps == 0:
        return np.array(meta.phi, dtype=float)
    demo_counts = empirical_feature_counts(demos, features, mdp.discount)
    return inner_loop(mdp, features, demo_counts, meta.phi, lr, steps, planner_tol, planner_max_iter)
