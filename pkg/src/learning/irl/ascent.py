"""
Synchronous gradient ascent shared by every MCE IRL fit.

Each iteration recomputes the mean theta_bar of the current iterates and
moves every task along

    phi(D_i) - F(pi_theta_i) - lam (theta_i - theta_bar)

A single-task fit is the m = 1, lam = 0 case of the same loop.
"""
import logging
import time
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from src.domain.entities.task_params import FitReport
from src.domain.exceptions.domain_exceptions import (
    DimensionMismatchException,
    FitDivergenceException,
)

from .fit_options import FitOptions
from .gradient import GradientEvaluation, IrlTask, evaluate_task

logger = logging.getLogger(__name__)

ProgressCallback = Callable[[int, np.ndarray, np.ndarray, float], None]


def regularised_objective(objective: float, theta: np.ndarray, mean: np.ndarray, lam: float) -> float:
    """Per-task objective minus 0.5 lam ||theta - theta_bar||^2"""
    diff = theta - mean
    return objective - 0.5 * lam * float(diff @ diff)


def total_objective(objectives: Sequence[float], thetas: np.ndarray, lam: float) -> float:
    """sum_i L_i - 0.5 lam sum_i ||theta_i - theta_bar||^2"""
    diff = thetas - thetas.mean(axis=0)
    return float(np.sum(objectives)) - 0.5 * lam * float(np.sum(diff * diff))


def run_gradient_ascent(
    tasks: Sequence[IrlTask],
    lam: float,
    options: FitOptions,
    init: Optional[np.ndarray] = None,
    progress: Optional[ProgressCallback] = None,
) -> Tuple[np.ndarray, FitReport]:
    """
    Fit one weight vector per task

    Args:
        tasks: Tasks sharing one feature dimension
        lam: Shared-mean regularisation strength (>= 0)
        options: Step size, budgets and divergence handling
        init: Initial thetas of shape (m, K); zeros by default
        progress: Called after every iteration with
            (iteration, thetas, grad_norms, total objective)

    Returns:
        Tuple (thetas of shape (m, K), FitReport)

    Raises:
        FitDivergenceException: If a task's objective drops divergence_patience times in a row
        PlannerConvergenceException: Propagated from the soft planner
    """
    if not tasks:
        raise ValueError("At least one task is required")
    if lam < 0:
        raise ValueError(f"Lambda must be non-negative, got {lam}")
    k = tasks[0].features.k
    for task in tasks:
        if task.features.k != k:
            raise DimensionMismatchException(f"features of task '{task.label}'", k, task.features.k)

    m = len(tasks)
    thetas = np.zeros((m, k)) if init is None else np.array(init, dtype=float).reshape(m, k)
    learning_rates = np.full(m, options.learning_rate)
    streaks = np.zeros(m, dtype=np.int64)
    tol, max_iter = options.planner_tol, options.planner_max_iter
    started = time.perf_counter()

    evaluations: List[GradientEvaluation] = [
        evaluate_task(task, thetas[i], tol, max_iter) for i, task in enumerate(tasks)
    ]
    loss_trace = [total_objective([e.objective for e in evaluations], thetas, lam)]
    task_losses = [[e.objective for e in evaluations]]
    grad_norms = np.zeros(m)
    converged = False
    iterations = 0

    for iteration in range(1, options.max_iter + 1):
        mean = thetas.mean(axis=0)
        grads = [evaluations[i].gradient - lam * (thetas[i] - mean) for i in range(m)]
        grad_norms = np.array([np.max(np.abs(g)) for g in grads])
        if np.all(grad_norms <= options.grad_tol):
            converged = True
            break

        next_thetas = thetas.copy()
        for i, task in enumerate(tasks):
            if grad_norms[i] <= options.grad_tol:
                continue
            candidate = thetas[i] + learning_rates[i] * grads[i]
            candidate_eval = evaluate_task(task, candidate, tol, max_iter, warm=evaluations[i])
            before = regularised_objective(evaluations[i].objective, thetas[i], mean, lam)
            after = regularised_objective(candidate_eval.objective, candidate, mean, lam)
            if after < before:
                streaks[i] += 1
                if streaks[i] >= options.divergence_patience:
                    raise FitDivergenceException(task.label, iteration, int(streaks[i]), after)
                if options.step_halving:
                    learning_rates[i] *= 0.5
                    logger.debug(
                        "Task %s: objective dropped at iteration %d, step halved to %.3g",
                        task.label,
                        iteration,
                        learning_rates[i],
                    )
                    continue
            else:
                streaks[i] = 0
            next_thetas[i] = candidate
            evaluations[i] = candidate_eval

        thetas = next_thetas
        iterations = iteration
        objectives = [e.objective for e in evaluations]
        loss_trace.append(total_objective(objectives, thetas, lam))
        task_losses.append(objectives)
        if progress is not None:
            progress(iteration, thetas, grad_norms, loss_trace[-1])
    else:
        mean = thetas.mean(axis=0)
        grad_norms = np.array([
            np.max(np.abs(evaluations[i].gradient - lam * (thetas[i] - mean))) for i in range(m)
        ])
        converged = bool(np.all(grad_norms <= options.grad_tol))

    report = FitReport(
        iterations=iterations,
        grad_norms=tuple(float(g) for g in grad_norms),
        loss_trace=np.array(loss_trace),
        task_loss_traces=np.array(task_losses),
        converged=converged,
        wall_clock_seconds=time.perf_counter() - started,
        metadata={"lambda": lam, "final_learning_rates": learning_rates.tolist()},
    )
    return thetas, report
