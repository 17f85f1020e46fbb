"""
Multi-task MCE IRL with a shared-mean prior

Every task keeps its own theta_i; the penalty 0.5 lam ||theta_i - theta_bar||^2
pulls the iterates toward their running mean.
"""
from typing import Optional, Sequence, Tuple

from src.domain.entities.task_params import FitReport, TaskParams

from .ascent import ProgressCallback, run_gradient_ascent
from .fit_options import FitOptions
from .gradient import IrlTask


def fit_multitask(
    tasks: Sequence[IrlTask],
    lam: float,
    options: Optional[FitOptions] = None,
    progress: Optional[ProgressCallback] = None,
) -> Tuple[TaskParams, FitReport]:
    """
    Synchronous regularised fit of m >= 2 tasks

    Tasks without demonstrations are allowed; their gradient is the
    regulariser alone, so their theta follows theta_bar.

    Args:
        tasks: IrlTask per task (see IrlTask.from_demos)
        lam: Regularisation strength, applied to every task
        options: Gradient-ascent settings

    Returns:
        Tuple (TaskParams, FitReport)
    """
    if len(tasks) < 2:
        raise ValueError(f"Multi-task fitting needs at least two tasks, got {len(tasks)}")
    options = options or FitOptions()
    thetas, report = run_gradient_ascent(tasks, lam, options, progress=progress)
    params = TaskParams(task_labels=tuple(t.label for t in tasks), thetas=thetas, lam=lam)
    return params, report
