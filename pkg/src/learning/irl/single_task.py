"""
Single-task MCE IRL
"""
import logging
from typing import Optional, Tuple

import numpy as np

from src.domain.entities.tabular_mdp import FeatureMap, TabularMdp
from src.domain.entities.task_params import FitReport
from src.domain.entities.trajectory import DemoSet

from .ascent import ProgressCallback, run_gradient_ascent
from .fit_options import FitOptions
from .gradient import IrlTask

logger = logging.getLogger(__name__)


def empty_report(k: int, reason: str) -> FitReport:
    """Report of a fit that did not iterate."""
    return FitReport(
        iterations=0,
        grad_norms=(),
        loss_trace=np.zeros(1),
        task_loss_traces=np.zeros((1, 1)),
        converged=False,
        metadata={"skipped": reason, "k": k},
    )


def fit_single(
    mdp: TabularMdp,
    features: FeatureMap,
    demos: DemoSet,
    options: Optional[FitOptions] = None,
    progress: Optional[ProgressCallback] = None,
) -> Tuple[np.ndarray, FitReport]:
    """
    Maximum causal likelihood estimate of theta by gradient ascent from 0

    An empty demo set (zero-shot) returns theta = 0 without iterating.

    Returns:
        Tuple (theta, FitReport)

    Raises:
        FitDivergenceException: If the objective keeps dropping
    """
    options = options or FitOptions()
    if demos.is_empty:
        logger.debug("No demonstrations for task %s, returning theta = 0", demos.task_label)
        return np.zeros(features.k), empty_report(features.k, "zero-shot")
    task = IrlTask.from_demos(mdp, features, demos)
    thetas, report = run_gradient_ascent([task], 0.0, options, progress=progress)
    return thetas[0], report
