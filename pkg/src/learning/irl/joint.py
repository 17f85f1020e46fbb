"""
Joint-training baseline: one reward fitted to every task's demonstrations.
"""
from typing import Optional, Sequence, Tuple

import numpy as np

from src.domain.entities.tabular_mdp import FeatureMap, TabularMdp
from src.domain.entities.task_params import FitReport
from src.domain.entities.trajectory import DemoSet

from .ascent import ProgressCallback
from .fit_options import FitOptions
from .single_task import fit_single

JOINT_LABEL = "joint"


def fit_joint_baseline(
    mdp: TabularMdp,
    features: FeatureMap,
    demo_sets: Sequence[DemoSet],
    options: Optional[FitOptions] = None,
    progress: Optional[ProgressCallback] = None,
) -> Tuple[np.ndarray, FitReport]:
    """
    fit_single on the concatenation of demo_sets

    The tasks must share dynamics; they may differ only in reward.
    """
    combined = DemoSet.concatenate(list(demo_sets), task_label=JOINT_LABEL)
    return fit_single(mdp, features, combined, options, progress)
