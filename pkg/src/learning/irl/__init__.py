"""MCE inverse reinforcement learning"""
from .ascent import run_gradient_ascent
from .fit_options import FitOptions
from .gradient import (
    GradientEvaluation,
    IrlTask,
    mce_gradient,
    mce_objective,
    mce_objective_and_gradient,
)
from .joint import fit_joint_baseline
from .multitask import fit_multitask
from .single_task import fit_single

__all__ = [
    "run_gradient_ascent",
    "FitOptions",
    "GradientEvaluation",
    "IrlTask",
    "mce_gradient",
    "mce_objective",
    "mce_objective_and_gradient",
    "fit_joint_baseline",
    "fit_multitask",
    "fit_single",
]
