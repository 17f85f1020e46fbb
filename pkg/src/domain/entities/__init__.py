"""Domain entities"""
from .grid_spec import GridSpec, TaskRewardSpec
from .meta_state import MetaState, MetaStep, zero_meta_state
from .soft_policy import Occupancy, SoftPolicy
from .tabular_mdp import FeatureMap, TabularMdp, broadcast_state_reward, readonly_array
from .task_params import FitReport, TaskParams
from .trajectory import DemoSet, Trajectory

__all__ = [
    "GridSpec",
    "TaskRewardSpec",
    "MetaState",
    "MetaStep",
    "zero_meta_state",
    "Occupancy",
    "SoftPolicy",
    "FeatureMap",
    "TabularMdp",
    "broadcast_state_reward",
    "readonly_array",
    "FitReport",
    "TaskParams",
    "DemoSet",
    "Trajectory",
]
