"""Configuration"""
from .experiment_config import (
    ExperimentConfig,
    FitConfig,
    MetaConfig,
    TaskWeightsConfig,
    load_experiment_config,
    parse_experiment_config,
)
from .settings import Settings, settings

__all__ = [
    "ExperimentConfig",
    "FitConfig",
    "MetaConfig",
    "TaskWeightsConfig",
    "load_experiment_config",
    "parse_experiment_config",
    "Settings",
    "settings",
]
