"""Application services"""
from .experiment_setup import ExperimentSetup, task_slug

__all__ = ["ExperimentSetup", "task_slug"]
