"""Reptile meta-initialisation"""
from .reptile import finetune, inner_loop, reptile_meta
from .task_sampler import MetaTask, TaskSampler

__all__ = ["finetune", "inner_loop", "reptile_meta", "MetaTask", "TaskSampler"]
