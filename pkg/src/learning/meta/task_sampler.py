"""
Task Sampler

Seeded uniform distribution over the tasks Reptile meta-trains on.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence

import numpy as np

from src.domain.entities.tabular_mdp import FeatureMap, TabularMdp
from src.domain.entities.trajectory import DemoSet
from src.domain.services.demonstrations import empirical_feature_counts
from src.shared.utils.seeding import make_rng


@dataclass(eq=False)
class MetaTask:
    """A task of the meta-training distribution with its own demonstrations."""
    label: str
    mdp: TabularMdp
    features: FeatureMap
    demos: DemoSet

    @cached_property
    def demo_counts(self) -> np.ndarray:
        """Empirical discounted feature counts of the task's demos."""
        return empirical_feature_counts(self.demos, self.features, self.mdp.discount)


class TaskSampler:
    """
    Draws tasks uniformly with replacement from one PCG64 stream

    The draw sequence depends only on the seed and the number of tasks.
    """

    def __init__(self, tasks: Sequence[MetaTask], seed: int):
        if not tasks:
            raise ValueError("TaskSampler needs at least one task")
        k = tasks[0].features.k
        if any(t.features.k != k for t in tasks):
            raise ValueError("All meta tasks must share one feature dimension")
        self.tasks: List[MetaTask] = list(tasks)
        self.seed = seed
        self._rng = make_rng(seed)

    @property
    def k(self) -> int:
        return self.tasks[0].features.k

    def sample(self) -> MetaTask:
        return self.tasks[int(self._rng.integers(len(self.tasks)))]

    def __len__(self) -> int:
        return len(self.tasks)
