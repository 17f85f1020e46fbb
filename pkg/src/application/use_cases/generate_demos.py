"""
Generate Demos Use Case

Samples expert demonstrations for every task and seed of an experiment.
"""
import time
from dataclasses import dataclass
from pathlib import Path
from typing import List

from src.domain.entities.trajectory import DemoSet
from src.domain.repositories.demo_repository import DemoRepository
from src.domain.services.demonstrations import sample_trajectories
from src.domain.value_objects.demo_role import DemoRole
from src.infrastructure.logging.logger import ExperimentLogger

from ..services.experiment_setup import ExperimentSetup


@dataclass(frozen=True)
class GeneratedDemoFile:
    task_label: str
    role: DemoRole
    seed: int
    n: int
    path: Path


class GenerateDemosUseCase:
    """
    Write one demo file per (task, role, seed)

    Every task gets a source file with N trajectories. Every target task also
    gets a target file holding max(M) trajectories drawn from an independent
    stream; fits on M demos use its first M trajectories, so smaller budgets
    are prefixes of larger ones.
    """

    def __init__(self, setup: ExperimentSetup, repository: DemoRepository, logger: ExperimentLogger):
        self.setup = setup
        self.repository = repository
        self.logger = logger

    def _demo_set(self, task_label: str, role: DemoRole, seed: int, n: int) -> DemoSet:
        config = self.setup.config
        demo_seed = self.setup.demo_seed(seed, task_label, role)
        if n == 0:
            return DemoSet.empty(task_label, config.horizon, seed=demo_seed)
        return sample_trajectories(
            self.setup.mdp(task_label),
            self.setup.expert_policy(task_label),
            config.horizon,
            n,
            demo_seed,
            task_label=task_label,
        )

    def _write(self, task_label: str, role: DemoRole, seed: int, n: int) -> GeneratedDemoFile:
        path = self.setup.demo_path(task_label, role, seed)
        demo_set = self._demo_set(task_label, role, seed, n)
        self.repository.save(demo_set, path)
        self.logger.log_demos_generated(
            task_label, role.value, seed, demo_set.n, demo_set.horizon, str(path)
        )
        return GeneratedDemoFile(task_label, role, seed, demo_set.n, path)

    def execute(self) -> List[GeneratedDemoFile]:
        """
        Returns:
            Written files in generation order

        Raises:
            PlannerConvergenceException: If an expert policy cannot be planned
            OSError: On write failures
        """
        config = self.setup.config
        started = time.perf_counter()
        written: List[GeneratedDemoFile] = []
        for seed in config.seeds:
            for label in config.task_labels:
                written.append(self._write(label, DemoRole.SOURCE, seed, config.n_source))
            for label in config.target_labels:
                written.append(self._write(label, DemoRole.TARGET, seed, config.max_target_count))

        self.logger.log_run_summary(
            "gen-demos",
            rows=len(written),
            failed=0,
            output_path=str(self.setup.output_dir),
            duration_seconds=time.perf_counter() - started,
        )
        return written
