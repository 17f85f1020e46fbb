"""
Experiment Setup Service

Builds everything a command needs from an ExperimentConfig: the grid, one
MDP per task, the shared feature map, expert policies, reference values
and the demo file layout.
"""
import logging
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from src.domain.entities.soft_policy import SoftPolicy
from src.domain.entities.tabular_mdp import FeatureMap, TabularMdp
from src.domain.services.exact_planner import greedy_policy, policy_value, value_iteration
from src.domain.services.gridworld import build_mdp, feature_map, load_grid
from src.domain.services.soft_planner import soft_value_iteration
from src.domain.value_objects.demo_role import DemoRole
from src.infrastructure.config.experiment_config import ExperimentConfig
from src.infrastructure.config.settings import settings
from src.shared.utils import derive_seed

logger = logging.getLogger(__name__)

DEMO_DIR = "demos"
PARAMS_DIR = "params"


def task_slug(task_label: str) -> str:
    """File-name safe form of a task label ("A+B" -> "A_plus_B")."""
    slug = task_label.replace("+", "_plus_")
    return "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in slug)


class ExperimentSetup:
    """
    Per-config cache of MDPs, features, expert policies and reference values

    Responsibilities:
        - One ground-truth MDP per task (shared dynamics, task reward)
        - Expert soft-optimal policy per task
        - Oracle and expert values per task
        - Demo file paths and demo seeds
    """

    def __init__(self, config: ExperimentConfig, output_dir: Path):
        self.config = config
        self.output_dir = Path(output_dir)
        self.planner_tol = settings.PLANNER_TOL
        self.planner_max_iter = settings.PLANNER_MAX_ITER
        self.grid = load_grid(config.grid_path, slip=config.slip)
        self.specs = config.task_specs()
        self._experts: Dict[str, SoftPolicy] = {}
        self._oracle_values: Dict[str, float] = {}
        self._expert_values: Dict[str, float] = {}

    @cached_property
    def features(self) -> FeatureMap:
        return feature_map(self.grid, self.config.feature_kind)

    @cached_property
    def mdps(self) -> Dict[str, TabularMdp]:
        mdps = {}
        for label, spec in self.specs.items():
            mdp, _ = build_mdp(self.grid, spec, self.config.discount, self.config.feature_kind)
            mdps[label] = mdp
        return mdps

    def mdp(self, task_label: str) -> TabularMdp:
        return self.mdps[task_label]

    def source_labels(self, target: str) -> List[str]:
        """Every task other than the target, in config order."""
        return [label for label in self.config.task_labels if label != target]

    def expert_policy(self, task_label: str) -> SoftPolicy:
        """Soft-optimal policy for the task's ground-truth reward"""
        if task_label not in self._experts:
            self._experts[task_label] = soft_value_iteration(
                self.mdp(task_label), tol=self.planner_tol, max_iter=self.planner_max_iter
            )
        return self._experts[task_label]

    def oracle_value(self, task_label: str) -> float:
        """Value of the optimal policy under the ground-truth reward"""
        if task_label not in self._oracle_values:
            mdp = self.mdp(task_label)
            _, q = value_iteration(mdp, tol=self.planner_tol, max_iter=self.planner_max_iter)
            self._oracle_values[task_label] = policy_value(mdp, mdp.reward, greedy_policy(q))
        return self._oracle_values[task_label]

    def expert_value(self, task_label: str) -> float:
        """Value of the soft-optimal expert under the ground-truth reward"""
        if task_label not in self._expert_values:
            mdp = self.mdp(task_label)
            self._expert_values[task_label] = policy_value(mdp, mdp.reward, self.expert_policy(task_label))
        return self._expert_values[task_label]

    def greedy_for_theta(self, task_label: str, theta: np.ndarray) -> np.ndarray:
        """Optimal deterministic policy for the learned reward theta . phi"""
        mdp = self.mdp(task_label)
        _, q = value_iteration(
            mdp, self.features.reward(theta), tol=self.planner_tol, max_iter=self.planner_max_iter
        )
        return greedy_policy(q)

    def evaluate_theta(self, task_label: str, theta: np.ndarray) -> float:
        """
        Exact value of the greedy policy for theta under the ground truth

        Raises:
            PlannerConvergenceException: If planning on theta fails
            SingularSystemException: If policy evaluation fails
        """
        mdp = self.mdp(task_label)
        return policy_value(mdp, mdp.reward, self.greedy_for_theta(task_label, theta))

    def demo_seed(self, seed: int, task_label: str, role: DemoRole) -> int:
        return derive_seed(seed, task_label, role.code)

    def demo_path(self, task_label: str, role: DemoRole, seed: int) -> Path:
        return self.output_dir / DEMO_DIR / f"{task_slug(task_label)}_{role.value}_seed{seed}.demos"

    def params_path(
        self,
        algorithm: str,
        task_label: str,
        m: int,
        seed: int,
        lam: Optional[float] = None,
    ) -> Path:
        lam_part = "" if lam is None else f"_lam{lam:g}"
        name = f"{algorithm}_{task_slug(task_label)}_m{m}{lam_part}_seed{seed}.json"
        return self.output_dir / PARAMS_DIR / name

    def meta_state_path(self, task_label: str, seed: int) -> Path:
        return self.output_dir / PARAMS_DIR / f"meta_{task_slug(task_label)}_seed{seed}.meta.json"
