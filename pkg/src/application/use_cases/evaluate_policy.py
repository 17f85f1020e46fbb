"""
Evaluate Policy Use Case
"""
from pathlib import Path

import numpy as np

from src.domain.exceptions.domain_exceptions import DimensionMismatchException
from src.domain.exceptions.validation_exceptions import ValidationException
from src.domain.repositories.params_repository import ParamsRepository
from src.domain.services.exact_planner import policy_value
from src.domain.services.gridworld import render_grid

from ..dto.policy_evaluation import PolicyEvaluation
from ..services.experiment_setup import ExperimentSetup


class EvaluatePolicyUseCase:
    """Exact value of the greedy policy for stored weights"""

    def __init__(self, setup: ExperimentSetup, repository: ParamsRepository):
        self.setup = setup
        self.repository = repository

    def _theta(self, params_path: Path, task_label: str) -> np.ndarray:
        params = self.repository.load_task_params(params_path)
        if task_label in params.task_labels:
            return params.theta_for(task_label)
        if params.m == 1:
            return params.thetas[0]
        raise ValidationException(
            f"{params_path} holds no weights for task '{task_label}' ({', '.join(params.task_labels)})",
            "task",
        )

    def execute(self, params_path: Path, task_label: str) -> PolicyEvaluation:
        """
        Raises:
            ValidationException: If the task or the parameter file is unknown
            DimensionMismatchException: If theta does not fit the config's features
        """
        if task_label not in self.setup.specs:
            raise ValidationException(f"Unknown task '{task_label}'", "task")
        theta = self._theta(Path(params_path), task_label)
        if theta.shape != (self.setup.features.k,):
            raise DimensionMismatchException("theta", (self.setup.features.k,), theta.shape)

        policy = self.setup.greedy_for_theta(task_label, theta)
        mdp = self.setup.mdp(task_label)
        return PolicyEvaluation(
            task_label=task_label,
            value=policy_value(mdp, mdp.reward, policy),
            oracle_value=self.setup.oracle_value(task_label),
            expert_value=self.setup.expert_value(task_label),
            rendered_policy=render_grid(self.setup.grid, policy),
        )
