"""
Experiment Configuration

One YAML file describes a few-shot experiment: the grid, the task family,
demonstration budgets, the lambda grid, seeds and every fit hyperparameter.
"""
import hashlib
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.domain.entities.grid_spec import TaskRewardSpec
from src.domain.exceptions.validation_exceptions import ConfigValidationException
from src.domain.value_objects.algorithm import Algorithm
from src.domain.value_objects.feature_kind import FeatureKind
from src.learning.irl.fit_options import FitOptions
from src.shared.constants import DEFAULT_LAMBDA, DEFAULT_LAMBDA_GRID

from .settings import settings


class TaskWeightsConfig(BaseModel):
    """Reward weights of one task, keyed by terrain."""
    model_config = ConfigDict(extra="forbid")

    label: str = Field(min_length=1)
    dirt: float = 0.0
    grass: float = 0.0
    lava: float = 0.0
    gold: float = 0.0
    silver: float = 0.0

    def to_spec(self) -> TaskRewardSpec:
        return TaskRewardSpec(
            dirt=self.dirt, grass=self.grass, lava=self.lava, gold=self.gold, silver=self.silver
        )


class FitConfig(BaseModel):
    """Gradient-ascent hyperparameters (see FitOptions)."""
    model_config = ConfigDict(extra="forbid")

    learning_rate: float = Field(default=0.1, ge=0)
    max_iter: int = Field(default=300, ge=0)
    grad_tol: float = Field(default=1e-3, ge=0)
    step_halving: bool = True
    divergence_patience: int = Field(default=50, ge=1)
    planner_tol: float = Field(default_factory=lambda: settings.PLANNER_TOL, gt=0)
    planner_max_iter: int = Field(default_factory=lambda: settings.PLANNER_MAX_ITER, ge=1)

    def to_options(self) -> FitOptions:
        return FitOptions(**self.model_dump())


class MetaConfig(BaseModel):
    """Reptile and finetuning hyperparameters."""
    model_config = ConfigDict(extra="forbid")

    inner_lr: float = Field(default=0.1, ge=0)
    inner_steps: int = Field(default=5, ge=1)
    outer_lr: float = Field(default=0.5, ge=0, le=1)
    outer_iters: int = Field(default=30, ge=1)
    finetune_steps: int = Field(default=20, ge=0)
    finetune_lr: float = Field(default=0.1, ge=0)


class ExperimentConfig(BaseModel):
    """
    Few-shot experiment description

    Business Rules:
        - At least two tasks with unique labels; targets name existing tasks
        - Seeds distinct and non-negative
        - Demo counts positive (target counts may be 0 for zero-shot rows)
        - The grid file exists
    """
    model_config = ConfigDict(extra="forbid")

    name: str = "experiment"
    grid_path: Path
    slip: float = Field(default=0.8, ge=0, le=1)
    feature_kind: FeatureKind = FeatureKind.ONE_HOT_STATE
    tasks: List[TaskWeightsConfig] = Field(min_length=2)
    targets: Optional[List[str]] = None
    discount: float = Field(default_factory=lambda: settings.DEFAULT_DISCOUNT, ge=0, lt=1)
    horizon: int = Field(default_factory=lambda: settings.DEFAULT_HORIZON, ge=1)
    n_source: int = Field(default=1000, ge=1)
    target_counts: List[int] = Field(default_factory=lambda: [1, 2, 5, 10, 20, 50, 100], min_length=1)
    lambdas: List[float] = Field(default_factory=lambda: [DEFAULT_LAMBDA], min_length=1)
    lambda_grid: List[float] = Field(default_factory=lambda: list(DEFAULT_LAMBDA_GRID), min_length=1)
    seeds: List[int] = Field(default_factory=lambda: [0, 1, 2, 3, 4], min_length=1)
    algorithms: List[Algorithm] = Field(
        default_factory=lambda: [Algorithm.SINGLE, Algorithm.JOINT, Algorithm.MULTITASK],
        min_length=1,
    )
    fit: FitConfig = Field(default_factory=FitConfig)
    meta: MetaConfig = Field(default_factory=MetaConfig)
    output_dir: Optional[Path] = None
    results_file: str = "results.csv"

    @field_validator("target_counts")
    @classmethod
    def _non_negative_counts(cls, value: List[int]) -> List[int]:
        if any(m < 0 for m in value):
            raise ValueError("target counts must be non-negative")
        return sorted(set(value))

    @field_validator("lambdas", "lambda_grid")
    @classmethod
    def _non_negative_lambdas(cls, value: List[float]) -> List[float]:
        if any(lam < 0 for lam in value):
            raise ValueError("lambda values must be non-negative")
        return value

    @field_validator("seeds")
    @classmethod
    def _distinct_seeds(cls, value: List[int]) -> List[int]:
        if len(set(value)) != len(value):
            raise ValueError("seeds must be distinct")
        if any(seed < 0 for seed in value):
            raise ValueError("seeds must be non-negative")
        return value

    @field_validator("algorithms")
    @classmethod
    def _learners_only(cls, value: List[Algorithm]) -> List[Algorithm]:
        for algorithm in value:
            if not algorithm.is_learner:
                raise ValueError(f"'{algorithm.value}' rows are always emitted and cannot be selected")
        return value

    @model_validator(mode="after")
    def _check_tasks(self) -> 'ExperimentConfig':
        labels = [task.label for task in self.tasks]
        if len(set(labels)) != len(labels):
            raise ValueError("task labels must be unique")
        for target in self.targets or []:
            if target not in labels:
                raise ValueError(f"target '{target}' is not a task label")
        if not self.grid_path.is_file():
            raise ValueError(f"grid file does not exist: {self.grid_path}")
        return self

    @property
    def target_labels(self) -> List[str]:
        return list(self.targets) if self.targets else [task.label for task in self.tasks]

    @property
    def task_labels(self) -> List[str]:
        return [task.label for task in self.tasks]

    @property
    def max_target_count(self) -> int:
        return max(self.target_counts)

    def task_specs(self) -> Dict[str, TaskRewardSpec]:
        return {task.label: task.to_spec() for task in self.tasks}

    def resolved_output_dir(self, override: Optional[Union[str, Path]] = None) -> Path:
        if override is not None:
            return Path(override)
        if self.output_dir is not None:
            return self.output_dir
        return Path(settings.OUTPUT_DIR) / self.name

    def config_hash(self) -> str:
        """
        SHA-256 of the canonical JSON form

        The grid enters by content, and the output location is excluded, so
        the hash identifies the experiment rather than where it ran.
        """
        document = self.model_dump(mode="json", exclude={"grid_path", "output_dir"})
        document["grid_text"] = self.grid_path.read_text(encoding="utf-8")
        canonical = json.dumps(document, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _field_errors(error: ValidationError) -> List[tuple]:
    errors = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "config"
        errors.append((location, item["msg"]))
    return errors


def parse_experiment_config(data: Dict[str, Any], base_dir: Optional[Path] = None) -> ExperimentConfig:
    """
    Validate a config mapping

    Relative grid_path and output_dir are resolved against base_dir.

    Raises:
        ConfigValidationException: With one (field path, message) per problem
    """
    if not isinstance(data, dict):
        raise ConfigValidationException([("config", "top level must be a mapping")])
    data = dict(data)
    if base_dir is not None:
        for key in ("grid_path", "output_dir"):
            value = data.get(key)
            if value is not None and not Path(value).is_absolute():
                data[key] = str(base_dir / value)
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigValidationException(_field_errors(e)) from e


def load_experiment_config(path: Union[str, Path]) -> ExperimentConfig:
    """
    Read and validate a YAML experiment config

    Raises:
        ConfigValidationException: If the file is missing, not YAML, or invalid
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigValidationException([("config", f"file not found: {path}")])
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise ConfigValidationException([("config", f"invalid YAML: {e}")]) from e
    return parse_experiment_config(data or {}, base_dir=path.parent)
