"""
Result Row DTO

One line of an experiment result table.
"""
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

from src.domain.value_objects.algorithm import Algorithm
from src.shared.constants import STATUS_FAILED, STATUS_OK

ORACLE_SLACK = 1e-6


@dataclass(frozen=True)
class JobSpec:
    """
    Coordinates of one cell of the (algorithm, target, M, lambda, seed) grid

    lam is None for algorithms without a regulariser.
    """
    algorithm: Algorithm
    target_task: str
    m: int
    seed: int
    lam: Optional[float] = None

    @property
    def label(self) -> str:
        lam = "" if self.lam is None else f" lambda={self.lam:g}"
        return f"{self.algorithm.value}:{self.target_task} M={self.m}{lam} seed={self.seed}"


@dataclass(frozen=True)
class ResultRow:
    """
    Exact value of the greedy policy for an inferred reward, with references

    Business Rules:
        - value <= oracle_value + 1e-6 for successful rows
        - failed rows carry NaN value and the error message
    """
    algorithm: Algorithm
    target_task: str
    m: int
    lam: Optional[float]
    seed: int
    value: float
    oracle_value: float
    expert_value: float
    status: str = STATUS_OK
    error: str = ""
    wall_clock_seconds: float = 0.0

    @classmethod
    def failed(
        cls,
        job: JobSpec,
        oracle_value: float,
        expert_value: float,
        error: Exception,
        wall_clock_seconds: float = 0.0,
    ) -> 'ResultRow':
        return cls(
            algorithm=job.algorithm,
            target_task=job.target_task,
            m=job.m,
            lam=job.lam,
            seed=job.seed,
            value=float("nan"),
            oracle_value=oracle_value,
            expert_value=expert_value,
            status=STATUS_FAILED,
            error=f"{type(error).__name__}: {error}",
            wall_clock_seconds=wall_clock_seconds,
        )

    @property
    def is_ok(self) -> bool:
        return self.status == STATUS_OK

    @property
    def respects_oracle_bound(self) -> bool:
        if not self.is_ok or math.isnan(self.value):
            return True
        return self.value <= self.oracle_value + ORACLE_SLACK

    def to_dict(self) -> Dict[str, Any]:
        return {
            "algorithm": self.algorithm.value,
            "target_task": self.target_task,
            "m": self.m,
            "lambda": float("nan") if self.lam is None else self.lam,
            "seed": self.seed,
            "value": self.value,
            "oracle_value": self.oracle_value,
            "expert_value": self.expert_value,
            "status": self.status,
            "error": self.error,
            "wall_clock_seconds": self.wall_clock_seconds,
        }
