"""Application DTOs"""
from .policy_evaluation import PolicyEvaluation
from .result_row import JobSpec, ResultRow
from .run_metadata import RunMetadata
from .run_outcome import RunOutcome

__all__ = ["PolicyEvaluation", "JobSpec", "ResultRow", "RunMetadata", "RunOutcome"]
