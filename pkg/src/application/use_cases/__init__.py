"""Application use cases, one per CLI command"""
from .aggregate_results import AggregateResultsUseCase, summarise
from .evaluate_policy import EvaluatePolicyUseCase
from .generate_demos import GenerateDemosUseCase
from .run_experiment import RunExperimentUseCase, build_jobs
from .sweep_lambda import SweepLambdaUseCase

__all__ = [
    "AggregateResultsUseCase",
    "summarise",
    "EvaluatePolicyUseCase",
    "GenerateDemosUseCase",
    "RunExperimentUseCase",
    "build_jobs",
    "SweepLambdaUseCase",
]
