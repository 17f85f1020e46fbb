"""
Sweep Lambda Use Case
"""
from src.domain.value_objects.algorithm import Algorithm

from ..dto.run_outcome import RunOutcome
from .run_experiment import RunExperimentUseCase

SWEEP_RESULTS_FILE = "sweep_lambda.csv"


class SweepLambdaUseCase:
    """Multitask runs over the config's lambda grid, written to their own table."""

    def __init__(self, runner: RunExperimentUseCase):
        self.runner = runner

    def execute(self) -> RunOutcome:
        config = self.runner.setup.config
        return self.runner.execute(
            command="sweep-lambda",
            algorithms=[Algorithm.MULTITASK],
            lambdas=config.lambda_grid,
            results_file=SWEEP_RESULTS_FILE,
        )
