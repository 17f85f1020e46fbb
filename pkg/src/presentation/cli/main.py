"""
Command-line entry point

    python -m src.presentation.cli gen-demos --config configs/smoke.yaml
    python -m src.presentation.cli run --config configs/smoke.yaml --workers 4
    python -m src.presentation.cli sweep-lambda --config configs/smoke.yaml
    python -m src.presentation.cli aggregate outputs/smoke/results.csv --mode mean_ci95
    python -m src.presentation.cli eval-policy --config configs/smoke.yaml \\
        --params outputs/smoke/params/single_A_m2_seed0.json --task A

Exit codes: 0 success, 1 domain failure, 2 invalid input.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from src.application.services.experiment_setup import ExperimentSetup
from src.application.use_cases import (
    AggregateResultsUseCase,
    EvaluatePolicyUseCase,
    GenerateDemosUseCase,
    RunExperimentUseCase,
    SweepLambdaUseCase,
)
from src.domain.exceptions.domain_exceptions import IrlDomainException
from src.domain.exceptions.validation_exceptions import ConfigValidationException, ValidationException
from src.domain.value_objects.aggregation_mode import AggregationMode
from src.domain.value_objects.algorithm import Algorithm
from src.infrastructure.config.experiment_config import ExperimentConfig, load_experiment_config
from src.infrastructure.config.settings import settings
from src.infrastructure.logging.logger import ExperimentLogger, configure_logger
from src.infrastructure.persistence.demo_store import TextDemoRepository
from src.infrastructure.persistence.params_store import JsonParamsRepository
from src.infrastructure.persistence.result_store import CsvResultRepository

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_INVALID_INPUT = 2

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", choices=LOG_LEVELS, type=str.upper, default=None,
                        help=f"Log verbosity (default: {settings.LOG_LEVEL}).")
    common.add_argument("-v", "--verbose", action="store_true",
                        help="Shortcut for --log-level DEBUG.")
    common.add_argument("--log-format", choices=["readable", "json"], default=settings.LOG_FORMAT,
                        help="Log record format.")
    common.add_argument("--no-color", action="store_true", help="Disable coloured log output.")
    return common


def _experiment_parser(common: argparse.ArgumentParser) -> argparse.ArgumentParser:
    experiment = argparse.ArgumentParser(add_help=False, parents=[common])
    experiment.add_argument("--config", required=True, type=Path, help="Experiment config (YAML).")
    experiment.add_argument("--output-dir", type=Path, default=None,
                            help="Output directory (default: config output_dir or OUTPUT_DIR/<name>).")
    return experiment


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mtirl",
        description="Few-shot multi-task maximum causal entropy IRL on tabular gridworlds.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    experiment = _experiment_parser(common)

    subparsers.add_parser("gen-demos", parents=[experiment],
                          help="Sample expert demonstrations for every task and seed.")

    run = subparsers.add_parser("run", parents=[experiment],
                                help="Fit every algorithm and write the result table.")
    run.add_argument("--workers", type=int, default=settings.WORKERS, help="Worker processes.")
    run.add_argument("--algorithms", nargs="+", type=Algorithm.from_string, default=None,
                     help="Learners to run (default: the config's list).")

    sweep = subparsers.add_parser("sweep-lambda", parents=[experiment],
                                  help="Multitask fits over the config's lambda grid.")
    sweep.add_argument("--workers", type=int, default=settings.WORKERS, help="Worker processes.")

    aggregate = subparsers.add_parser("aggregate", parents=[common],
                                      help="Summarise result tables over seeds.")
    aggregate.add_argument("results", nargs="+", type=Path, help="Result table(s).")
    aggregate.add_argument("--mode", type=AggregationMode.from_string,
                           default=AggregationMode.BEST_OF_SEEDS,
                           help="best_of_seeds or mean_ci95.")
    aggregate.add_argument("--output", type=Path, default=None,
                           help="Write the summary here instead of stdout.")
    aggregate.add_argument("--skip-empty", action="store_true",
                           help="Skip cells without successful rows instead of failing.")

    evaluate = subparsers.add_parser("eval-policy", parents=[experiment],
                                     help="Score the greedy policy of stored reward weights.")
    evaluate.add_argument("--params", required=True, type=Path, help="Task parameter file (JSON).")
    evaluate.add_argument("--task", required=True, help="Task label to evaluate on.")
    return parser


def _logger_from_args(args: argparse.Namespace) -> ExperimentLogger:
    level = "DEBUG" if args.verbose else (args.log_level or settings.LOG_LEVEL)
    args.resolved_log_level = level
    args.use_colors = settings.LOG_USE_COLORS and not args.no_color
    return configure_logger(
        log_level=level,
        use_colors=args.use_colors,
        log_format=args.log_format,
    )


def _setup(args: argparse.Namespace) -> ExperimentSetup:
    config: ExperimentConfig = load_experiment_config(args.config)
    return ExperimentSetup(config, config.resolved_output_dir(args.output_dir))


def _experiment_runner(args: argparse.Namespace, logger: ExperimentLogger) -> RunExperimentUseCase:
    return RunExperimentUseCase(
        _setup(args),
        CsvResultRepository(),
        logger,
        workers=args.workers,
        log_level=args.resolved_log_level,
        log_format=args.log_format,
        use_colors=args.use_colors,
    )


def cmd_gen_demos(args: argparse.Namespace, logger: ExperimentLogger) -> int:
    written = GenerateDemosUseCase(_setup(args), TextDemoRepository(), logger).execute()
    for item in written:
        print(item.path)
    return EXIT_OK


def cmd_run(args: argparse.Namespace, logger: ExperimentLogger) -> int:
    outcome = _experiment_runner(args, logger).execute(command="run", algorithms=args.algorithms)
    print(outcome.results_path)
    return EXIT_OK


def cmd_sweep_lambda(args: argparse.Namespace, logger: ExperimentLogger) -> int:
    outcome = SweepLambdaUseCase(_experiment_runner(args, logger)).execute()
    print(outcome.results_path)
    return EXIT_OK


def cmd_aggregate(args: argparse.Namespace, logger: ExperimentLogger) -> int:
    summary = AggregateResultsUseCase(CsvResultRepository()).execute(
        args.results, args.mode, output_path=args.output, skip_empty=args.skip_empty
    )
    if args.output is None:
        print(summary.to_csv(index=False, float_format="%.12g"), end="")
    else:
        print(args.output)
    return EXIT_OK


def cmd_eval_policy(args: argparse.Namespace, logger: ExperimentLogger) -> int:
    evaluation = EvaluatePolicyUseCase(_setup(args), JsonParamsRepository()).execute(args.params, args.task)
    print(evaluation.to_text(), end="")
    return EXIT_OK


COMMANDS = {
    "gen-demos": cmd_gen_demos,
    "run": cmd_run,
    "sweep-lambda": cmd_sweep_lambda,
    "aggregate": cmd_aggregate,
    "eval-policy": cmd_eval_policy,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if any(not algorithm.is_learner for algorithm in getattr(args, "algorithms", None) or []):
        parser.error("--algorithms accepts learners only: " + ", ".join(a.value for a in Algorithm.learners()))
    logger = _logger_from_args(args)
    try:
        return COMMANDS[args.command](args, logger)
    except ConfigValidationException as e:
        for field, messages in e.get_errors_by_field().items():
            for message in messages:
                print(f"config error: {field}: {message}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except ValidationException as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except IrlDomainException as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR
