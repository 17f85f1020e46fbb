"""
Run Experiment Use Case

Fits every (algorithm, target, M, lambda, seed) cell of an experiment,
scores the greedy policy of each inferred reward under the ground truth
and writes the sorted result table with its sidecars.
"""
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.domain.entities.meta_state import MetaState
from src.domain.entities.task_params import FitReport, TaskParams
from src.domain.entities.trajectory import DemoSet
from src.domain.exceptions.domain_exceptions import (
    DemoFileNotFoundException,
    IrlDomainException,
    PlannerConvergenceException,
)
from src.domain.value_objects.algorithm import Algorithm
from src.domain.value_objects.demo_role import DemoRole
from src.infrastructure.config.experiment_config import ExperimentConfig
from src.infrastructure.config.settings import settings
from src.infrastructure.logging.logger import ExperimentLogger, get_logger
from src.infrastructure.persistence.demo_store import TextDemoRepository
from src.infrastructure.persistence.params_store import JsonParamsRepository
from src.infrastructure.persistence.result_store import CsvResultRepository
from src.learning.irl import IrlTask, fit_joint_baseline, fit_multitask, fit_single
from src.learning.irl.single_task import empty_report
from src.learning.meta import MetaTask, TaskSampler, finetune, reptile_meta
from src.shared.utils import derive_seed, rng_identifier

from ..dto.result_row import JobSpec, ResultRow
from ..dto.run_metadata import RunMetadata
from ..dto.run_outcome import RunOutcome
from ..services.experiment_setup import ExperimentSetup

REFERENCE_ALGORITHMS = (Algorithm.ORACLE, Algorithm.EXPERT)


@dataclass(frozen=True)
class JobContext:
    """Everything a worker process needs to rebuild the experiment."""
    config: ExperimentConfig
    output_dir: Path
    log_level: str = "INFO"
    log_format: str = "readable"
    use_colors: bool = True


def build_jobs(
    config: ExperimentConfig,
    algorithms: Sequence[Algorithm],
    lambdas: Sequence[float],
) -> List[JobSpec]:
    """
    The job grid, reference rows included

    Multitask jobs are repeated per lambda; every other algorithm, and the
    oracle and expert rows, carry no lambda.
    """
    jobs: List[JobSpec] = []
    for target in config.target_labels:
        for seed in config.seeds:
            for m in config.target_counts:
                for algorithm in REFERENCE_ALGORITHMS:
                    jobs.append(JobSpec(algorithm, target, m, seed))
                for algorithm in algorithms:
                    if algorithm.uses_lambda:
                        jobs.extend(JobSpec(algorithm, target, m, seed, lam) for lam in lambdas)
                    else:
                        jobs.append(JobSpec(algorithm, target, m, seed))
    return jobs


class JobRunner:
    """
    Runs jobs of one experiment inside one process

    Demo sets and Reptile initialisations are cached per process; both are
    pure functions of the config, so caching never changes a row.
    """

    def __init__(self, context: JobContext):
        self.context = context
        self.setup = ExperimentSetup(context.config, context.output_dir)
        self.options = context.config.fit.to_options()
        self.demo_repository = TextDemoRepository()
        self.params_repository = JsonParamsRepository()
        self._demos: Dict[Path, DemoSet] = {}
        self._meta_states: Dict[Tuple[str, int], MetaState] = {}

    @property
    def logger(self) -> ExperimentLogger:
        return get_logger(self.context.log_level, self.context.use_colors, self.context.log_format)

    def _load(self, task_label: str, role: DemoRole, seed: int) -> DemoSet:
        path = self.setup.demo_path(task_label, role, seed)
        if path not in self._demos:
            self._demos[path] = self.demo_repository.load(path)
        return self._demos[path]

    def _progress(self, job: JobSpec):
        def report(iteration: int, thetas: np.ndarray, grad_norms: np.ndarray, loss: float):
            self.logger.log_fit_progress(
                job.algorithm.value, job.target_task, iteration, float(np.max(grad_norms)), loss
            )
        return report

    def _save_params(self, job: JobSpec, params: TaskParams, report: FitReport):
        fit = {key: value for key, value in report.to_dict().items() if key != "wall_clock_seconds"}
        fit.update({"algorithm": job.algorithm.value, "target_task": job.target_task, "m": job.m})
        path = self.setup.params_path(job.algorithm.value, job.target_task, job.m, job.seed, job.lam)
        self.params_repository.save_task_params(params, path, fit)
        self.logger.log_fit_completed(
            job.algorithm.value, job.target_task, job.seed, report.iterations, report.converged,
            report.grad_norms, report.final_loss, report.wall_clock_seconds,
        )

    def _single_params(self, job: JobSpec, theta: np.ndarray) -> TaskParams:
        return TaskParams(
            task_labels=(job.target_task,),
            thetas=theta[None, :],
            lam=0.0,
            feature_kind=self.context.config.feature_kind.value,
            seed=job.seed,
        )

    def _fit_single(self, job: JobSpec, target_demos: DemoSet) -> np.ndarray:
        theta, report = fit_single(
            self.setup.mdp(job.target_task), self.setup.features, target_demos,
            self.options, self._progress(job),
        )
        self._save_params(job, self._single_params(job, theta), report)
        return theta

    def _fit_joint(self, job: JobSpec, target_demos: DemoSet) -> np.ndarray:
        if target_demos.is_empty:
            theta, report = np.zeros(self.setup.features.k), empty_report(self.setup.features.k, "zero-shot")
        else:
            sources = [self._load(label, DemoRole.SOURCE, job.seed) for label in self.setup.source_labels(job.target_task)]
            theta, report = fit_joint_baseline(
                self.setup.mdp(job.target_task), self.setup.features, sources + [target_demos],
                self.options, self._progress(job),
            )
        self._save_params(job, self._single_params(job, theta), report)
        return theta

    def _fit_multitask(self, job: JobSpec, target_demos: DemoSet) -> np.ndarray:
        features = self.setup.features
        tasks = [
            IrlTask.from_demos(self.setup.mdp(label), features, self._load(label, DemoRole.SOURCE, job.seed))
            for label in self.setup.source_labels(job.target_task)
        ]
        tasks.append(IrlTask.from_demos(self.setup.mdp(job.target_task), features, target_demos))
        params, report = fit_multitask(tasks, job.lam, self.options, self._progress(job))
        params = TaskParams(
            task_labels=params.task_labels,
            thetas=params.thetas,
            lam=params.lam,
            feature_kind=self.context.config.feature_kind.value,
            seed=job.seed,
        )
        self._save_params(job, params, report)
        return params.theta_for(job.target_task)

    def _meta_state(self, target: str, seed: int) -> MetaState:
        key = (target, seed)
        if key not in self._meta_states:
            meta = self.context.config.meta
            tasks = [
                MetaTask(label, self.setup.mdp(label), self.setup.features, self._load(label, DemoRole.SOURCE, seed))
                for label in self.setup.source_labels(target)
            ]
            sampler = TaskSampler(tasks, seed=derive_seed(seed, "meta", target))

            def report(step, phi):
                self.logger.log_meta_step(step.outer_step, step.task_label, float(np.linalg.norm(phi)))

            state = reptile_meta(
                sampler,
                inner_lr=meta.inner_lr,
                inner_steps=meta.inner_steps,
                outer_lr=meta.outer_lr,
                outer_iters=meta.outer_iters,
                planner_tol=self.options.planner_tol,
                planner_max_iter=self.options.planner_max_iter,
                progress=report,
            )
            self.params_repository.save_meta_state(state, self.setup.meta_state_path(target, seed))
            self._meta_states[key] = state
        return self._meta_states[key]

    def _fit_meta(self, job: JobSpec, target_demos: DemoSet) -> np.ndarray:
        meta = self.context.config.meta
        state = self._meta_state(job.target_task, job.seed)
        steps = 0 if target_demos.is_empty else meta.finetune_steps
        theta = finetune(
            state, self.setup.mdp(job.target_task), self.setup.features, target_demos,
            steps, meta.finetune_lr, self.options.planner_tol, self.options.planner_max_iter,
        )
        report = empty_report(self.setup.features.k, "finetune")
        report.metadata.update({"finetune_steps": steps, "meta_outer_iters": state.outer_iters})
        self._save_params(job, self._single_params(job, theta), report)
        return theta

    def fit(self, job: JobSpec) -> np.ndarray:
        """Inferred reward weights of the target task for one learner job."""
        target_demos = self._load(job.target_task, DemoRole.TARGET, job.seed).take(job.m)
        fitters = {
            Algorithm.SINGLE: self._fit_single,
            Algorithm.JOINT: self._fit_joint,
            Algorithm.MULTITASK: self._fit_multitask,
            Algorithm.META: self._fit_meta,
        }
        return fitters[job.algorithm](job, target_demos)

    def run(self, job: JobSpec) -> ResultRow:
        """
        One result row; domain failures become a failed row
        """
        started = time.perf_counter()
        oracle = expert = float("nan")
        try:
            oracle = self.setup.oracle_value(job.target_task)
            expert = self.setup.expert_value(job.target_task)
            if job.algorithm == Algorithm.ORACLE:
                value = oracle
            elif job.algorithm == Algorithm.EXPERT:
                value = expert
            else:
                self.logger.log_fit_started(
                    job.algorithm.value, job.target_task, job.seed,
                    len(self.context.config.tasks), job.m, job.lam,
                )
                theta = self.fit(job)
                value = self.setup.evaluate_theta(job.target_task, theta)
        except IrlDomainException as e:
            if isinstance(e, PlannerConvergenceException):
                self.logger.log_planner_warning(e.planner, str(e), e.residual)
            self.logger.log_fit_failed(
                job.algorithm.value, job.target_task, job.seed, type(e).__name__, str(e)
            )
            return ResultRow.failed(job, oracle, expert, e, time.perf_counter() - started)

        return ResultRow(
            algorithm=job.algorithm,
            target_task=job.target_task,
            m=job.m,
            lam=job.lam,
            seed=job.seed,
            value=value,
            oracle_value=oracle,
            expert_value=expert,
            wall_clock_seconds=time.perf_counter() - started,
        )


_runners: Dict[Tuple[str, str], JobRunner] = {}


def _runner_for(context: JobContext) -> JobRunner:
    key = (context.config.config_hash(), str(context.output_dir))
    if key not in _runners:
        _runners[key] = JobRunner(context)
    return _runners[key]


def run_job(context: JobContext, job: JobSpec) -> ResultRow:
    """Worker entry point (module level so it pickles)."""
    return _runner_for(context).run(job)


class RunExperimentUseCase:
    """
    Fit, evaluate and tabulate a few-shot experiment

    Responsibilities:
        - Check that every demo file the jobs need exists
        - Run the jobs sequentially or on a process pool
        - Write the sorted table, its timings and its metadata sidecar
    """

    def __init__(
        self,
        setup: ExperimentSetup,
        result_repository: CsvResultRepository,
        logger: ExperimentLogger,
        workers: int = 1,
        log_level: str = "INFO",
        log_format: str = "readable",
        use_colors: bool = True,
    ):
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        self.setup = setup
        self.result_repository = result_repository
        self.logger = logger
        self.workers = workers
        self.context = JobContext(
            config=setup.config,
            output_dir=setup.output_dir,
            log_level=log_level,
            log_format=log_format,
            use_colors=use_colors,
        )

    def _check_demo_files(self, jobs: Sequence[JobSpec]):
        """
        Raises:
            DemoFileNotFoundException: For the first missing file
        """
        needed = set()
        for job in jobs:
            if not job.algorithm.is_learner:
                continue
            needed.add(self.setup.demo_path(job.target_task, DemoRole.TARGET, job.seed))
            if job.algorithm != Algorithm.SINGLE:
                for label in self.setup.source_labels(job.target_task):
                    needed.add(self.setup.demo_path(label, DemoRole.SOURCE, job.seed))
        for path in sorted(needed):
            if not path.is_file():
                raise DemoFileNotFoundException(str(path))

    def _run_jobs(self, jobs: Sequence[JobSpec]) -> List[ResultRow]:
        if self.workers == 1 or len(jobs) <= 1:
            runner = _runner_for(self.context)
            return [runner.run(job) for job in jobs]
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(run_job, repeat(self.context), jobs))

    def execute(
        self,
        command: str = "run",
        algorithms: Optional[Sequence[Algorithm]] = None,
        lambdas: Optional[Sequence[float]] = None,
        results_file: Optional[str] = None,
    ) -> RunOutcome:
        """
        Args:
            command: Command name recorded in the sidecar
            algorithms: Learners to run; the config's list by default
            lambdas: Multitask lambdas; the config's list by default
            results_file: Table file name under the output directory

        Returns:
            RunOutcome with every row, failed ones included

        Raises:
            DemoFileNotFoundException: If gen-demos has not been run
        """
        config = self.setup.config
        algorithms = list(algorithms or config.algorithms)
        lambdas = list(lambdas if lambdas is not None else config.lambdas)
        results_path = self.setup.output_dir / (results_file or config.results_file)

        started = time.perf_counter()
        jobs = build_jobs(config, algorithms, lambdas)
        self._check_demo_files(jobs)
        rows = self._run_jobs(jobs)
        for row in rows:
            self.logger.log_result_row(row.to_dict())

        self.result_repository.write_rows([row.to_dict() for row in rows], results_path)
        metadata = RunMetadata(
            command=command,
            experiment=config.name,
            config_hash=config.config_hash(),
            rng=rng_identifier(),
            software_version=settings.APP_VERSION,
            rows=len(rows),
            failed_rows=sum(1 for row in rows if not row.is_ok),
            algorithms=[a.value for a in algorithms],
            lambdas=[float(lam) for lam in lambdas],
        )
        sidecar = self.result_repository.write_metadata(metadata.to_dict(), results_path)
        outcome = RunOutcome(results_path=results_path, metadata_path=sidecar, rows=rows)
        self.logger.log_run_summary(
            command, len(rows), outcome.failed_rows, str(results_path), time.perf_counter() - started
        )
        return outcome
