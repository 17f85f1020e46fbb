"""
Slow acceptance experiments on the shipped fixtures

Run with: pytest -m slow tests/e2e
"""
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
import yaml

from src.application.use_cases.aggregate_results import summarise
from src.domain.entities.meta_state import MetaState
from src.domain.services.demonstrations import sample_trajectories
from src.domain.services.exact_planner import greedy_policy, policy_value, value_iteration
from src.domain.services.gridworld import TASK_A, build_mdp, feature_map, load_grid, random_task_family
from src.domain.services.soft_planner import occupancy, soft_value_iteration, state_marginals
from src.domain.value_objects.aggregation_mode import AggregationMode
from src.domain.value_objects.feature_kind import FeatureKind
from src.learning.irl.fit_options import FitOptions
from src.learning.irl.single_task import fit_single
from src.learning.meta.reptile import finetune, reptile_meta
from src.learning.meta.task_sampler import MetaTask, TaskSampler
from src.presentation.cli.main import EXIT_OK, main
from src.shared.utils import derive_seed

REPO_ROOT = Path(__file__).resolve().parents[2]
FEWSHOT_CONFIG = REPO_ROOT / "configs" / "fewshot.yaml"
GRID_DIR = REPO_ROOT / "data" / "grids"
WORKERS = "4"

pytestmark = [pytest.mark.e2e, pytest.mark.slow]


def run_experiment(tmp_path: Path, command: str = "run", **overrides) -> pd.DataFrame:
    document = yaml.safe_load(FEWSHOT_CONFIG.read_text())
    document["grid_path"] = str(GRID_DIR / "jungle_9x9.txt")
    document.update(overrides)
    config = tmp_path / "experiment.yaml"
    config.write_text(yaml.safe_dump(document))
    output = tmp_path / "out"
    common = ["--config", str(config), "--output-dir", str(output), "--log-level", "WARNING"]
    assert main(["gen-demos", *common]) == EXIT_OK
    assert main([command, *common, "--workers", WORKERS]) == EXIT_OK
    table = "sweep_lambda.csv" if command == "sweep-lambda" else "results.csv"
    return pd.read_csv(output / table)


def cell(summary: pd.DataFrame, algorithm: str, target: str, m: int) -> pd.Series:
    rows = summary[(summary["algorithm"] == algorithm) & (summary["target_task"] == target) & (summary["m"] == m)]
    assert len(rows) == 1
    return rows.iloc[0]


def test_few_shot_multitask_beats_single(tmp_path):
    """Two target demos suffice for multitask but not for single-task"""
    frame = run_experiment(tmp_path, target_counts=[2], algorithms=["single", "multitask"])
    assert (frame["status"] == "ok").all()
    best = summarise(frame, AggregationMode.BEST_OF_SEEDS)
    for target in ("A", "B", "A+B"):
        multitask = cell(best, "multitask", target, 2)
        assert multitask["value"] >= 0.9 * multitask["oracle_value"]
    for target in ("A", "B"):
        single = cell(best, "single", target, 2)
        assert single["value"] < 0.5 * single["oracle_value"]


def test_joint_baseline_asymmetry(tmp_path):
    """Joint training suits A+B and fails A and B"""
    frame = run_experiment(tmp_path, target_counts=[2], algorithms=["joint"])
    best = summarise(frame, AggregationMode.BEST_OF_SEEDS)
    joint = cell(best, "joint", "A+B", 2)
    assert joint["value"] >= 0.9 * joint["oracle_value"]
    for target in ("A", "B"):
        assert cell(best, "joint", target, 2)["value"] < 0.0


def test_lambda_sweep_shape(tmp_path):
    """lambda = 0.1 has the best mean at small M and every lambda is near-optimal by M = 20"""
    frame = run_experiment(tmp_path, command="sweep-lambda", targets=[TASK_A], target_counts=[1, 2, 5, 20])
    means = summarise(frame, AggregationMode.MEAN_CI95)
    multitask = means[means["algorithm"] == "multitask"]
    for m in (1, 2, 5):
        at_m = multitask[multitask["m"] == m].set_index("lambda")["value"]
        assert at_m[0.1] >= at_m.drop(0.1).max()
    at_20 = multitask[multitask["m"] == 20]
    assert (at_20["value"] >= 0.9 * at_20["oracle_value"]).all()


def test_fit_single_recovers_expert_on_open_grid(tasks):
    """1000 demonstrations pin down the reward on the 5x5 grid"""
    grid = load_grid(GRID_DIR / "open_5x5.txt")
    mdp, features = build_mdp(grid, tasks[TASK_A], discount=0.95, kind=FeatureKind.ONE_HOT_STATE)
    expert = soft_value_iteration(mdp)
    demos = sample_trajectories(mdp, expert, horizon=200, n=1000, seed=0, task_label=TASK_A)

    theta, _ = fit_single(mdp, features, demos, FitOptions(max_iter=500))
    _, q = value_iteration(mdp, features.reward(theta))
    learned = greedy_policy(q)
    assert policy_value(mdp, mdp.reward, learned) >= 0.95 * policy_value(mdp, mdp.reward, expert)

    visited = state_marginals(occupancy(mdp, expert)) > 0
    agreement = np.mean(learned[visited] == greedy_policy(expert.q_soft)[visited])
    assert agreement >= 0.95


def test_reptile_initialisation_helps_one_shot():
    """Finetuning from the meta-initialisation beats finetuning from zero with one demo"""
    grid = load_grid(GRID_DIR / "jungle_9x9.txt")
    family = random_task_family(8, seed=0)
    labels = list(family)
    sources, held_out = labels[:-1], labels[-1]
    features = feature_map(grid, FeatureKind.ONE_HOT_STATE)
    mdps = {label: build_mdp(grid, spec, discount=0.95)[0] for label, spec in family.items()}
    experts = {label: soft_value_iteration(mdp) for label, mdp in mdps.items()}
    target_mdp = mdps[held_out]

    def value(theta):
        _, q = value_iteration(target_mdp, features.reward(theta))
        return policy_value(target_mdp, target_mdp.reward, greedy_policy(q))

    gains = []
    for seed in range(5):
        tasks = [
            MetaTask(
                label, mdps[label], features,
                sample_trajectories(mdps[label], experts[label], 200, 200, derive_seed(seed, label), label),
            )
            for label in sources
        ]
        state = reptile_meta(
            TaskSampler(tasks, seed=derive_seed(seed, "meta")),
            inner_lr=0.1, inner_steps=5, outer_lr=0.5, outer_iters=30,
        )
        target_demos = sample_trajectories(
            target_mdp, experts[held_out], 200, 1, derive_seed(seed, held_out, "target"), held_out
        )
        meta_theta = finetune(state, target_mdp, features, target_demos, steps=20, lr=0.1)
        zero_theta = finetune(MetaState(phi=np.zeros(features.k)), target_mdp, features, target_demos, steps=20, lr=0.1)
        gains.append(value(meta_theta) - value(zero_theta))
    assert np.mean(gains) > 0.0
