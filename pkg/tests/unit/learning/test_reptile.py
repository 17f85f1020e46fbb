"""
Unit tests for the task sampler, Reptile meta-training and finetuning
"""
import numpy as np
import pytest

from src.domain.entities.meta_state import MetaState
from src.domain.entities.trajectory import DemoSet
from src.domain.exceptions.domain_exceptions import (
    EmptyDemoSetException,
    PlannerConvergenceException,
    TaskFailedException,
)
from src.domain.services.demonstrations import sample_trajectories
from src.domain.services.soft_planner import soft_value_iteration
from src.learning.irl.fit_options import FitOptions
from src.learning.irl.gradient import mce_gradient
from src.learning.irl.single_task import fit_single
from src.learning.meta.reptile import finetune, inner_loop, reptile_meta
from src.learning.meta.task_sampler import MetaTask, TaskSampler

from tests.factories import random_features, random_mdp

THETAS = {
    "a": np.array([0.8, -0.5, 0.3]),
    "b": np.array([-0.2, 0.6, 0.1]),
    "c": np.array([0.4, 0.4, -0.7]),
}


@pytest.fixture
def meta_tasks():
    mdp = random_mdp(n_states=4, n_actions=3, discount=0.9, seed=21, with_reward=False)
    features = random_features(n_states=4, n_actions=3, k=3, seed=5)
    tasks = []
    for i, (label, theta) in enumerate(THETAS.items()):
        policy = soft_value_iteration(mdp, features.reward(theta))
        demos = sample_trajectories(mdp, policy, horizon=60, n=50, seed=i, task_label=label)
        tasks.append(MetaTask(label=label, mdp=mdp, features=features, demos=demos))
    return tasks


@pytest.mark.unit
class TestTaskSampler:
    """Test suite for TaskSampler"""

    def test_same_seed_same_sequence(self, meta_tasks):
        """Test draws depend only on the seed"""
        sampler_a, sampler_b = TaskSampler(meta_tasks, seed=4), TaskSampler(meta_tasks, seed=4)
        labels_a = [sampler_a.sample().label for _ in range(20)]
        labels_b = [sampler_b.sample().label for _ in range(20)]
        assert labels_a == labels_b

    def test_covers_every_task(self, meta_tasks):
        """Test uniform draws reach all tasks"""
        sampler = TaskSampler(meta_tasks, seed=0)
        assert {sampler.sample().label for _ in range(100)} == set(THETAS)
        assert len(sampler) == 3
        assert sampler.k == 3

    def test_rejects_empty_and_mixed(self, meta_tasks):
        """Test the sampler needs tasks of one feature dimension"""
        with pytest.raises(ValueError):
            TaskSampler([], seed=0)
        odd = MetaTask(
            label="odd",
            mdp=meta_tasks[0].mdp,
            features=random_features(n_states=4, n_actions=3, k=2, seed=0),
            demos=meta_tasks[0].demos,
        )
        with pytest.raises(ValueError):
            TaskSampler(meta_tasks + [odd], seed=0)


@pytest.mark.unit
class TestReptileMeta:
    """Test suite for reptile_meta"""

    def test_zero_outer_lr_keeps_phi(self, meta_tasks):
        """Test alpha = 0 leaves phi_0 unchanged"""
        phi0 = np.array([0.1, -0.2, 0.3])
        state = reptile_meta(TaskSampler(meta_tasks, seed=1), 0.1, 2, 0.0, 4, phi0=phi0)
        np.testing.assert_array_equal(state.phi, phi0)
        assert len(state.history) == 4

    def test_unit_outer_lr_single_task_equals_fit_single(self, meta_tasks):
        """Test alpha = 1 on one task chains N * T plain gradient steps"""
        task = meta_tasks[0]
        state = reptile_meta(TaskSampler([task], seed=0), 0.05, 3, 1.0, 4)
        options = FitOptions(learning_rate=0.05, max_iter=12, grad_tol=0.0, step_halving=False)
        theta, _ = fit_single(task.mdp, task.features, task.demos, options)
        np.testing.assert_array_equal(state.phi, theta)

    def test_unit_outer_lr_follows_inner_loop(self, meta_tasks):
        """Test alpha = 1 sets phi to theta_N after every step"""
        state = reptile_meta(TaskSampler(meta_tasks, seed=2), 0.1, 2, 1.0, 3)
        for previous, step in zip(state.history, state.history[1:]):
            np.testing.assert_array_equal(step.start_phi, previous.end_theta)
        np.testing.assert_array_equal(state.phi, state.history[-1].end_theta)

    def test_zero_inner_lr_never_moves(self, meta_tasks):
        """Test an identity inner loop keeps phi for any alpha"""
        phi0 = np.array([0.5, 0.5, -0.5])
        state = reptile_meta(TaskSampler(meta_tasks, seed=3), 0.0, 3, 0.7, 5, phi0=phi0)
        np.testing.assert_allclose(state.phi, phi0, rtol=1e-12)

    def test_phi_stays_between_start_and_inner_result(self, meta_tasks):
        """Test each outer step is a convex combination"""
        alpha = 0.3
        state = reptile_meta(TaskSampler(meta_tasks, seed=5), 0.1, 2, alpha, 4)
        phis = [step.start_phi for step in state.history[1:]] + [state.phi]
        for step, phi in zip(state.history, phis):
            np.testing.assert_allclose(phi, (1 - alpha) * step.start_phi + alpha * step.end_theta)

    def test_metadata_and_history(self, meta_tasks):
        """Test the returned state records its settings"""
        sampler = TaskSampler(meta_tasks, seed=9)
        seen = []
        state = reptile_meta(sampler, 0.1, 2, 0.5, 3, progress=lambda step, phi: seen.append(step.outer_step))
        assert isinstance(state, MetaState)
        assert (state.outer_lr, state.inner_steps, state.inner_lr, state.outer_iters, state.seed) == (
            0.5, 2, 0.1, 3, 9,
        )
        assert [step.outer_step for step in state.history] == [1, 2, 3]
        assert seen == [1, 2, 3]

    def test_deterministic(self, meta_tasks):
        """Test identical seeds give identical phi"""
        first = reptile_meta(TaskSampler(meta_tasks, seed=7), 0.1, 2, 0.5, 4)
        second = reptile_meta(TaskSampler(meta_tasks, seed=7), 0.1, 2, 0.5, 4)
        np.testing.assert_array_equal(first.phi, second.phi)

    @pytest.mark.parametrize("kwargs", [
        {"outer_iters": 0},
        {"inner_steps": 0},
        {"outer_lr": 1.5},
        {"outer_lr": -0.1},
    ])
    def test_rejects_invalid_settings(self, meta_tasks, kwargs):
        """Test T >= 1, N >= 1 and alpha in [0, 1]"""
        settings = {"inner_lr": 0.1, "inner_steps": 2, "outer_lr": 0.5, "outer_iters": 2, **kwargs}
        with pytest.raises(ValueError):
            reptile_meta(TaskSampler(meta_tasks, seed=0), **settings)

    def test_inner_failure_names_task(self, meta_tasks):
        """Test planner failures are wrapped with the task label"""
        with pytest.raises(TaskFailedException) as info:
            reptile_meta(TaskSampler(meta_tasks[1:2], seed=0), 0.1, 2, 0.5, 2, planner_max_iter=1)
        assert info.value.task_label == "b"
        assert isinstance(info.value.cause, PlannerConvergenceException)


@pytest.mark.unit
class TestFinetune:
    """Test suite for finetune"""

    @pytest.fixture
    def meta_state(self):
        return MetaState(
            phi=np.array([0.2, -0.1, 0.05]), outer_lr=0.5, inner_steps=2,
            inner_lr=0.1, outer_iters=3, seed=0,
        )

    def test_zero_steps_returns_phi(self, meta_tasks, meta_state):
        """Test steps = 0 returns phi unchanged"""
        task = meta_tasks[0]
        theta = finetune(meta_state, task.mdp, task.features, task.demos, steps=0, lr=0.1)
        np.testing.assert_array_equal(theta, meta_state.phi)
        theta[0] = 99.0
        assert meta_state.phi[0] == 0.2

    def test_zero_steps_allows_empty_demos(self, meta_tasks, meta_state):
        """Test a zero-shot target finetunes to phi"""
        task = meta_tasks[0]
        empty = DemoSet.empty("a", horizon=60)
        theta = finetune(meta_state, task.mdp, task.features, empty, steps=0, lr=0.1)
        np.testing.assert_array_equal(theta, meta_state.phi)

    def test_empty_demos_with_steps(self, meta_tasks, meta_state):
        """Test gradient steps need demonstrations"""
        task = meta_tasks[0]
        with pytest.raises(EmptyDemoSetException):
            finetune(meta_state, task.mdp, task.features, DemoSet.empty("a", horizon=60), steps=2, lr=0.1)

    def test_matches_inner_loop(self, meta_tasks, meta_state):
        """Test finetuning is the inner loop started at phi"""
        task = meta_tasks[2]
        theta = finetune(meta_state, task.mdp, task.features, task.demos, steps=4, lr=0.1)
        expected = inner_loop(task.mdp, task.features, task.demo_counts, meta_state.phi, 0.1, 4)
        np.testing.assert_array_equal(theta, expected)
        again = finetune(meta_state, task.mdp, task.features, task.demos, steps=4, lr=0.1)
        np.testing.assert_array_equal(theta, again)

    def test_negative_steps(self, meta_tasks, meta_state):
        """Test steps must be non-negative"""
        task = meta_tasks[0]
        with pytest.raises(ValueError):
            finetune(meta_state, task.mdp, task.features, task.demos, steps=-1, lr=0.1)


@pytest.mark.unit
class TestInnerLoop:
    """Test suite for the inner gradient steps"""

    @pytest.mark.parametrize("steps", [2, 3, 5])
    def test_several_steps_differ_from_one_gradient_step(self, meta_tasks, steps):
        """Test theta_N - phi is neither theta_1 - phi nor N times it"""
        task = meta_tasks[0]
        phi = np.array([0.1, 0.2, -0.3])
        one = inner_loop(task.mdp, task.features, task.demo_counts, phi, 0.1, 1) - phi
        many = inner_loop(task.mdp, task.features, task.demo_counts, phi, 0.1, steps) - phi
        assert not np.allclose(many, one, atol=1e-6)
        assert not np.allclose(many, steps * one, atol=1e-6)

    def test_single_step_is_gradient_step(self, meta_tasks):
        """Test N = 1 moves phi by lr times the MCE gradient"""
        task = meta_tasks[1]
        phi = np.zeros(3)
        theta = inner_loop(task.mdp, task.features, task.demo_counts, phi, 0.1, 1)
        np.testing.assert_allclose(
            theta, 0.1 * mce_gradient(task.mdp, task.features, phi, task.demo_counts), rtol=1e-12
        )
