"""
Unit tests for demonstration sampling and visitation counts
"""
import numpy as np
import pytest

from src.domain.entities.tabular_mdp import FeatureMap
from src.domain.entities.trajectory import DemoSet
from src.domain.exceptions.domain_exceptions import DimensionMismatchException, EmptyDemoSetException
from src.domain.services.demonstrations import (
    discounted_visitation_counts,
    empirical_feature_counts,
    sample_trajectories,
    trajectory_returns,
)
from src.domain.services.exact_planner import finite_horizon_return
from src.domain.services.gridworld import build_mdp
from src.domain.services.soft_planner import feature_expectations, occupancy, soft_value_iteration


@pytest.mark.unit
class TestSampleTrajectories:
    """Test suite for seeded rollouts"""

    def test_shapes_and_metadata(self, small_mdp):
        """Test n trajectories of H + 1 steps carrying seed and label"""
        demos = sample_trajectories(small_mdp, soft_value_iteration(small_mdp), 5, 7, seed=1, task_label="A")
        assert demos.states.shape == (7, 6)
        assert demos.actions.shape == (7, 6)
        assert (demos.seed, demos.task_label, demos.horizon) == (1, "A", 5)

    def test_same_seed_same_rollouts(self, small_mdp):
        """Test rollouts are a pure function of the seed"""
        policy = soft_value_iteration(small_mdp)
        first = sample_trajectories(small_mdp, policy, 10, 20, seed=42)
        second = sample_trajectories(small_mdp, policy, 10, 20, seed=42)
        other = sample_trajectories(small_mdp, policy, 10, 20, seed=43)
        np.testing.assert_array_equal(first.states, second.states)
        np.testing.assert_array_equal(first.actions, second.actions)
        assert not np.array_equal(first.states, other.states)

    def test_steps_follow_support(self, small_mdp):
        """Test starts and moves only use positive-probability entries"""
        mdp = small_mdp.with_reward(small_mdp.reward)
        demos = sample_trajectories(mdp, np.array([0, 1, 2, 0]), 8, 50, seed=0)
        assert np.all(mdp.initial_dist[demos.states[:, 0]] > 0)
        np.testing.assert_array_equal(demos.actions, np.array([0, 1, 2, 0])[demos.states])
        moves = mdp.transitions[demos.states[:, :-1], demos.actions[:, :-1], demos.states[:, 1:]]
        assert np.all(moves > 0)

    def test_deterministic_chain(self, chain_mdp):
        """Test a deterministic MDP and policy give one trajectory"""
        demos = sample_trajectories(chain_mdp, np.array([1, 0]), 3, 4, seed=9)
        np.testing.assert_array_equal(demos.states, np.tile([0, 1, 1, 1], (4, 1)))

    @pytest.mark.parametrize("horizon,n", [(0, 1), (1, 0)])
    def test_invalid_sizes(self, small_mdp, horizon, n):
        """Test horizon and count must be at least 1"""
        with pytest.raises(ValueError):
            sample_trajectories(small_mdp, soft_value_iteration(small_mdp), horizon, n, seed=0)

    def test_expert_return_matches_exact(self, open_5x5_grid, tasks):
        """Test the mean undiscounted return capped at H against its exact value"""
        mdp, _ = build_mdp(open_5x5_grid, tasks["A"], discount=0.95)
        expert = soft_value_iteration(mdp)
        horizon = 30
        demos = sample_trajectories(mdp, expert, horizon, 4000, seed=12)
        returns = trajectory_returns(demos, mdp.reward)
        exact = finite_horizon_return(mdp, mdp.reward, expert, horizon)
        stderr = returns.std(ddof=1) / np.sqrt(returns.size)
        assert abs(returns.mean() - exact) <= 3 * stderr


@pytest.mark.unit
class TestVisitationCounts:
    """Test suite for discounted visitation and feature counts"""

    def _demos(self) -> DemoSet:
        return DemoSet(
            task_label="A",
            states=np.array([[0, 1], [1, 1]]),
            actions=np.array([[1, 0], [0, 0]]),
            horizon=1,
            seed=0,
        )

    def test_hand_computed_counts(self):
        """Test (1/N) sum_j sum_t gamma^t indicators"""
        counts = discounted_visitation_counts(self._demos(), 2, 2, discount=0.5)
        np.testing.assert_allclose(counts, [[0.0, 0.5], [(0.5 + 1.0 + 0.5) / 2, 0.0]])

    def test_counts_total(self, small_mdp):
        """Test each trajectory contributes sum_t gamma^t"""
        demos = sample_trajectories(small_mdp, soft_value_iteration(small_mdp), 6, 10, seed=2)
        counts = discounted_visitation_counts(demos, 4, 3, 0.9)
        assert counts.sum() == pytest.approx(sum(0.9 ** t for t in range(7)))

    def test_feature_counts(self, small_features):
        """Test phi(D) = counts . phi"""
        demos = self._demos()
        padded = DemoSet(
            task_label="A", states=demos.states + 2, actions=demos.actions + 1, horizon=1, seed=0
        )
        counts = discounted_visitation_counts(padded, 4, 3, 0.9)
        np.testing.assert_allclose(
            empirical_feature_counts(padded, small_features, 0.9),
            np.einsum("sa,sak->k", counts, small_features.table),
        )

    def test_empty_demos(self):
        """Test counts are undefined without demonstrations"""
        with pytest.raises(EmptyDemoSetException):
            discounted_visitation_counts(DemoSet.empty("A", 3), 2, 2, 0.9)

    def test_out_of_range_indices(self):
        """Test indices beyond the MDP raise"""
        with pytest.raises(DimensionMismatchException):
            discounted_visitation_counts(self._demos(), 1, 2, 0.9)

    def test_trajectory_returns(self):
        """Test per-trajectory discounted return"""
        reward = np.array([[0.0, 1.0], [2.0, 3.0]])
        np.testing.assert_allclose(trajectory_returns(self._demos(), reward, 0.5), [1.0 + 1.0, 2.0 + 1.0])


@pytest.mark.unit
class TestSamplingStatistics:
    """Rollout statistics against the exact quantities they estimate"""

    def test_action_frequencies_follow_policy(self, small_mdp):
        """Test per-state action frequencies lie within 3 sigma of pi"""
        policy = soft_value_iteration(small_mdp)
        demos = sample_trajectories(small_mdp, policy, 20, 5_000, seed=17)
        counts = np.zeros((4, 3))
        np.add.at(counts, (demos.states.ravel(), demos.actions.ravel()), 1.0)
        visits = counts.sum(axis=1, keepdims=True)
        assert np.all(visits > 0)
        sigma = np.sqrt(policy.pi * (1 - policy.pi) / visits)
        assert np.all(np.abs(counts / visits - policy.pi) <= 3 * sigma + 1e-3)

    def test_empirical_counts_approach_feature_expectations(self, small_mdp):
        """Test phi(D) from 10^4 rollouts is within 2% of F in L1"""
        policy = soft_value_iteration(small_mdp)
        state_indicators = FeatureMap(table=np.repeat(np.eye(4)[:, None, :], 3, axis=1))
        demos = sample_trajectories(small_mdp, policy, 140, 10_000, seed=23)
        empirical = empirical_feature_counts(demos, state_indicators, small_mdp.discount)
        expected = feature_expectations(occupancy(small_mdp, policy), state_indicators)
        assert np.abs(empirical - expected).sum() <= 0.02 * np.abs(expected).sum()


@pytest.mark.unit
class TestCountAlgebra:
    """Test suite for how counts combine across demo sets"""

    def test_trajectory_order_is_irrelevant(self, small_mdp):
        """Test permuting trajectories leaves the counts unchanged"""
        demos = sample_trajectories(small_mdp, soft_value_iteration(small_mdp), 12, 30, seed=4)
        order = np.random.default_rng(0).permutation(demos.n)
        shuffled = DemoSet(
            task_label=demos.task_label, states=demos.states[order], actions=demos.actions[order],
            horizon=demos.horizon, seed=demos.seed,
        )
        np.testing.assert_allclose(
            discounted_visitation_counts(shuffled, 4, 3, 0.9),
            discounted_visitation_counts(demos, 4, 3, 0.9),
            rtol=1e-12,
        )

    def test_concatenation_is_weighted_average(self, small_mdp, small_features):
        """Test counts of stacked sets average the parts weighted by size"""
        policy = soft_value_iteration(small_mdp)
        first = sample_trajectories(small_mdp, policy, 12, 7, seed=5)
        second = sample_trajectories(small_mdp, policy, 12, 19, seed=6)
        combined = DemoSet.concatenate([first, second], task_label="pooled")
        expected = (
            7 * empirical_feature_counts(first, small_features, 0.9)
            + 19 * empirical_feature_counts(second, small_features, 0.9)
        ) / 26
        np.testing.assert_allclose(
            empirical_feature_counts(combined, small_features, 0.9), expected, rtol=1e-10, atol=1e-12
        )
