"""Domain services"""
from .demonstrations import (
    discounted_visitation_counts,
    empirical_feature_counts,
    sample_trajectories,
    trajectory_returns,
)
from .exact_planner import (
    as_policy_table,
    deterministic_to_stochastic,
    finite_horizon_return,
    greedy_policy,
    policy_evaluation,
    policy_value,
    value_iteration,
)
from .gridworld import (
    Gridworld,
    build_mdp,
    canonical_tasks,
    feature_map,
    ground_truth_reward,
    load_grid,
    parse_grid,
    random_task_family,
    render_grid,
)
from .mdp_validation import MdpValidator, validate_mdp
from .soft_planner import (
    causal_entropy,
    expected_log_likelihood,
    feature_expectations,
    occupancy,
    soft_value_iteration,
    state_marginals,
    trajectory_log_likelihood,
)

__all__ = [
    "discounted_visitation_counts",
    "empirical_feature_counts",
    "sample_trajectories",
    "trajectory_returns",
    "as_policy_table",
    "deterministic_to_stochastic",
    "finite_horizon_return",
    "greedy_policy",
    "policy_evaluation",
    "policy_value",
    "value_iteration",
    "Gridworld",
    "build_mdp",
    "canonical_tasks",
    "feature_map",
    "ground_truth_reward",
    "load_grid",
    "parse_grid",
    "random_task_family",
    "render_grid",
    "MdpValidator",
    "validate_mdp",
    "causal_entropy",
    "expected_log_likelihood",
    "feature_expectations",
    "occupancy",
    "soft_value_iteration",
    "state_marginals",
    "trajectory_log_likelihood",
]
