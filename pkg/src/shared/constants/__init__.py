"""
Shared Constants

Numerical defaults used across the planners, learners and the experiment
harness. Every value here can be overridden through Settings or the
experiment config file.
"""

# Planner defaults
PLANNER_TOL = 1e-10
PLANNER_MAX_ITER = 100_000

# Validation tolerance for probability rows and initial distributions
STOCHASTIC_ATOL = 1e-9

# Policy evaluation residual bound
POLICY_EVAL_RESIDUAL = 1e-9

# Experiment defaults
DEFAULT_DISCOUNT = 0.95
DEFAULT_HORIZON = 200
DEFAULT_SLIP_INTENDED = 0.8

# Fitting defaults (gridworld with one_hot_state features)
DEFAULT_LEARNING_RATE = 0.1
DEFAULT_FIT_MAX_ITER = 300
DEFAULT_GRAD_TOL = 1e-3
DEFAULT_DIVERGENCE_PATIENCE = 50

# Regularisation sweep
DEFAULT_LAMBDA = 0.1
DEFAULT_LAMBDA_GRID = (0.01, 0.1, 1.0)

# Reproducibility
RNG_ALGORITHM = "PCG64"

# Normal-approximation 95% confidence interval multiplier
CI95_Z = 1.96

# Result table status values
STATUS_OK = "ok"
STATUS_FAILED = "failed"
