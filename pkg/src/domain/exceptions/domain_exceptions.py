"""
Domain Exceptions

Errors raised by planners, learners and the experiment harness.
"""


class IrlDomainException(Exception):
    """Base exception for all domain-related errors"""
    pass


class PlannerConvergenceException(IrlDomainException):
    """Raised when a fixed-point planner does not reach its tolerance"""

    def __init__(self, planner: str, iterations: int, residual: float, tol: float):
        self.planner = planner
        self.iterations = iterations
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"{planner} did not converge after {iterations} iterations "
            f"(residual {residual:.3e} > tol {tol:.1e})"
        )


class SingularSystemException(IrlDomainException):
    """Raised when the policy-evaluation linear system cannot be solved"""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Singular policy-evaluation system: {reason}")


class ZeroProbabilityActionException(IrlDomainException):
    """Raised in strict mode when a trajectory takes an action with probability 0"""

    def __init__(self, state: int, action: int, step: int):
        self.state = state
        self.action = action
        self.step = step
        super().__init__(
            f"Action {action} has zero probability in state {state} (step {step})"
        )


class EmptyDemoSetException(IrlDomainException):
    """Raised when an operation needs at least one trajectory"""

    def __init__(self, task_label: str):
        self.task_label = task_label
        super().__init__(f"Demo set for task '{task_label}' is empty")


class DimensionMismatchException(IrlDomainException):
    """Raised when arrays passed together disagree on a dimension"""

    def __init__(self, what: str, expected, actual):
        self.what = what
        self.expected = expected
        self.actual = actual
        super().__init__(f"Dimension mismatch for {what}: expected {expected}, got {actual}")


class FitDivergenceException(IrlDomainException):
    """Raised when the fit objective keeps decreasing"""

    def __init__(self, task_label: str, iteration: int, streak: int, last_loss: float):
        self.task_label = task_label
        self.iteration = iteration
        self.streak = streak
        self.last_loss = last_loss
        super().__init__(
            f"Fit for task '{task_label}' diverged at iteration {iteration}: "
            f"objective decreased {streak} consecutive steps (last {last_loss:.6g})"
        )


class TaskFailedException(IrlDomainException):
    """Raised when a single task fails inside a multi-task or meta loop"""

    def __init__(self, task_label: str, cause: Exception):
        self.task_label = task_label
        self.cause = cause
        super().__init__(f"Task '{task_label}' failed: {cause}")


class EmptyGroupException(IrlDomainException):
    """Raised when an aggregation group contains no usable rows"""

    def __init__(self, group: tuple):
        self.group = group
        super().__init__(f"Aggregation group has no successful rows: {group}")


class DemoFileNotFoundException(IrlDomainException):
    """Raised when an expected demonstration file is missing"""

    def __init__(self, path: str):
        self.path = path
        super().__init__(f"Demo file not found: {path} (run gen-demos first)")
