"""
Policy Evaluation DTO
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class PolicyEvaluation:
    """Exact values of stored weights' greedy policy and its references."""
    task_label: str
    value: float
    oracle_value: float
    expert_value: float
    rendered_policy: str

    def to_text(self) -> str:
        return (
            f"task: {self.task_label}\n"
            f"value: {self.value:.6f}\n"
            f"oracle_value: {self.oracle_value:.6f}\n"
            f"expert_value: {self.expert_value:.6f}\n"
            f"policy:\n{self.rendered_policy}"
        )
