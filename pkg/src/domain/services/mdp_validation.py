"""
MDP Validator Domain Service

Checks the TabularMdp invariants and reports the first violation precisely.
"""
from typing import Tuple

import numpy as np

from src.shared.constants import STOCHASTIC_ATOL

from ..entities.tabular_mdp import TabularMdp
from ..exceptions.validation_exceptions import (
    DiscountOutOfRangeException,
    MdpValidationException,
    NonStochasticInitialDistributionException,
    NonStochasticTransitionException,
    ShapeMismatchException,
)


class MdpValidator:
    """
    Domain service for MDP validation

    Responsibilities:
        - Array shapes agree with n_states / n_actions
        - Transition rows and the initial distribution are stochastic
        - Discount lies in [0, 1)

    Checks run in that order; the first failing one is reported.
    """

    def __init__(self, atol: float = STOCHASTIC_ATOL):
        self.atol = atol

    def check(self, mdp: TabularMdp) -> Tuple[bool, str]:
        """
        Validate an MDP without raising

        Returns:
            Tuple of (is_valid, error_message)
        """
        try:
            self.validate(mdp)
        except MdpValidationException as e:
            return False, str(e)
        return True, ""

    def validate(self, mdp: TabularMdp) -> None:
        """
        Validate an MDP and raise on the first violated invariant

        Raises:
            ShapeMismatchException: If an array has the wrong shape
            NonStochasticTransitionException: If some T[s][a] is not a distribution
            NonStochasticInitialDistributionException: If mu0 is not a distribution
            DiscountOutOfRangeException: If gamma is outside [0, 1)
        """
        self._validate_shapes(mdp)
        self._validate_transitions(mdp)
        self._validate_initial_dist(mdp)
        if not 0.0 <= mdp.discount < 1.0:
            raise DiscountOutOfRangeException(mdp.discount)

    def _validate_shapes(self, mdp: TabularMdp) -> None:
        n_s, n_a = mdp.n_states, mdp.n_actions
        expected = {
            "transitions": (mdp.transitions.shape, (n_s, n_a, n_s)),
            "initial_dist": (mdp.initial_dist.shape, (n_s,)),
        }
        if mdp.reward is not None:
            expected["reward"] = (mdp.reward.shape, (n_s, n_a))
        for field, (actual, wanted) in expected.items():
            if actual != wanted:
                raise ShapeMismatchException(field, wanted, actual)

    def _validate_transitions(self, mdp: TabularMdp) -> None:
        transitions = mdp.transitions
        row_sums = transitions.sum(axis=2)
        bad = (
            ~np.isfinite(transitions).all(axis=2)
            | (transitions < 0).any(axis=2)
            | ~(np.abs(row_sums - 1.0) <= self.atol)
        )
        if bad.any():
            state, action = np.argwhere(bad)[0]
            raise NonStochasticTransitionException(
                int(state), int(action), float(row_sums[state, action])
            )

    def _validate_initial_dist(self, mdp: TabularMdp) -> None:
        mu0 = mdp.initial_dist
        total = float(mu0.sum())
        if not np.all(np.isfinite(mu0)) or np.any(mu0 < 0) or not abs(total - 1.0) <= self.atol:
            raise NonStochasticInitialDistributionException(total)


_default_validator = MdpValidator()


def validate_mdp(mdp: TabularMdp) -> None:
    """Validate with the default tolerance; raises MdpValidationException subclasses."""
    _default_validator.validate(mdp)
