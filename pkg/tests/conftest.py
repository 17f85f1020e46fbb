"""
Pytest configuration and fixtures for all tests
"""
import logging
from pathlib import Path

import numpy as np
import pytest

from src.domain.entities.tabular_mdp import TabularMdp
from src.domain.services.gridworld import canonical_tasks, load_grid
from src.infrastructure.logging import logger as logger_module

from .factories import random_features, random_mdp

REPO_ROOT = Path(__file__).resolve().parent.parent
GRID_DIR = REPO_ROOT / "data" / "grids"


@pytest.fixture(autouse=True)
def reset_loggers():
    """
    Undo ExperimentLogger side effects between tests

    The logger detaches the library logger from the root logger; caplog
    needs propagation back.
    """
    yield
    logger_module._logger_instance = None
    for name in (logger_module.LIBRARY_LOGGER, "mtirl"):
        log = logging.getLogger(name)
        log.handlers = []
        log.propagate = True
        log.setLevel(logging.NOTSET)


@pytest.fixture
def grid_dir() -> Path:
    return GRID_DIR


@pytest.fixture
def jungle_grid():
    return load_grid(GRID_DIR / "jungle_9x9.txt")


@pytest.fixture
def open_5x5_grid():
    return load_grid(GRID_DIR / "open_5x5.txt")


@pytest.fixture
def open_3x3_grid():
    return load_grid(GRID_DIR / "open_3x3.txt")


@pytest.fixture
def tasks():
    return canonical_tasks()


@pytest.fixture
def small_mdp():
    """Random 4-state, 3-action MDP with gamma 0.9 and a reward"""
    return random_mdp(n_states=4, n_actions=3, discount=0.9, seed=7)


@pytest.fixture
def small_features():
    return random_features(n_states=4, n_actions=3, k=2, seed=11)


@pytest.fixture
def chain_mdp():
    """
    Two states, two actions, deterministic: action 0 stays, action 1 switches.
    Reward 1 in state 1, 0 in state 0; start in state 0.
    """
    transitions = np.zeros((2, 2, 2))
    transitions[0, 0, 0] = transitions[1, 0, 1] = 1.0
    transitions[0, 1, 1] = transitions[1, 1, 0] = 1.0
    return TabularMdp.from_state_reward(
        transitions, discount=0.5, initial_dist=[1.0, 0.0], state_reward=[0.0, 1.0]
    )
