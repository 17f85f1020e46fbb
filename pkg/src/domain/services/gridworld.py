"""
Gridworld Domain Service

Builds slip-dynamics gridworlds from grid text as TabularMdp instances,
together with their terrain and one-hot state feature maps.
"""
import logging
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from src.shared.utils.seeding import make_rng

from ..entities.grid_spec import Cell, GridSpec, TaskRewardSpec
from ..entities.tabular_mdp import FeatureMap, TabularMdp
from ..exceptions.validation_exceptions import (
    AllWallGridException,
    EmptyGridException,
    RaggedRowsException,
    UnknownCellException,
)
from ..value_objects.feature_kind import FeatureKind
from ..value_objects.grid_action import GridAction
from ..value_objects.terrain import FEATURE_TERRAINS, START_CHAR, Terrain

logger = logging.getLogger(__name__)

TASK_A = "A"
TASK_B = "B"
TASK_A_PLUS_B = "A+B"


def parse_grid(text: str, slip: float = 0.8) -> GridSpec:
    """
    Decode grid text

    One row per line over the alphabet '#' wall, 'd' dirt, 'g' grass,
    'l' lava, 'G' gold, 'S' silver and '@' (dirt start cell). Trailing
    newlines are ignored.

    Args:
        text: Grid text
        slip: Probability of the intended move

    Returns:
        GridSpec; start_cells empty means a uniform start

    Raises:
        EmptyGridException: If there are no rows
        RaggedRowsException: If rows differ in width
        UnknownCellException: If a character is outside the alphabet
        AllWallGridException: If every cell is a wall
    """
    lines = text.replace("\r\n", "\n").rstrip("\n").split("\n")
    if not lines or lines == [""]:
        raise EmptyGridException()

    width = len(lines[0])
    cells: List[Tuple[Terrain, ...]] = []
    starts = set()
    for r, line in enumerate(lines):
        if len(line) != width:
            raise RaggedRowsException(r, len(line), width)
        row = []
        for c, char in enumerate(line):
            try:
                row.append(Terrain.from_char(char))
            except ValueError:
                raise UnknownCellException(r, c, char)
            if char == START_CHAR:
                starts.add((r, c))
        cells.append(tuple(row))

    if not any(t.is_passable for row in cells for t in row):
        raise AllWallGridException()
    return GridSpec(cells=tuple(cells), start_cells=frozenset(starts), slip=slip)


def load_grid(path: Union[str, Path], slip: float = 0.8) -> GridSpec:
    """Read and parse a grid file."""
    return parse_grid(Path(path).read_text(encoding="utf-8"), slip=slip)


def _resolve_move(grid: GridSpec, cell: Cell, action: GridAction) -> Cell:
    dr, dc = action.offset
    row, col = cell[0] + dr, cell[1] + dc
    if not grid.in_bounds(row, col) or not grid.cells[row][col].is_passable:
        return cell
    return (row, col)


def build_transitions(grid: GridSpec) -> np.ndarray:
    """
    Slip transition tensor over the non-wall cells

    Each action moves as intended with probability grid.slip and to each
    orthogonal neighbour with (1 - slip) / 2. Moves into walls or off the
    grid stay in place.
    """
    cells = grid.passable_cells()
    index = {cell: s for s, cell in enumerate(cells)}
    n_states, n_actions = len(cells), len(GridAction)
    transitions = np.zeros((n_states, n_actions, n_states))
    for s, cell in enumerate(cells):
        for action in GridAction:
            transitions[s, action, index[_resolve_move(grid, cell, action)]] += grid.slip
            for side in action.orthogonal:
                transitions[s, action, index[_resolve_move(grid, cell, side)]] += grid.slip_orthogonal
    return transitions


def initial_distribution(grid: GridSpec) -> np.ndarray:
    """Uniform over start cells when any are marked, else over all non-wall cells."""
    cells = grid.passable_cells()
    if grid.start_cells:
        mask = np.array([cell in grid.start_cells for cell in cells], dtype=float)
    else:
        mask = np.ones(len(cells))
    return mask / mask.sum()


def feature_map(grid: GridSpec, kind: FeatureKind) -> FeatureMap:
    """
    Action-independent features

    terrain: K=5 indicator of the cell's terrain (dirt, grass, lava, gold, silver)
    one_hot_state: K=n_states indicator of the state
    """
    cells = grid.passable_cells()
    n_states, n_actions = len(cells), len(GridAction)
    if kind == FeatureKind.TERRAIN:
        per_state = np.zeros((n_states, len(FEATURE_TERRAINS)))
        for s, cell in enumerate(cells):
            per_state[s, grid.terrain_at(cell).feature_index] = 1.0
    else:
        per_state = np.eye(n_states)
    table = np.repeat(per_state[:, None, :], n_actions, axis=1)
    return FeatureMap(table=table, kind=kind)


def ground_truth_reward(grid: GridSpec, task: TaskRewardSpec) -> np.ndarray:
    """R(s, a) = w_task . terrain features of s"""
    return feature_map(grid, FeatureKind.TERRAIN).reward(task.as_vector())


def build_mdp(
    grid: GridSpec,
    task: TaskRewardSpec,
    discount: float,
    kind: FeatureKind = FeatureKind.ONE_HOT_STATE,
) -> Tuple[TabularMdp, FeatureMap]:
    """
    Gridworld MDP with the task's ground-truth reward and a feature map

    Returns:
        Tuple (mdp, features); states are the non-wall cells in row-major order
    """
    transitions = build_transitions(grid)
    n_states, n_actions = transitions.shape[0], transitions.shape[1]
    mdp = TabularMdp(
        n_states=n_states,
        n_actions=n_actions,
        transitions=transitions,
        discount=discount,
        initial_dist=initial_distribution(grid),
        reward=ground_truth_reward(grid, task),
    )
    return mdp, feature_map(grid, kind)


def render_grid(grid: GridSpec, policy: Optional[np.ndarray] = None) -> str:
    """
    Text dump of the grid

    Without a policy the grid text is returned. With a deterministic policy
    (one action per state) every non-wall cell shows the action's arrow.
    """
    if policy is None:
        return grid.to_text()
    policy = np.asarray(policy, dtype=np.int64)
    cells = grid.passable_cells()
    if policy.shape != (len(cells),):
        raise ValueError(f"Policy must have one action per state ({len(cells)}), got {policy.shape}")
    arrows = {cell: GridAction(int(a)).arrow for cell, a in zip(cells, policy)}
    lines = []
    for r, row in enumerate(grid.cells):
        lines.append("".join(arrows.get((r, c), Terrain.WALL.char) for c in range(len(row))))
    return "\n".join(lines) + "\n"


def canonical_tasks() -> Dict[str, TaskRewardSpec]:
    """
    Tasks A, B and A+B

    dirt 0, grass -1 and lava -10 are shared. A likes silver and is neutral
    about gold, B the opposite, A+B likes both.
    """
    shared = {"dirt": 0.0, "grass": -1.0, "lava": -10.0}
    return {
        TASK_A: TaskRewardSpec(**shared, gold=0.0, silver=5.0),
        TASK_B: TaskRewardSpec(**shared, gold=5.0, silver=0.0),
        TASK_A_PLUS_B: TaskRewardSpec(**shared, gold=5.0, silver=5.0),
    }


def random_task_family(
    n: int,
    seed: int,
    gold_range: Tuple[float, float] = (0.0, 5.0),
    silver_range: Tuple[float, float] = (0.0, 5.0),
    base: Optional[TaskRewardSpec] = None,
) -> Dict[str, TaskRewardSpec]:
    """
    Tasks sharing dirt/grass/lava weights with uniform random gold/silver weights

    Returns:
        Ordered mapping task_00, task_01, ... -> TaskRewardSpec
    """
    if n < 1:
        raise ValueError(f"Task family needs at least one task, got {n}")
    base = base or canonical_tasks()[TASK_A]
    rng = make_rng(seed)
    golds = rng.uniform(gold_range[0], gold_range[1], size=n)
    silvers = rng.uniform(silver_range[0], silver_range[1], size=n)
    return {
        f"task_{i:02d}": TaskRewardSpec(
            dirt=base.dirt, grass=base.grass, lava=base.lava,
            gold=float(gold), silver=float(silver),
        )
        for i, (gold, silver) in enumerate(zip(golds, silvers))
    }


class Gridworld:
    """
    A grid with one task's reward at a fixed discount

    Responsibilities:
        - Map cells to state indices and back
        - Provide the MDP, its feature maps and the ground-truth reward
    """

    def __init__(self, grid: GridSpec, task: TaskRewardSpec, discount: float):
        self.grid = grid
        self.task = task
        self.discount = discount
        self._cells = grid.passable_cells()
        self._index = {cell: s for s, cell in enumerate(self._cells)}

    @classmethod
    def from_file(
        cls,
        path: Union[str, Path],
        task: TaskRewardSpec,
        discount: float,
        slip: float = 0.8,
    ) -> 'Gridworld':
        return cls(load_grid(path, slip=slip), task, discount)

    @cached_property
    def mdp(self) -> TabularMdp:
        mdp, _ = build_mdp(self.grid, self.task, self.discount)
        return mdp

    @property
    def n_states(self) -> int:
        return len(self._cells)

    def features(self, kind: FeatureKind = FeatureKind.ONE_HOT_STATE) -> FeatureMap:
        return feature_map(self.grid, kind)

    def true_reward(self) -> np.ndarray:
        return self.mdp.reward

    def state_of_cell(self, cell: Cell) -> int:
        """
        Raises:
            ValueError: If the cell is a wall or off the grid
        """
        try:
            return self._index[tuple(cell)]
        except KeyError:
            raise ValueError(f"Cell {cell} is not a state")

    def cell_of_state(self, state: int) -> Cell:
        return self._cells[state]

    def render(self, policy: Optional[np.ndarray] = None) -> str:
        return render_grid(self.grid, policy)
