"""
Demo Store

Line-oriented text files for DemoSets:

    # mtirl-demos v1
    # task_label: A
    # horizon: 200
    # seed: 1234
    # n: 10
    # rng: numpy.random.PCG64/numpy-2.2.6
    s0,a0 s1,a1 ... sH,aH        (one trajectory per line)
"""
import logging
from pathlib import Path
from typing import Dict, List

import numpy as np

from src.domain.entities.trajectory import DemoSet
from src.domain.exceptions.domain_exceptions import DemoFileNotFoundException
from src.domain.exceptions.validation_exceptions import (
    NegativeIndexException,
    ValidationException,
)
from src.domain.repositories.demo_repository import DemoRepository
from src.shared.utils.seeding import rng_identifier

logger = logging.getLogger(__name__)

MAGIC = "# mtirl-demos v1"
HEADER_KEYS = ("task_label", "horizon", "seed", "n", "rng")


class TextDemoRepository(DemoRepository):
    """DemoSet persistence in the documented text format"""

    def save(self, demo_set: DemoSet, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        if "\n" in demo_set.task_label:
            raise ValueError("Task labels cannot contain newlines")
        header = {
            "task_label": demo_set.task_label,
            "horizon": demo_set.horizon,
            "seed": demo_set.seed,
            "n": demo_set.n,
            "rng": rng_identifier(),
        }
        lines = [MAGIC] + [f"# {key}: {header[key]}" for key in HEADER_KEYS]
        for states, actions in zip(demo_set.states.tolist(), demo_set.actions.tolist()):
            lines.append(" ".join(f"{s},{a}" for s, a in zip(states, actions)))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        logger.debug("Wrote %d trajectories to %s", demo_set.n, path)
        return path

    def load(self, path: Path) -> DemoSet:
        """
        Raises:
            DemoFileNotFoundException: If the file does not exist
            ValidationException: If the file does not follow the format
        """
        path = Path(path)
        if not path.is_file():
            raise DemoFileNotFoundException(str(path))
        lines = path.read_text(encoding="utf-8").splitlines()
        if not lines or lines[0].strip() != MAGIC:
            raise ValidationException(f"{path}: missing '{MAGIC}' header", "demos")

        header: Dict[str, str] = {}
        body: List[str] = []
        for number, line in enumerate(lines[1:], start=2):
            if line.startswith("#"):
                key, sep, value = line[1:].partition(":")
                if not sep:
                    raise ValidationException(f"{path}:{number}: malformed header line", "demos")
                header[key.strip()] = value.strip()
            elif line.strip():
                body.append(line)

        missing = [key for key in ("task_label", "horizon", "seed", "n") if key not in header]
        if missing:
            raise ValidationException(f"{path}: missing header keys {missing}", "demos")
        horizon, n = int(header["horizon"]), int(header["n"])
        if len(body) != n:
            raise ValidationException(f"{path}: header says n={n} but found {len(body)} trajectories", "demos")

        states = np.zeros((n, horizon + 1), dtype=np.int64)
        actions = np.zeros((n, horizon + 1), dtype=np.int64)
        for j, line in enumerate(body):
            pairs = line.split()
            if len(pairs) != horizon + 1:
                raise ValidationException(
                    f"{path}: trajectory {j} has {len(pairs)} steps, expected {horizon + 1}", "demos"
                )
            try:
                parsed = [tuple(int(x) for x in pair.split(",")) for pair in pairs]
                states[j], actions[j] = zip(*parsed)
            except ValueError as e:
                raise ValidationException(f"{path}: trajectory {j} is malformed ({e})", "demos") from e
            if min(states[j].min(), actions[j].min()) < 0:
                raise NegativeIndexException(
                    f"trajectory {j} in {path}", int(min(states[j].min(), actions[j].min()))
                )

        return DemoSet(
            task_label=header["task_label"],
            states=states,
            actions=actions,
            horizon=horizon,
            seed=int(header["seed"]),
        )


_default_repository = TextDemoRepository()


def save_demo_set(demo_set: DemoSet, path: Path) -> Path:
    return _default_repository.save(demo_set, path)


def load_demo_set(path: Path) -> DemoSet:
    return _default_repository.load(path)
