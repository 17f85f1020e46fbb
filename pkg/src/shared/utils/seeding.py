"""
Seed utilities.

Every random stream in the toolkit comes from a numpy ``Generator`` built on
an explicitly named bit generator, so a run can be replayed from its recorded
seeds. Derived seeds are computed from stable hashes (never ``hash()``, which
is salted per process).
"""
import zlib
from typing import Union

import numpy as np

from src.shared.constants import RNG_ALGORITHM

SeedLabel = Union[str, int]


def make_rng(seed: int) -> np.random.Generator:
    """
    Build the toolkit's standard generator for a seed.

    Args:
        seed: Non-negative integer seed

    Returns:
        numpy Generator backed by PCG64
    """
    if seed < 0:
        raise ValueError(f"Seed must be non-negative, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def derive_seed(base_seed: int, *labels: SeedLabel) -> int:
    """
    Derive an independent child seed from a base seed and a path of labels.

    The same (base_seed, labels) always yields the same child seed, on any
    machine and in any process.

    Args:
        base_seed: Experiment-level seed
        *labels: Strings or integers naming the stream (task, role, ...)

    Returns:
        63-bit non-negative integer seed
    """
    entropy = [int(base_seed)]
    for label in labels:
        if isinstance(label, str):
            entropy.append(zlib.crc32(label.encode("utf-8")))
        else:
            entropy.append(int(label))
    state = np.random.SeedSequence(entropy).generate_state(2, dtype=np.uint32)
    return int((int(state[0]) << 31) ^ int(state[1]))


def rng_identifier() -> str:
    """Identifier of the bit generator recorded in output metadata."""
    return f"numpy.random.{RNG_ALGORITHM}/numpy-{np.__version__}"
