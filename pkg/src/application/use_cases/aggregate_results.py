"""
Aggregate Results Use Case

Summarises result tables per (algorithm, target task, M, lambda) cell.
"""
import logging
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from src.domain.exceptions.domain_exceptions import EmptyGroupException
from src.domain.value_objects.aggregation_mode import AggregationMode
from src.infrastructure.persistence.result_store import FLOAT_FORMAT, KEY_COLUMNS, CsvResultRepository
from src.shared.constants import CI95_Z, STATUS_OK

logger = logging.getLogger(__name__)

GROUP_COLUMNS = ["algorithm", "target_task", "m", "lambda"]
SUMMARY_COLUMNS = GROUP_COLUMNS + [
    "n_seeds",
    "value",
    "ci95_half_width",
    "ci95_low",
    "ci95_high",
    "best_seed",
    "oracle_value",
    "expert_value",
]


def _group_label(key) -> str:
    return ", ".join(f"{column}={value}" for column, value in zip(GROUP_COLUMNS, key))


def summarise(frame: pd.DataFrame, mode: AggregationMode, skip_empty: bool = False) -> pd.DataFrame:
    """
    Group rows and reduce over seeds

    best_of_seeds takes the maximum value per cell (ties go to the lowest
    seed). mean_ci95 reports the mean with a normal-approximation interval
    mean +/- 1.96 sd / sqrt(n), sd with ddof=1; a single-seed cell has
    half-width 0. Failed rows are ignored.

    Raises:
        EmptyGroupException: If a cell has no successful row and skip_empty is False
    """
    frame = frame.sort_values(
        KEY_COLUMNS + ["value", "status"], kind="mergesort", na_position="first"
    ).reset_index(drop=True)
    records = []
    for key, group in frame.groupby(GROUP_COLUMNS, dropna=False, sort=True):
        ok = group[group["status"] == STATUS_OK]
        if ok.empty:
            if skip_empty:
                logger.warning("Skipping cell without successful rows: %s", _group_label(key))
                continue
            raise EmptyGroupException(_group_label(key))

        values = ok["value"].to_numpy(dtype=float)
        n = len(values)
        if mode == AggregationMode.BEST_OF_SEEDS:
            best = int(np.argmax(values))
            value = float(values[best])
            half_width = 0.0
            best_seed = int(ok["seed"].iloc[best])
        else:
            value = float(values.mean())
            half_width = float(CI95_Z * values.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
            best_seed = None

        records.append({
            **dict(zip(GROUP_COLUMNS, key)),
            "n_seeds": n,
            "value": value,
            "ci95_half_width": half_width,
            "ci95_low": value - half_width,
            "ci95_high": value + half_width,
            "best_seed": best_seed,
            "oracle_value": float(ok["oracle_value"].mean()),
            "expert_value": float(ok["expert_value"].mean()),
        })

    summary = pd.DataFrame(records, columns=SUMMARY_COLUMNS)
    summary["best_seed"] = summary["best_seed"].astype("Int64")
    return summary


class AggregateResultsUseCase:
    """Read result tables and write (or return) their summary"""

    def __init__(self, repository: CsvResultRepository):
        self.repository = repository

    def execute(
        self,
        paths: Sequence[Path],
        mode: AggregationMode,
        output_path: Optional[Path] = None,
        skip_empty: bool = False,
    ) -> pd.DataFrame:
        """
        Raises:
            ValidationException: If no file is given or a file is not a result table
            EmptyGroupException: See summarise
        """
        frame = self.repository.read_frame(paths)
        summary = summarise(frame, mode, skip_empty=skip_empty)
        if output_path is not None:
            output_path = Path(output_path)
            output_path.parent.mkdir(parents=True, exist_ok=True)
            summary.to_csv(output_path, index=False, float_format=FLOAT_FORMAT)
        return summary
