"""
Result Store

Comma-separated result tables written with pandas, plus two sidecars next
to each table: `<results>.meta.json` (run metadata) and
`<results>.timings.csv` (wall-clock seconds, kept apart so result tables
are reproducible byte for byte).
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Sequence

import pandas as pd

from src.domain.exceptions.validation_exceptions import ValidationException
from src.domain.repositories.result_repository import ResultRepository

RESULT_COLUMNS = [
    "algorithm",
    "target_task",
    "m",
    "lambda",
    "seed",
    "value",
    "oracle_value",
    "expert_value",
    "status",
    "error",
]
KEY_COLUMNS = ["algorithm", "target_task", "m", "lambda", "seed"]
TIMING_COLUMN = "wall_clock_seconds"
FLOAT_FORMAT = "%.12g"
TEXT_COLUMNS = {"algorithm": str, "target_task": str, "status": str, "error": str}


def metadata_path(results_path: Path) -> Path:
    results_path = Path(results_path)
    return results_path.with_name(results_path.name + ".meta.json")


def timings_path(results_path: Path) -> Path:
    results_path = Path(results_path)
    return results_path.with_name(results_path.name + ".timings.csv")


def sort_rows(frame: pd.DataFrame) -> pd.DataFrame:
    """Deterministic row order, independent of job scheduling."""
    return frame.sort_values(KEY_COLUMNS, kind="mergesort", na_position="first").reset_index(drop=True)


class CsvResultRepository(ResultRepository):
    """Result tables as CSV via pandas"""

    def write_rows(self, rows: Sequence[Dict[str, Any]], path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame = pd.DataFrame(list(rows), columns=RESULT_COLUMNS + [TIMING_COLUMN])
        frame = sort_rows(frame)
        frame[RESULT_COLUMNS].to_csv(path, index=False, float_format=FLOAT_FORMAT)
        frame[KEY_COLUMNS + [TIMING_COLUMN]].to_csv(
            timings_path(path), index=False, float_format="%.3f"
        )
        return path

    def read_rows(self, paths: Sequence[Path]) -> List[Dict[str, Any]]:
        return self.read_frame(paths).to_dict(orient="records")

    def read_frame(self, paths: Sequence[Path]) -> pd.DataFrame:
        """
        Raises:
            ValidationException: If a file is missing or lacks result columns
        """
        if not paths:
            raise ValidationException("At least one result file is required", "results")
        frames = []
        for path in paths:
            path = Path(path)
            if not path.is_file():
                raise ValidationException(f"Result file not found: {path}", "results")
            frame = pd.read_csv(path, dtype=TEXT_COLUMNS)
            missing = [column for column in RESULT_COLUMNS if column not in frame.columns]
            if missing:
                raise ValidationException(f"{path}: missing columns {missing}", "results")
            frames.append(frame[RESULT_COLUMNS])
        return pd.concat(frames, ignore_index=True)

    def write_metadata(self, metadata: Dict[str, Any], results_path: Path) -> Path:
        path = metadata_path(results_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(metadata, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path
