"""
Run Outcome DTO
"""
from dataclasses import dataclass
from pathlib import Path
from typing import List

from .result_row import ResultRow


@dataclass(frozen=True)
class RunOutcome:
    """Rows of a finished run and where they were written."""
    results_path: Path
    metadata_path: Path
    rows: List[ResultRow]

    @property
    def failed_rows(self) -> int:
        return sum(1 for row in self.rows if not row.is_ok)
