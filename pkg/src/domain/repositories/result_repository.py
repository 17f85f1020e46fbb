"""
Result Repository Interface

Defines the contract for experiment result tables.
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Sequence


class ResultRepository(ABC):
    """
    Repository interface for result tables and their metadata sidecars
    """

    @abstractmethod
    def write_rows(self, rows: Sequence[Dict[str, Any]], path: Path) -> Path:
        """
        Write result rows as a delimited table with a header

        Returns:
            Path written
        """
        pass

    @abstractmethod
    def read_rows(self, paths: Sequence[Path]) -> List[Dict[str, Any]]:
        """Read and concatenate result tables."""
        pass

    @abstractmethod
    def write_metadata(self, metadata: Dict[str, Any], results_path: Path) -> Path:
        """Write the sidecar metadata document next to a result table."""
        pass
