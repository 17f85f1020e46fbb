"""
Demo Repository Interface

Defines the contract for demonstration persistence.
"""
from abc import ABC, abstractmethod
from pathlib import Path

from ..entities.trajectory import DemoSet


class DemoRepository(ABC):
    """
    Repository interface for DemoSet files

    Responsibilities:
        - Write a DemoSet with its header metadata
        - Read it back bit-identically
    """

    @abstractmethod
    def save(self, demo_set: DemoSet, path: Path) -> Path:
        """
        Persist a demo set

        Args:
            demo_set: Demonstrations to write
            path: Destination file

        Returns:
            Path written
        """
        pass

    @abstractmethod
    def load(self, path: Path) -> DemoSet:
        """
        Load a demo set

        Raises:
            DemoFileNotFoundException: If the file does not exist
        """
        pass
